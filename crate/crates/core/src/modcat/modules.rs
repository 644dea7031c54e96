//! The category of finite-dimensional right modules over an algebra.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};
use crate::modcat::category::{AbelianCategory, Iso};
use crate::modcat::homological::Resolution;
use crate::modcat::module::{ModuleMap, RightModule};

/// Largest Hom space (number of elements) searched exhaustively when
/// testing for an isomorphism.
const EXHAUSTIVE_ISO_LIMIT: u128 = 1 << 14;
/// Pseudorandom trials when the Hom space is too large to exhaust.
const RANDOM_ISO_TRIALS: usize = 64;

/// Modules over a fixed algebra, with cached cells and resolutions.
pub struct ModCat<F: Field> {
    algebra: Arc<Algebra<F>>,
    generators: Vec<Vec<F>>,
    cells: OnceLock<Cells<F>>,
    opposite: OnceLock<Box<ModCat<F>>>,
    pub(crate) resolutions: RwLock<HashMap<RightModule<F>, Arc<Resolution<F>>>>,
}

/// Indecomposable projectives, simples and injectives, indexed by vertex.
#[derive(Clone, Debug)]
pub struct Cells<F: Field> {
    pub projectives: Vec<RightModule<F>>,
    pub simples: Vec<RightModule<F>>,
    pub injectives: Vec<RightModule<F>>,
    /// `P(v) -> S(v)`.
    pub tops: Vec<ModuleMap<F>>,
}

/// A projective cover `P -> M`, with `P` a direct sum of indecomposable
/// projectives at the listed vertices.
#[derive(Clone, Debug)]
pub struct ProjectiveCover<F: Field> {
    pub map: ModuleMap<F>,
    pub summands: Vec<usize>,
}

/// An injective envelope `M -> I`, with `I` a direct sum of indecomposable
/// injectives at the listed vertices.
#[derive(Clone, Debug)]
pub struct InjectiveEnvelope<F: Field> {
    pub map: ModuleMap<F>,
    pub summands: Vec<usize>,
}

pub type IsoDecision<F> = Iso<ModuleMap<F>>;

impl<F: Field> ModCat<F> {
    pub fn new(algebra: Arc<Algebra<F>>) -> Self {
        let generators = algebra.generators();
        ModCat {
            algebra,
            generators,
            cells: OnceLock::new(),
            opposite: OnceLock::new(),
            resolutions: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn generators(&self) -> &[Vec<F>] {
        &self.generators
    }

    /// Modules over the opposite algebra.
    pub fn opposite(&self) -> &ModCat<F> {
        self.opposite.get_or_init(|| Box::new(ModCat::new(Arc::new(self.algebra.opposite()))))
    }

    pub fn regular(&self) -> RightModule<F> {
        RightModule::regular(Arc::clone(&self.algebra))
    }

    pub fn zero(&self) -> RightModule<F> {
        RightModule::zero(Arc::clone(&self.algebra))
    }

    fn check_module(&self, m: &RightModule<F>) {
        debug_assert!(
            Arc::ptr_eq(m.algebra(), &self.algebra) || **m.algebra() == *self.algebra,
            "module over a different algebra"
        );
    }

    pub fn cells(&self) -> &Cells<F> {
        self.cells.get_or_init(|| {
            let n = self.algebra.vertex_count();
            let projectives: Vec<RightModule<F>> = (0..n).map(|v| self.compute_projective(v)).collect();
            let tops: Vec<ModuleMap<F>> = projectives.iter().map(|p| self.top(p).1).collect();
            let simples = tops.iter().map(|t| t.target.clone()).collect();
            let injectives = (0..n).map(|v| self.compute_injective(v)).collect();
            Cells { projectives, simples, injectives, tops }
        })
    }

    pub fn projective(&self, v: usize) -> RightModule<F> {
        self.cells().projectives[v].clone()
    }

    pub fn simple(&self, v: usize) -> RightModule<F> {
        self.cells().simples[v].clone()
    }

    pub fn injective(&self, v: usize) -> RightModule<F> {
        self.cells().injectives[v].clone()
    }

    fn compute_projective(&self, v: usize) -> RightModule<F> {
        let sub = Subspace::row_space(&self.algebra.left_mult(self.algebra.idempotent(v)));
        self.regular().submodule(&sub).0
    }

    fn compute_injective(&self, v: usize) -> RightModule<F> {
        self.opposite().compute_projective(v).dual(Arc::clone(&self.algebra))
    }

    /// Dual of a module over this algebra, as a module over the opposite.
    pub fn dual(&self, m: &RightModule<F>) -> RightModule<F> {
        m.dual(Arc::clone(self.opposite().algebra()))
    }

    /// Dual of a module over the opposite algebra, as a module over this algebra.
    pub fn dual_from_opposite(&self, m: &RightModule<F>) -> RightModule<F> {
        m.dual(Arc::clone(&self.algebra))
    }

    /// The intertwiner space, as a list of basis maps.
    pub fn hom(&self, m: &RightModule<F>, n: &RightModule<F>) -> Vec<ModuleMap<F>> {
        self.check_module(m);
        self.check_module(n);
        let (dm, dn) = (m.dim(), n.dim());
        if dm == 0 || dn == 0 {
            return Vec::new();
        }
        let mut system = Matrix::zeros(0, dm * dn);
        for g in &self.generators {
            let a = m.action(g);
            let b = n.action(g);
            // row-major vec(A X - X B) = (A (x) I - I (x) B^T) vec(X)
            let c = &a.kron(&Matrix::identity(dn)) - &Matrix::identity(dm).kron(&b.transpose());
            system = system.vstack(&c);
        }
        system
            .kernel()
            .row_iter()
            .map(|r| ModuleMap::new(m.clone(), n.clone(), Matrix::from_vec(dm, dn, r.to_vec())))
            .collect()
    }

    pub fn hom_dim(&self, m: &RightModule<F>, n: &RightModule<F>) -> usize {
        self.hom(m, n).len()
    }

    /// Radical `M * rad(A)` as a subspace.
    pub fn radical_subspace(&self, m: &RightModule<F>) -> Subspace<F> {
        m.times_subspace(self.algebra.radical())
    }

    /// The top `M / M rad(A)` with its projection.
    pub fn top(&self, m: &RightModule<F>) -> (RightModule<F>, ModuleMap<F>) {
        m.quotient(&self.radical_subspace(m))
    }

    /// The socle: vectors killed by the radical.
    pub fn socle(&self, m: &RightModule<F>) -> (RightModule<F>, ModuleMap<F>) {
        m.submodule(&m.annihilator_of(self.algebra.radical()))
    }

    pub fn radical(&self, m: &RightModule<F>) -> (RightModule<F>, ModuleMap<F>) {
        m.submodule(&self.radical_subspace(m))
    }

    /// Multiplicities of the simples in a semisimple module (or in the top of `m`).
    pub fn top_vector(&self, m: &RightModule<F>) -> Vec<usize> {
        self.top(m).0.dim_vector()
    }

    pub fn socle_vector(&self, m: &RightModule<F>) -> Vec<usize> {
        self.socle(m).0.dim_vector()
    }

    /// Composition multiplicities `[M : S(v)]`, read off the radical layers.
    pub fn composition_factors(&self, m: &RightModule<F>) -> Vec<usize> {
        let mut out = vec![0; self.algebra.vertex_count()];
        let mut cur = m.clone();
        while !cur.is_zero() {
            for (o, t) in out.iter_mut().zip(self.top_vector(&cur)) {
                *o += t;
            }
            cur = self.radical(&cur).0;
        }
        out
    }

    pub fn composition_length(&self, m: &RightModule<F>) -> usize {
        self.composition_factors(m).iter().sum()
    }

    pub fn has_simple_top(&self, m: &RightModule<F>) -> bool {
        self.top(m).0.dim() == 1
    }

    pub fn has_simple_socle(&self, m: &RightModule<F>) -> bool {
        self.socle(m).0.dim() == 1
    }

    pub fn is_simple(&self, m: &RightModule<F>) -> bool {
        m.dim() == 1
    }

    pub fn is_projective(&self, m: &RightModule<F>) -> bool {
        m.is_zero() || self.projective_cover(m).map.is_injective()
    }

    pub fn is_injective(&self, m: &RightModule<F>) -> bool {
        m.is_zero() || self.injective_envelope(m).map.is_surjective()
    }

    /// The map `P(v) -> M` sending `e_v` to `x` (which must lie in `M e_v`).
    pub fn map_from_projective(&self, v: usize, m: &RightModule<F>, x: &[F]) -> ModuleMap<F> {
        let p = self.projective(v);
        let rows: Vec<Vec<F>> = p_basis_in_algebra(self, v).row_iter().map(|a| m.action(a).apply(x)).collect();
        ModuleMap::new(p, m.clone(), Matrix::from_rows(m.dim(), &rows))
    }

    /// Minimal projective cover.
    pub fn projective_cover(&self, m: &RightModule<F>) -> ProjectiveCover<F> {
        self.check_module(m);
        let rad = self.radical_subspace(m);
        let q = rad.quotient();
        let (top, _) = m.quotient(&rad);
        let mut summands = Vec::new();
        let mut rows: Vec<Matrix<F>> = Vec::new();
        let mut parts = Vec::new();
        for v in 0..self.algebra.vertex_count() {
            let ev = self.algebra.idempotent(v);
            let tv = Subspace::row_space(&top.action(ev));
            let act = m.action(ev);
            for t in tv.basis().row_iter() {
                let lift = act.apply(&q.section.apply(t));
                let f = self.map_from_projective(v, m, &lift);
                summands.push(v);
                parts.push(f.source.clone());
                rows.push(f.matrix);
            }
        }
        let sum = RightModule::direct_sum(Arc::clone(&self.algebra), &parts).sum;
        let matrix = Matrix::vstack_all(m.dim(), &rows);
        ProjectiveCover { map: ModuleMap::new(sum, m.clone(), matrix), summands }
    }

    /// Injective envelope, computed through the opposite algebra.
    pub fn injective_envelope(&self, m: &RightModule<F>) -> InjectiveEnvelope<F> {
        let op = self.opposite();
        let dm = self.dual(m);
        let cover = op.projective_cover(&dm);
        let i = self.dual_from_opposite(&cover.map.source);
        InjectiveEnvelope { map: ModuleMap::new(m.clone(), i, cover.map.matrix.transpose()), summands: cover.summands }
    }

    pub fn kernel_of(&self, f: &ModuleMap<F>) -> (RightModule<F>, ModuleMap<F>) {
        f.source.submodule(&f.kernel_subspace())
    }

    pub fn cokernel_of(&self, f: &ModuleMap<F>) -> (RightModule<F>, ModuleMap<F>) {
        f.target.quotient(&f.image_subspace())
    }

    /// Image as a submodule of the target, with the corestriction of `f`.
    pub fn image_of(&self, f: &ModuleMap<F>) -> (ModuleMap<F>, ModuleMap<F>) {
        let (im, inc) = f.target.submodule(&f.image_subspace());
        let coords = crate::algebra::coordinate_map(&inc.matrix);
        let epi = ModuleMap::new(f.source.clone(), im, &f.matrix * &coords);
        (epi, inc)
    }

    /// Decide whether two modules are isomorphic.
    pub fn is_isomorphic(&self, m: &RightModule<F>, n: &RightModule<F>) -> IsoDecision<F> {
        if m.dim() != n.dim() {
            return Iso::No(format!("dimensions {} and {}", m.dim(), n.dim()));
        }
        let (dm, dn) = (m.dim_vector(), n.dim_vector());
        if dm != dn {
            return Iso::No(format!("dimension vectors {dm:?} and {dn:?}"));
        }
        if m == n {
            return Iso::Yes(ModuleMap::identity(m));
        }
        let (tm, tn) = (self.top_vector(m), self.top_vector(n));
        if tm != tn {
            return Iso::No(format!("tops {tm:?} and {tn:?}"));
        }
        let (sm, sn) = (self.socle_vector(m), self.socle_vector(n));
        if sm != sn {
            return Iso::No(format!("socles {sm:?} and {sn:?}"));
        }
        let hmn = self.hom(m, n);
        let (end_m, hnm) = (self.hom_dim(m, m), self.hom_dim(n, m));
        if hmn.len() != end_m || hnm != end_m {
            return Iso::No(format!(
                "dim End = {end_m}, dim Hom(M,N) = {}, dim Hom(N,M) = {hnm}",
                hmn.len()
            ));
        }
        if m.dim() == 0 {
            return Iso::Yes(ModuleMap::identity(m));
        }
        for (i, h) in hmn.iter().enumerate() {
            if h.is_iso() {
                return Iso::Yes(h.clone());
            }
            for g in &hmn[..i] {
                let s = h.add(g);
                if s.is_iso() {
                    return Iso::Yes(s);
                }
            }
        }
        let k = hmn.len() as u32;
        if let Some(elems) = F::elements() {
            let q = elems.len() as u128;
            if q.checked_pow(k).is_some_and(|total| total <= EXHAUSTIVE_ISO_LIMIT) {
                let mut coeffs = vec![0usize; hmn.len()];
                loop {
                    let f = combine_maps(m, n, &hmn, coeffs.iter().map(|&c| elems[c].clone()));
                    if f.is_iso() {
                        return Iso::Yes(f);
                    }
                    if !next_tuple(&mut coeffs, elems.len()) {
                        break;
                    }
                }
                return Iso::No(format!("none of the {} elements of Hom(M,N) is invertible", q.pow(k)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..RANDOM_ISO_TRIALS {
            let f = combine_maps(m, n, &hmn, (0..hmn.len()).map(|_| F::from_i64(rng.gen_range(-3..=3))));
            if f.is_iso() {
                return Iso::Yes(f);
            }
        }
        Iso::Undecided(format!("no invertible map found among {RANDOM_ISO_TRIALS} trials"))
    }

    /// Inflate a module over a quotient algebra; row `i` of `projection` is
    /// the image of the basis element `b_i` in that quotient.
    pub fn inflate(&self, m: &RightModule<F>, projection: &Matrix<F>) -> RightModule<F> {
        m.restrict_along(Arc::clone(&self.algebra), projection)
    }

    pub fn require_finite_field() -> Result<()> {
        if F::elements().is_none() {
            return Err(Error::OracleOverRationals);
        }
        Ok(())
    }
}

/// Basis of `P(v) = e_v A` written in the algebra.
fn p_basis_in_algebra<F: Field>(cat: &ModCat<F>, v: usize) -> Matrix<F> {
    Subspace::row_space(&cat.algebra.left_mult(cat.algebra.idempotent(v))).basis().clone()
}

pub(crate) fn combine_maps<F: Field>(
    m: &RightModule<F>,
    n: &RightModule<F>,
    basis: &[ModuleMap<F>],
    coeffs: impl Iterator<Item = F>,
) -> ModuleMap<F> {
    let mut acc = Matrix::zeros(m.dim(), n.dim());
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = &acc + &b.matrix.scale(&c);
        }
    }
    ModuleMap::new(m.clone(), n.clone(), acc)
}

/// Advance a mixed-radix counter; false after the last tuple.
pub(crate) fn next_tuple(t: &mut [usize], base: usize) -> bool {
    for x in t.iter_mut() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

impl<F: Field> AbelianCategory for ModCat<F> {
    type Scalar = F;
    type Object = RightModule<F>;
    type Morphism = ModuleMap<F>;

    fn source(&self, f: &ModuleMap<F>) -> RightModule<F> {
        f.source.clone()
    }

    fn target(&self, f: &ModuleMap<F>) -> RightModule<F> {
        f.target.clone()
    }

    fn identity(&self, x: &RightModule<F>) -> ModuleMap<F> {
        ModuleMap::identity(x)
    }

    fn zero_morphism(&self, x: &RightModule<F>, y: &RightModule<F>) -> ModuleMap<F> {
        ModuleMap::zero(x, y)
    }

    fn compose(&self, f: &ModuleMap<F>, g: &ModuleMap<F>) -> ModuleMap<F> {
        f.then(g)
    }

    fn add(&self, f: &ModuleMap<F>, g: &ModuleMap<F>) -> ModuleMap<F> {
        f.add(g)
    }

    fn scale(&self, c: &F, f: &ModuleMap<F>) -> ModuleMap<F> {
        f.scale(c)
    }

    fn hom_basis(&self, x: &RightModule<F>, y: &RightModule<F>) -> Vec<ModuleMap<F>> {
        self.hom(x, y)
    }

    fn kernel(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        self.kernel_of(f).1
    }

    fn cokernel(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        self.cokernel_of(f).1
    }

    fn direct_sum(&self, parts: &[RightModule<F>]) -> (RightModule<F>, Vec<ModuleMap<F>>, Vec<ModuleMap<F>>) {
        let d = RightModule::direct_sum(Arc::clone(&self.algebra), parts);
        (d.sum, d.injections, d.projections)
    }

    fn zero_object(&self) -> RightModule<F> {
        self.zero()
    }

    fn is_zero_object(&self, x: &RightModule<F>) -> bool {
        x.is_zero()
    }

    fn morphism_coords(&self, f: &ModuleMap<F>) -> Vec<F> {
        f.matrix.entries().to_vec()
    }

    fn object_dim(&self, x: &RightModule<F>) -> usize {
        x.dim()
    }

    fn is_mono(&self, f: &ModuleMap<F>) -> bool {
        f.is_injective()
    }

    fn is_epi(&self, f: &ModuleMap<F>) -> bool {
        f.is_surjective()
    }

    fn image(&self, f: &ModuleMap<F>) -> (ModuleMap<F>, ModuleMap<F>) {
        self.image_of(f)
    }

    fn isomorphism(&self, x: &RightModule<F>, y: &RightModule<F>) -> IsoDecision<F> {
        self.is_isomorphic(x, y)
    }
}
