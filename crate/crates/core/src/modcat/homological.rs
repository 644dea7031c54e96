//! Minimal projective resolutions, Ext, and extensions.

use std::sync::Arc;

use crate::algebra::coordinate_map;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};
use crate::modcat::module::{ModuleMap, RightModule};
use crate::modcat::modules::ModCat;

/// `... -> P_1 -> P_0 -> M -> 0`, minimal, computed up to some length.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub module: RightModule<F>,
    pub terms: Vec<RightModule<F>>,
    pub summands: Vec<Vec<usize>>,
    /// `P_0 -> M`.
    pub augmentation: ModuleMap<F>,
    /// `differentials[i] : P_{i+1} -> P_i`.
    pub differentials: Vec<ModuleMap<F>>,
    /// `syzygies[i] : Omega^{i+1} M -> P_i`, the kernel inclusions.
    pub syzygies: Vec<ModuleMap<F>>,
    /// `covers[i] : P_{i+1} -> Omega^{i+1} M`.
    pub covers: Vec<ModuleMap<F>>,
    /// True when some syzygy vanished, so all later terms are zero.
    pub finite: bool,
}

impl<F: Field> Resolution<F> {
    /// `P_i`, or the zero module past the end of a finite resolution.
    pub fn term(&self, i: usize) -> RightModule<F> {
        self.terms
            .get(i)
            .cloned()
            .unwrap_or_else(|| RightModule::zero(Arc::clone(self.module.algebra())))
    }

    /// `P_{i+1} -> P_i`, zero past the computed range.
    pub fn differential(&self, i: usize) -> ModuleMap<F> {
        self.differentials
            .get(i)
            .cloned()
            .unwrap_or_else(|| ModuleMap::zero(&self.term(i + 1), &self.term(i)))
    }

    /// Number of computed terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn covers_length(&self, n: usize) -> bool {
        self.finite || self.terms.len() > n
    }

    /// Projective dimension if the resolution is known to be finite.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.finite.then(|| self.terms.iter().take_while(|t| !t.is_zero()).count().saturating_sub(1))
    }
}

/// `Ext^k(M, N)` with a fixed basis of cocycle representatives.
#[derive(Clone, Debug)]
pub struct ExtSpace<F: Field> {
    pub degree: usize,
    pub resolution: Arc<Resolution<F>>,
    pub target: RightModule<F>,
    /// Basis of `Hom(P_k, N)`.
    pub cochains: Vec<ModuleMap<F>>,
    /// Cocycle representatives of a basis of Ext.
    pub basis: Vec<ModuleMap<F>>,
    cochain_coords: Matrix<F>,
    cocycles: Subspace<F>,
    cocycle_coords: Matrix<F>,
    class_projection: Matrix<F>,
}

/// A short exact sequence `0 -> sub.source -> E -> quo.target -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExact<F: Field> {
    pub sub: ModuleMap<F>,
    pub quo: ModuleMap<F>,
}

impl<F: Field> ShortExact<F> {
    pub fn middle(&self) -> &RightModule<F> {
        &self.sub.target
    }

    pub fn is_exact(&self) -> bool {
        self.sub.is_injective()
            && self.quo.is_surjective()
            && self.sub.then(&self.quo).is_zero()
            && self.sub.rank() + self.quo.rank() == self.middle().dim()
    }
}

#[derive(Clone, Debug)]
pub struct UniversalExtension<F: Field> {
    pub ses: ShortExact<F>,
    /// `d_i = dim Ext^1(M, B_i)` per target.
    pub multiplicities: Vec<usize>,
    /// Ranks of the connecting maps `Hom(sum B_i^{d_i}, B_j) -> Ext^1(M, B_j)`.
    pub connecting_ranks: Vec<usize>,
}

impl<F: Field> ExtSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the class of a cocycle `P_k -> N`.
    pub fn class_of(&self, cocycle: &ModuleMap<F>) -> Result<Vec<F>> {
        let flat = cocycle.matrix.entries();
        if self.cochains.is_empty() {
            return if flat.iter().all(|x| x.is_zero()) {
                Ok(Vec::new())
            } else {
                Err(Error::Invariant("nonzero cochain in a zero Hom space".into()))
            };
        }
        let c = self.cochain_coords.apply(flat);
        let back = flatten_basis(&self.cochains).apply(&c);
        if back != flat {
            return Err(Error::Invariant("cochain is not a module map".into()));
        }
        if !self.cocycles.contains(&c) {
            return Err(Error::Invariant("cochain is not a cocycle".into()));
        }
        let z = self.cocycle_coords.apply(&c);
        Ok(self.class_projection.apply(&z))
    }

    /// The cocycle representative with the given Ext coordinates.
    pub fn cocycle(&self, coords: &[F]) -> ModuleMap<F> {
        let p = self.resolution.term(self.degree);
        let mut m = Matrix::zeros(p.dim(), self.target.dim());
        for (b, c) in self.basis.iter().zip(coords) {
            m = &m + &b.matrix.scale(c);
        }
        ModuleMap::new(p, self.target.clone(), m)
    }
}

/// Rows are the flattened matrices of the maps.
fn flatten_basis<F: Field>(maps: &[ModuleMap<F>]) -> Matrix<F> {
    let cols = maps.first().map_or(0, |m| m.matrix.rows() * m.matrix.cols());
    let rows: Vec<Vec<F>> = maps.iter().map(|m| m.matrix.entries().to_vec()).collect();
    Matrix::from_rows(cols, &rows)
}

impl<F: Field> ModCat<F> {
    /// Minimal projective resolution computed through `P_n` at least.
    pub fn resolution(&self, m: &RightModule<F>, n: usize) -> Arc<Resolution<F>> {
        if let Some(r) = self.resolutions.read().expect("cache lock").get(m) {
            if r.covers_length(n) {
                return Arc::clone(r);
            }
        }
        let r = Arc::new(self.compute_resolution(m, n));
        self.resolutions.write().expect("cache lock").insert(m.clone(), Arc::clone(&r));
        r
    }

    fn compute_resolution(&self, m: &RightModule<F>, n: usize) -> Resolution<F> {
        let cover = self.projective_cover(m);
        let mut res = Resolution {
            module: m.clone(),
            terms: vec![cover.map.source.clone()],
            summands: vec![cover.summands],
            augmentation: cover.map.clone(),
            differentials: Vec::new(),
            syzygies: Vec::new(),
            covers: Vec::new(),
            finite: false,
        };
        let mut last = cover.map;
        if m.is_zero() {
            res.finite = true;
            return res;
        }
        for _ in 0..n {
            let (k, inc) = self.kernel_of(&last);
            if k.is_zero() {
                res.finite = true;
                return res;
            }
            let c = self.projective_cover(&k);
            res.differentials.push(c.map.then(&inc));
            res.terms.push(c.map.source.clone());
            res.summands.push(c.summands.clone());
            res.syzygies.push(inc);
            res.covers.push(c.map.clone());
            last = c.map;
        }
        if self.kernel_of(&last).0.is_zero() {
            res.finite = true;
        }
        res
    }

    /// `Ext^k(M, N)` via the minimal resolution of `M`.
    pub fn ext(&self, m: &RightModule<F>, n: &RightModule<F>, k: usize) -> ExtSpace<F> {
        let res = self.resolution(m, k + 1);
        let pk = res.term(k);
        let cochains = self.hom(&pk, n);
        let r = cochains.len();
        let flat = flatten_basis(&cochains);
        let cochain_coords = if r == 0 { Matrix::zeros(pk.dim() * n.dim(), 0) } else { coordinate_map(&flat) };

        // cocycles: d^k(h) = d_{k+1} h = 0
        let d_next = res.differential(k);
        let images: Vec<Vec<F>> = cochains.iter().map(|h| (&d_next.matrix * &h.matrix).into_entries()).collect();
        let image_len = d_next.matrix.rows() * n.dim();
        let cocycles = if image_len == 0 {
            Subspace::whole(r)
        } else {
            Subspace::left_null(&Matrix::from_rows(image_len, &images))
        };

        // coboundaries: d_k g for g in Hom(P_{k-1}, N)
        let coboundaries = if k == 0 || r == 0 {
            Subspace::zero(r)
        } else {
            let d = res.differential(k - 1);
            let prev = self.hom(&res.term(k - 1), n);
            let rows: Vec<Vec<F>> = prev
                .iter()
                .map(|g| cochain_coords.apply((&d.matrix * &g.matrix).entries()))
                .collect();
            Subspace::span(r, &rows)
        };

        let cocycle_coords = coordinate_map(cocycles.basis());
        let local = coboundaries.basis() * &cocycle_coords;
        let q = Subspace::row_space(&local).quotient();
        let reps = &q.section * cocycles.basis();
        let basis = reps
            .row_iter()
            .map(|c| {
                let mut mat = Matrix::zeros(pk.dim(), n.dim());
                for (h, x) in cochains.iter().zip(c) {
                    mat = &mat + &h.matrix.scale(x);
                }
                ModuleMap::new(pk.clone(), n.clone(), mat)
            })
            .collect();
        ExtSpace {
            degree: k,
            resolution: res,
            target: n.clone(),
            cochains,
            basis,
            cochain_coords,
            cocycles,
            cocycle_coords,
            class_projection: q.projection,
        }
    }

    pub fn ext_dim(&self, m: &RightModule<F>, n: &RightModule<F>, k: usize) -> usize {
        self.ext(m, n, k).dim()
    }

    /// The extension `0 -> N -> E -> M -> 0` obtained by pushing the
    /// presentation `0 -> Omega M -> P_0 -> M -> 0` out along a 1-cocycle.
    pub fn realize_cocycle(&self, res: &Resolution<F>, n: &RightModule<F>, cocycle: &Matrix<F>) -> ShortExact<F> {
        let p0 = res.term(0);
        let alg = Arc::clone(n.algebra());
        let sum = RightModule::direct_sum(alg, &[p0.clone(), n.clone()]);
        let relations = match (res.syzygies.first(), res.covers.first()) {
            (Some(inc), Some(cover)) => {
                // the cocycle kills ker(P_1 -> Omega M), so it descends to Omega M
                let phibar = Matrix::solve(&cover.matrix, cocycle).expect("cocycle descends to the syzygy").particular;
                inc.matrix.hstack(&-&phibar)
            }
            _ => Matrix::zeros(0, p0.dim() + n.dim()),
        };
        let rel = Subspace::row_space(&relations);
        let (e, proj) = sum.sum.quotient(&rel);
        let sub = sum.injections[1].then(&proj);
        let to_m = Matrix::vstack_all(
            res.module.dim(),
            &[res.augmentation.matrix.clone(), Matrix::zeros(n.dim(), res.module.dim())],
        );
        let quo = ModuleMap::new(e, res.module.clone(), &rel.quotient().section * &to_m);
        ShortExact { sub, quo }
    }

    /// Realize a class of `Ext^1(M, N)` given by coordinates in `space`.
    pub fn realize_ext1(&self, space: &ExtSpace<F>, coords: &[F]) -> ShortExact<F> {
        assert_eq!(space.degree, 1, "only degree one classes are realized");
        let c = space.cocycle(coords);
        self.realize_cocycle(&space.resolution, &space.target, &c.matrix)
    }

    /// The class in `Ext^1(M, N)` of an extension `0 -> N -> E -> M -> 0`.
    pub fn extension_class(&self, space: &ExtSpace<F>, ses: &ShortExact<F>) -> Result<Vec<F>> {
        let res = &space.resolution;
        let lift = self
            .lift_map(&res.augmentation, &ses.quo)
            .ok_or_else(|| Error::Invariant("augmentation does not lift through the extension".into()))?;
        let d1 = res.differential(0);
        let through = d1.then(&lift);
        let psi = if ses.sub.source.dim() == 0 {
            Matrix::zeros(through.source.dim(), 0)
        } else {
            Matrix::solve_left(&ses.sub.matrix, &through.matrix)
                .ok_or_else(|| Error::Invariant("boundary does not land in the submodule".into()))?
        };
        space.class_of(&ModuleMap::new(res.term(1), space.target.clone(), psi))
    }

    /// Some module map `g` with `g` then `p` equal to `f`.
    pub fn lift_map(&self, f: &ModuleMap<F>, p: &ModuleMap<F>) -> Option<ModuleMap<F>> {
        let basis = self.hom(&f.source, &p.source);
        let goal = f.matrix.entries().to_vec();
        if basis.is_empty() {
            return goal.iter().all(|x| x.is_zero()).then(|| ModuleMap::zero(&f.source, &p.source));
        }
        let rows: Vec<Vec<F>> = basis.iter().map(|h| (&h.matrix * &p.matrix).into_entries()).collect();
        let m = Matrix::from_rows(goal.len(), &rows);
        let c = Matrix::solve_left(&m, &Matrix::from_rows(goal.len(), &[goal]))?;
        Some(super::modules::combine_maps(&f.source, &p.source, &basis, c.row_vec(0).into_iter()))
    }

    /// Universal extension of `m` by the targets: `0 -> sum B_i^{d_i} -> E -> m -> 0`
    /// whose connecting maps onto every `Ext^1(m, B_j)` are surjective.
    pub fn universal_extension(&self, m: &RightModule<F>, targets: &[RightModule<F>]) -> Result<UniversalExtension<F>> {
        for (i, b) in targets.iter().enumerate() {
            if !self.has_simple_top(b) && !self.has_simple_socle(b) {
                return Err(Error::Invariant(format!(
                    "target {i} has neither simple top nor simple socle, so its endomorphism ring is not known to be local"
                )));
            }
        }
        let spaces: Vec<ExtSpace<F>> = targets.iter().map(|b| self.ext(m, b, 1)).collect();
        let multiplicities: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        if multiplicities.iter().all(|&d| d == 0) {
            let id = ModuleMap::identity(m);
            let zero = self.zero();
            return Ok(UniversalExtension {
                ses: ShortExact { sub: ModuleMap::zero(&zero, m), quo: id },
                multiplicities,
                connecting_ranks: vec![0; targets.len()],
            });
        }
        let mut parts = Vec::new();
        let mut cocycles = Vec::new();
        for (b, s) in targets.iter().zip(&spaces) {
            for c in &s.basis {
                parts.push(b.clone());
                cocycles.push(c.matrix.clone());
            }
        }
        let n = RightModule::direct_sum(Arc::clone(self.algebra()), &parts).sum;
        let res = &spaces[0].resolution;
        let phi = Matrix::hstack_all(res.term(1).dim(), &cocycles);
        let ses = self.realize_cocycle(res, &n, &phi);

        let mut connecting_ranks = Vec::new();
        for (j, (b, s)) in targets.iter().zip(&spaces).enumerate() {
            let mut rows = Vec::new();
            for h in self.hom(&n, b) {
                let composite = ModuleMap::new(res.term(1), b.clone(), &phi * &h.matrix);
                rows.push(s.class_of(&composite)?);
            }
            let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(s.dim(), &rows).rank() };
            if rank != s.dim() {
                return Err(Error::Invariant(format!(
                    "connecting map onto Ext^1(M, B_{j}) has rank {rank}, expected {}",
                    s.dim()
                )));
            }
            connecting_ranks.push(rank);
        }
        Ok(UniversalExtension { ses, multiplicities, connecting_ranks })
    }
}
