//! The glued category `A(ε)` of tuples `(X_U, X_Z, α, β)` built from two
//! algebras, the functors `F = - (x)_S M` and `G = Hom_S(N, -)` and a
//! pairing `θ : M (x)_R N -> S` giving `ε : F -> G`, together with its
//! recollement.

mod probes;
mod recollement;


use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::modcat::{AbelianCategory, Bimodule, HomModule, ModCat, ModuleMap, RightModule, Tensor};

pub use probes::ProbeReport;
pub use recollement::{mv_recollement, mv_simples, MvRecollement, MvSimple, MvSimpleKind};

/// The family on which naturality of `ε` is certified.
pub const NATURALITY_FAMILY: &str = "the regular module S_S and left multiplication by each basis element of S";

/// Gluing data. `R` is the closed side and `S` the open side.
#[derive(Clone, Debug)]
pub struct MvData<F: Field> {
    r: Arc<Algebra<F>>,
    s: Arc<Algebra<F>>,
    m: Bimodule<F>,
    n: Bimodule<F>,
    theta: Matrix<F>,
}

impl<F: Field> MvData<F> {
    /// `m` is an `S`-`R` bimodule, `n` an `R`-`S` bimodule and row
    /// `i * dim N + j` of `theta` is `θ(m_i (x) n_j)` in the basis of `S`.
    pub fn new(r: Arc<Algebra<F>>, s: Arc<Algebra<F>>, m: Bimodule<F>, n: Bimodule<F>, theta: Matrix<F>) -> Result<Self> {
        let same = |a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>| Arc::ptr_eq(a, b) || a == b;
        if !same(m.left_algebra(), &s) || !same(m.right_algebra(), &r) {
            return Err(Error::InvalidGluing("M must be an S-R bimodule".into()));
        }
        if !same(n.left_algebra(), &r) || !same(n.right_algebra(), &s) {
            return Err(Error::InvalidGluing("N must be an R-S bimodule".into()));
        }
        m.check()?;
        n.check()?;
        if theta.rows() != m.dim() * n.dim() || theta.cols() != s.dim() {
            return Err(Error::DimensionMismatch(format!(
                "θ must be {} x {}, got {} x {}",
                m.dim() * n.dim(),
                s.dim(),
                theta.rows(),
                theta.cols()
            )));
        }
        let data = MvData { r, s, m, n, theta };
        data.check_pairing()?;
        data.check_naturality()?;
        Ok(data)
    }

    /// `M = N = 0`: the product of the two module categories.
    pub fn split(r: Arc<Algebra<F>>, s: Arc<Algebra<F>>) -> Self {
        let zero = |a: &Arc<Algebra<F>>| vec![Matrix::zeros(0, 0); a.dim()];
        let m = Bimodule::new(Arc::clone(&s), Arc::clone(&r), 0, zero(&s), zero(&r));
        let n = Bimodule::new(Arc::clone(&r), Arc::clone(&s), 0, zero(&r), zero(&s));
        let theta = Matrix::zeros(0, s.dim());
        MvData { r, s, m, n, theta }
    }

    /// `S = eAe`, `R = A`, `M = eA`, `N = Ae` and `θ` the multiplication.
    pub fn from_idempotent(a: Arc<Algebra<F>>, vertices: &[usize]) -> Result<Self> {
        let corner = a.corner(vertices)?;
        let s = Arc::new(corner.algebra.clone());
        let e = a.idempotent_sum(vertices);
        let ea = a.left_mult(&e).row_basis();
        let ae = a.right_mult(&e).row_basis();
        let coords = |basis: &Matrix<F>, v: &[F]| -> Vec<F> {
            Matrix::solve_left(basis, &Matrix::from_rows(a.dim(), &[v.to_vec()])).expect("vector in span").row_vec(0)
        };
        let corner_coords = |v: &[F]| coords(&corner.embedding, v);
        let act = |basis: &Matrix<F>, f: &dyn Fn(&[F]) -> Vec<F>| -> Matrix<F> {
            let rows: Vec<Vec<F>> = basis.row_iter().map(|b| coords(basis, &f(b))).collect();
            Matrix::from_rows(basis.rows(), &rows)
        };
        let corner_elems: Vec<Vec<F>> = corner.embedding.row_iter().map(|c| c.to_vec()).collect();
        let m_left = corner_elems.iter().map(|c| act(&ea, &|b| a.mul(c, b))).collect();
        let m_right = (0..a.dim()).map(|j| act(&ea, &|b| a.mul(b, &a.basis_vector(j)))).collect();
        let n_left = (0..a.dim()).map(|j| act(&ae, &|b| a.mul(&a.basis_vector(j), b))).collect();
        let n_right = corner_elems.iter().map(|c| act(&ae, &|b| a.mul(b, c))).collect();
        let m = Bimodule::new(Arc::clone(&s), Arc::clone(&a), ea.rows(), m_left, m_right);
        let n = Bimodule::new(Arc::clone(&a), Arc::clone(&s), ae.rows(), n_left, n_right);
        let mut rows = Vec::new();
        for mi in ea.row_iter() {
            for nj in ae.row_iter() {
                rows.push(corner_coords(&a.mul(mi, nj)));
            }
        }
        let theta = Matrix::from_rows(s.dim(), &rows);
        MvData::new(a, s, m, n, theta)
    }

    pub fn r(&self) -> &Arc<Algebra<F>> {
        &self.r
    }

    pub fn s(&self) -> &Arc<Algebra<F>> {
        &self.s
    }

    pub fn m(&self) -> &Bimodule<F> {
        &self.m
    }

    pub fn n(&self) -> &Bimodule<F> {
        &self.n
    }

    pub fn theta(&self) -> &Matrix<F> {
        &self.theta
    }

    /// `θ(u (x) v)` for `u` in `M` and `v` in `N`.
    pub fn pairing(&self, u: &[F], v: &[F]) -> Vec<F> {
        let dn = self.n.dim();
        let mut out = vec![F::zero(); self.s.dim()];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let c = ui.clone() * vj.clone();
                for (o, t) in out.iter_mut().zip(self.theta.row(i * dn + j)) {
                    *o += c.clone() * t.clone();
                }
            }
        }
        out
    }

    /// `R`-balanced and `S`-`S` equivariant on basis elements.
    fn check_pairing(&self) -> Result<()> {
        let (dm, dn) = (self.m.dim(), self.n.dim());
        let unit = |d: usize, i: usize| {
            let mut v = vec![F::zero(); d];
            v[i] = F::one();
            v
        };
        for i in 0..dm {
            for j in 0..dn {
                let (mi, nj) = (unit(dm, i), unit(dn, j));
                let base = self.pairing(&mi, &nj);
                for k in 0..self.r.dim() {
                    let rk = self.r.basis_vector(k);
                    let left = self.pairing(self.m.right_action(&rk).row(i), &nj);
                    let right = self.pairing(&mi, self.n.left_action(&rk).row(j));
                    if left != right {
                        return Err(Error::InvalidGluing(format!(
                            "θ is not balanced: θ(m{i} {0} (x) n{j}) != θ(m{i} (x) {0} n{j})",
                            self.r.labels()[k]
                        )));
                    }
                }
                for k in 0..self.s.dim() {
                    let sk = self.s.basis_vector(k);
                    if self.pairing(self.m.left_action(&sk).row(i), &nj) != self.s.mul(&sk, &base) {
                        return Err(Error::InvalidGluing(format!("θ is not left S-linear at {}", self.s.labels()[k])));
                    }
                    if self.pairing(&mi, self.n.right_action(&sk).row(j)) != self.s.mul(&base, &sk) {
                        return Err(Error::InvalidGluing(format!("θ is not right S-linear at {}", self.s.labels()[k])));
                    }
                }
            }
        }
        Ok(())
    }

    /// `ε` on `S_S` is `R`-linear and commutes with every left multiplication.
    fn check_naturality(&self) -> Result<()> {
        let x = RightModule::regular(Arc::clone(&self.s));
        let (t, h) = (self.m.tensor(&x), self.n.hom_into(&x));
        let eps = epsilon(self, &t, &h);
        if !eps.is_homomorphism() {
            return Err(Error::InvalidGluing("ε on S_S is not R-linear".into()));
        }
        for k in 0..self.s.dim() {
            let f = ModuleMap::new(x.clone(), x.clone(), self.s.left_mult(&self.s.basis_vector(k)));
            let fm = self.m.tensor_map(&f, &t, &t);
            let gm = self.n.hom_map(&f, &h, &h);
            if fm.then(&eps) != eps.then(&gm) {
                return Err(Error::InvalidGluing(format!(
                    "ε is not natural for left multiplication by {}",
                    self.s.labels()[k]
                )));
            }
        }
        Ok(())
    }
}

/// `ε_X : F(X) -> G(X)`, `x (x) m |-> (n |-> x θ(m (x) n))`.
fn epsilon<F: Field>(d: &MvData<F>, t: &Tensor<F>, h: &HomModule<F>) -> ModuleMap<F> {
    let x = &t.factor;
    let (dx, dm, dn) = (x.dim(), d.m.dim(), d.n.dim());
    let acts: Vec<Vec<Matrix<F>>> =
        (0..dm).map(|j| (0..dn).map(|k| x.action(d.theta.row(j * dn + k))).collect()).collect();
    let mut rows = Vec::new();
    for c in t.section.row_iter() {
        let mut phi = Matrix::zeros(dn, dx);
        for j in 0..dm {
            let cj: Vec<F> = (0..dx).map(|i| c[i * dm + j].clone()).collect();
            if cj.iter().all(|v| v.is_zero()) {
                continue;
            }
            let cj = Matrix::from_rows(dx, &[cj]);
            for (k, act) in acts[j].iter().enumerate() {
                let img = &cj * act;
                phi.set_block(k, 0, &(&phi.block(k, 0, 1, dx) + &img));
            }
        }
        rows.push(h.coords_of(phi.entries()));
    }
    ModuleMap::new(t.module.clone(), h.module.clone(), Matrix::from_rows(h.module.dim(), &rows))
}

/// `(X_U, X_Z, α : F(X_U) -> X_Z, β : X_Z -> G(X_U))` with `αβ = ε`.
#[derive(Clone, Debug)]
pub struct MvObject<F: Field> {
    pub xu: RightModule<F>,
    pub xz: RightModule<F>,
    pub alpha: ModuleMap<F>,
    pub beta: ModuleMap<F>,
    tensor: Arc<Tensor<F>>,
    hom: Arc<HomModule<F>>,
}

impl<F: Field> MvObject<F> {
    /// `F(X_U)` with its presentation.
    pub fn tensor(&self) -> &Tensor<F> {
        &self.tensor
    }

    /// `G(X_U)` with its presentation.
    pub fn hom(&self) -> &HomModule<F> {
        &self.hom
    }
}

/// A pair `(f_U, f_Z)` commuting with both structure maps.
#[derive(Clone, Debug)]
pub struct MvMorphism<F: Field> {
    pub source: MvObject<F>,
    pub target: MvObject<F>,
    pub fu: ModuleMap<F>,
    pub fz: ModuleMap<F>,
}

/// `A(ε)` as a computable abelian category.
pub struct MvCategory<F: Field> {
    data: Arc<MvData<F>>,
    zcat: ModCat<F>,
    ucat: ModCat<F>,
}

/// `x` with `x * m = g`, for `m` injective.
pub(crate) fn through_mono<F: Field>(g: &Matrix<F>, m: &Matrix<F>) -> Matrix<F> {
    if g.rows() == 0 || m.rows() == 0 {
        return Matrix::zeros(g.rows(), m.rows());
    }
    Matrix::solve_left(m, g).expect("map factors through the monomorphism")
}

/// `x` with `p * x = g`, for `p` surjective.
pub(crate) fn through_epi<F: Field>(p: &Matrix<F>, g: &Matrix<F>) -> Matrix<F> {
    if p.cols() == 0 || g.cols() == 0 {
        return Matrix::zeros(p.cols(), g.cols());
    }
    Matrix::solve_left(&p.transpose(), &g.transpose()).expect("map factors through the epimorphism").transpose()
}

impl<F: Field> MvCategory<F> {
    pub fn new(data: Arc<MvData<F>>) -> Self {
        let zcat = ModCat::new(Arc::clone(&data.r));
        let ucat = ModCat::new(Arc::clone(&data.s));
        MvCategory { data, zcat, ucat }
    }

    pub fn data(&self) -> &Arc<MvData<F>> {
        &self.data
    }

    /// `mod R`.
    pub fn closed(&self) -> &ModCat<F> {
        &self.zcat
    }

    /// `mod S`.
    pub fn open(&self) -> &ModCat<F> {
        &self.ucat
    }

    pub fn functor_f(&self, xu: &RightModule<F>) -> Tensor<F> {
        self.data.m.tensor(xu)
    }

    pub fn functor_g(&self, xu: &RightModule<F>) -> HomModule<F> {
        self.data.n.hom_into(xu)
    }

    /// `ε_Y : F(Y) -> G(Y)` in the bases of [`functor_f`](Self::functor_f)
    /// and [`functor_g`](Self::functor_g).
    pub fn epsilon_at(&self, y: &RightModule<F>) -> ModuleMap<F> {
        epsilon(&self.data, &self.functor_f(y), &self.functor_g(y))
    }

    /// `ε_{X_U}` in the bases of `F(X_U)` and `G(X_U)` of `x`.
    pub fn epsilon(&self, x: &MvObject<F>) -> ModuleMap<F> {
        epsilon(&self.data, &x.tensor, &x.hom)
    }

    /// `α` and `β` are given in the bases of [`functor_f`](Self::functor_f)
    /// and [`functor_g`](Self::functor_g).
    pub fn object(&self, xu: RightModule<F>, xz: RightModule<F>, alpha: Matrix<F>, beta: Matrix<F>) -> Result<MvObject<F>> {
        let tensor = Arc::new(self.functor_f(&xu));
        let hom = Arc::new(self.functor_g(&xu));
        let (dt, dh) = (tensor.module.dim(), hom.module.dim());
        if (alpha.rows(), alpha.cols()) != (dt, xz.dim()) || (beta.rows(), beta.cols()) != (xz.dim(), dh) {
            return Err(Error::DimensionMismatch(format!(
                "α must be {dt} x {} and β {} x {dh}",
                xz.dim(),
                xz.dim()
            )));
        }
        let alpha = ModuleMap::new(tensor.module.clone(), xz.clone(), alpha);
        let beta = ModuleMap::new(xz.clone(), hom.module.clone(), beta);
        if !alpha.is_homomorphism() || !beta.is_homomorphism() {
            return Err(Error::InvalidGluing("α and β must be R-linear".into()));
        }
        let x = MvObject { xu, xz, alpha, beta, tensor, hom };
        if x.alpha.then(&x.beta) != self.epsilon(&x) {
            return Err(Error::InvalidGluing("βα differs from ε".into()));
        }
        Ok(x)
    }

    /// Wrap `α` and `β` given in the bases of `F(X_U)` and `G(X_U)` without checks.
    pub(crate) fn assemble(&self, xu: RightModule<F>, xz: RightModule<F>, alpha: Matrix<F>, beta: Matrix<F>) -> MvObject<F> {
        let tensor = Arc::new(self.functor_f(&xu));
        let hom = Arc::new(self.functor_g(&xu));
        let alpha = ModuleMap::new(tensor.module.clone(), xz.clone(), alpha);
        let beta = ModuleMap::new(xz.clone(), hom.module.clone(), beta);
        let x = MvObject { xu, xz, alpha, beta, tensor, hom };
        debug_assert!(x.alpha.then(&x.beta) == self.epsilon(&x));
        x
    }

    pub fn morphism(&self, source: &MvObject<F>, target: &MvObject<F>, fu: Matrix<F>, fz: Matrix<F>) -> Result<MvMorphism<F>> {
        if (fu.rows(), fu.cols()) != (source.xu.dim(), target.xu.dim())
            || (fz.rows(), fz.cols()) != (source.xz.dim(), target.xz.dim())
        {
            return Err(Error::DimensionMismatch("component maps have the wrong shape".into()));
        }
        let fu = ModuleMap::new(source.xu.clone(), target.xu.clone(), fu);
        let fz = ModuleMap::new(source.xz.clone(), target.xz.clone(), fz);
        if !fu.is_homomorphism() || !fz.is_homomorphism() {
            return Err(Error::InvalidGluing("components must be module maps".into()));
        }
        let f = MvMorphism { source: source.clone(), target: target.clone(), fu, fz };
        if !self.commutes(&f) {
            return Err(Error::InvalidGluing("the components do not commute with α and β".into()));
        }
        Ok(f)
    }

    /// Both squares `F(f_U) α' = α f_Z` and `β G(f_U) = f_Z β'`.
    pub fn commutes(&self, f: &MvMorphism<F>) -> bool {
        let (s, t) = (&f.source, &f.target);
        self.f_map(&f.fu, s, t).then(&t.alpha) == s.alpha.then(&f.fz)
            && s.beta.then(&self.g_map(&f.fu, s, t)) == f.fz.then(&t.beta)
    }

    /// `F(f_U)` between the tensor bases of `s` and `t`.
    pub fn f_map(&self, fu: &ModuleMap<F>, s: &MvObject<F>, t: &MvObject<F>) -> ModuleMap<F> {
        self.data.m.tensor_map(fu, &s.tensor, &t.tensor)
    }

    /// `G(f_U)` between the Hom bases of `s` and `t`.
    pub fn g_map(&self, fu: &ModuleMap<F>, s: &MvObject<F>, t: &MvObject<F>) -> ModuleMap<F> {
        self.data.n.hom_map(fu, &s.hom, &t.hom)
    }

    pub(crate) fn pair(&self, source: &MvObject<F>, target: &MvObject<F>, fu: Matrix<F>, fz: Matrix<F>) -> MvMorphism<F> {
        MvMorphism {
            fu: ModuleMap::new(source.xu.clone(), target.xu.clone(), fu),
            fz: ModuleMap::new(source.xz.clone(), target.xz.clone(), fz),
            source: source.clone(),
            target: target.clone(),
        }
    }

    /// The exact retraction of `i_*`: `(X_U, X_Z, α, β) |-> X_Z`.
    pub fn retraction(&self, x: &MvObject<F>) -> RightModule<F> {
        x.xz.clone()
    }

    pub fn retraction_map(&self, f: &MvMorphism<F>) -> ModuleMap<F> {
        f.fz.clone()
    }

    /// Simplicity by sub-tuples. A proper submodule `U' < X_U` always gives
    /// the proper sub-tuple `(U', β^{-1} G(U'))`, so `X_U` must be zero or
    /// simple. With `X_U = 0` the sub-tuples are the submodules of `X_Z`.
    /// With `X_U` simple they are `(0, Z')` for `Z'` inside `ker β` and
    /// `(X_U, Z')` for `Z'` containing `im α`.
    pub fn is_simple(&self, x: &MvObject<F>) -> bool {
        if x.xu.is_zero() {
            return self.zcat.is_simple(&x.xz);
        }
        self.ucat.is_simple(&x.xu) && x.beta.is_injective() && x.alpha.is_surjective()
    }
}

impl<F: Field> AbelianCategory for MvCategory<F> {
    type Scalar = F;
    type Object = MvObject<F>;
    type Morphism = MvMorphism<F>;

    fn source(&self, f: &MvMorphism<F>) -> MvObject<F> {
        f.source.clone()
    }

    fn target(&self, f: &MvMorphism<F>) -> MvObject<F> {
        f.target.clone()
    }

    fn identity(&self, x: &MvObject<F>) -> MvMorphism<F> {
        self.pair(x, x, Matrix::identity(x.xu.dim()), Matrix::identity(x.xz.dim()))
    }

    fn zero_morphism(&self, x: &MvObject<F>, y: &MvObject<F>) -> MvMorphism<F> {
        self.pair(x, y, Matrix::zeros(x.xu.dim(), y.xu.dim()), Matrix::zeros(x.xz.dim(), y.xz.dim()))
    }

    fn compose(&self, f: &MvMorphism<F>, g: &MvMorphism<F>) -> MvMorphism<F> {
        self.pair(&f.source, &g.target, &f.fu.matrix * &g.fu.matrix, &f.fz.matrix * &g.fz.matrix)
    }

    fn add(&self, f: &MvMorphism<F>, g: &MvMorphism<F>) -> MvMorphism<F> {
        self.pair(&f.source, &f.target, &f.fu.matrix + &g.fu.matrix, &f.fz.matrix + &g.fz.matrix)
    }

    fn scale(&self, c: &F, f: &MvMorphism<F>) -> MvMorphism<F> {
        self.pair(&f.source, &f.target, f.fu.matrix.scale(c), f.fz.matrix.scale(c))
    }

    /// Pairs of module maps cut out by the two commuting squares.
    fn hom_basis(&self, x: &MvObject<F>, y: &MvObject<F>) -> Vec<MvMorphism<F>> {
        let hu = self.ucat.hom(&x.xu, &y.xu);
        let hz = self.zcat.hom(&x.xz, &y.xz);
        let width = x.tensor.module.dim() * y.xz.dim() + x.xz.dim() * y.hom.module.dim();
        let mut rows = Vec::new();
        for u in &hu {
            let mut row = self.f_map(u, x, y).then(&y.alpha).matrix.into_entries();
            row.extend(x.beta.then(&self.g_map(u, x, y)).matrix.into_entries());
            rows.push(row);
        }
        for z in &hz {
            let mut row = (-&x.alpha.then(z).matrix).into_entries();
            row.extend((-&z.then(&y.beta).matrix).into_entries());
            rows.push(row);
        }
        let count = hu.len() + hz.len();
        if count == 0 {
            return Vec::new();
        }
        let solutions = if width == 0 { Matrix::identity(count) } else { Matrix::from_rows(width, &rows).left_kernel() };
        solutions
            .row_iter()
            .map(|c| {
                let mut fu = Matrix::zeros(x.xu.dim(), y.xu.dim());
                for (u, cu) in hu.iter().zip(c) {
                    fu = &fu + &u.matrix.scale(cu);
                }
                let mut fz = Matrix::zeros(x.xz.dim(), y.xz.dim());
                for (z, cz) in hz.iter().zip(&c[hu.len()..]) {
                    fz = &fz + &z.matrix.scale(cz);
                }
                self.pair(x, y, fu, fz)
            })
            .collect()
    }

    /// `(ker f_U, ker f_Z)`. `α` restricts since `F(ι) α f_Z = F(ι f_U) α' = 0`,
    /// and `β` lands in `G(ker f_U) = ker G(f_U)`.
    fn kernel(&self, f: &MvMorphism<F>) -> MvMorphism<F> {
        let (ku, iu) = self.ucat.kernel_of(&f.fu);
        let (kz, iz) = self.zcat.kernel_of(&f.fz);
        let x = &f.source;
        let t = self.functor_f(&ku);
        let h = self.functor_g(&ku);
        let fi = self.data.m.tensor_map(&iu, &t, &x.tensor);
        let gi = self.data.n.hom_map(&iu, &h, &x.hom);
        let alpha = through_mono(&fi.then(&x.alpha).matrix, &iz.matrix);
        let beta = through_mono(&iz.then(&x.beta).matrix, &gi.matrix);
        let k = self.assemble(ku, kz, alpha, beta);
        self.pair(&k, x, iu.matrix, iz.matrix)
    }

    /// `(cok f_U, cok f_Z)`. `α` descends because `F` preserves the cokernel of `f_U`.
    fn cokernel(&self, f: &MvMorphism<F>) -> MvMorphism<F> {
        let (cu, pu) = self.ucat.cokernel_of(&f.fu);
        let (cz, pz) = self.zcat.cokernel_of(&f.fz);
        let y = &f.target;
        let t = self.functor_f(&cu);
        let h = self.functor_g(&cu);
        let fp = self.data.m.tensor_map(&pu, &y.tensor, &t);
        let gp = self.data.n.hom_map(&pu, &y.hom, &h);
        let alpha = through_epi(&fp.matrix, &y.alpha.then(&pz).matrix);
        let beta = through_epi(&pz.matrix, &y.beta.then(&gp).matrix);
        let c = self.assemble(cu, cz, alpha, beta);
        self.pair(y, &c, pu.matrix, pz.matrix)
    }

    fn direct_sum(&self, parts: &[MvObject<F>]) -> (MvObject<F>, Vec<MvMorphism<F>>, Vec<MvMorphism<F>>) {
        let us: Vec<_> = parts.iter().map(|p| p.xu.clone()).collect();
        let zs: Vec<_> = parts.iter().map(|p| p.xz.clone()).collect();
        let (su, iu, pu) = self.ucat.direct_sum(&us);
        let (sz, iz, pz) = self.zcat.direct_sum(&zs);
        let t = self.functor_f(&su);
        let h = self.functor_g(&su);
        let mut alpha = Matrix::zeros(t.module.dim(), sz.dim());
        let mut beta = Matrix::zeros(sz.dim(), h.module.dim());
        for (k, p) in parts.iter().enumerate() {
            let fp = self.data.m.tensor_map(&pu[k], &t, &p.tensor);
            alpha = &alpha + &fp.then(&p.alpha).then(&iz[k]).matrix;
            let gi = self.data.n.hom_map(&iu[k], &p.hom, &h);
            beta = &beta + &pz[k].then(&p.beta).then(&gi).matrix;
        }
        let sum = self.assemble(su, sz, alpha, beta);
        let inj = parts.iter().enumerate().map(|(k, p)| self.pair(p, &sum, iu[k].matrix.clone(), iz[k].matrix.clone())).collect();
        let proj = parts.iter().enumerate().map(|(k, p)| self.pair(&sum, p, pu[k].matrix.clone(), pz[k].matrix.clone())).collect();
        (sum, inj, proj)
    }

    fn zero_object(&self) -> MvObject<F> {
        let (u, z) = (self.ucat.zero(), self.zcat.zero());
        let t = self.functor_f(&u);
        let h = self.functor_g(&u);
        let alpha = Matrix::zeros(t.module.dim(), 0);
        let beta = Matrix::zeros(0, h.module.dim());
        self.assemble(u, z, alpha, beta)
    }

    fn is_zero_object(&self, x: &MvObject<F>) -> bool {
        x.xu.is_zero() && x.xz.is_zero()
    }

    fn morphism_coords(&self, f: &MvMorphism<F>) -> Vec<F> {
        let mut v = f.fu.matrix.entries().to_vec();
        v.extend_from_slice(f.fz.matrix.entries());
        v
    }

    fn object_dim(&self, x: &MvObject<F>) -> usize {
        x.xu.dim() + x.xz.dim()
    }

    fn is_mono(&self, f: &MvMorphism<F>) -> bool {
        f.fu.is_injective() && f.fz.is_injective()
    }

    fn is_epi(&self, f: &MvMorphism<F>) -> bool {
        f.fu.is_surjective() && f.fz.is_surjective()
    }
}
