//! The recollement `mod-A/AeA -> mod-A -> mod-eAe` of an idempotent `e`.

use std::sync::Arc;

use super::{intermediate_extension, IntermediateExtension, Recollement, Samples};
use crate::algebra::{coordinate_map, Algebra, Corner, IdempotentQuotient};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};
use crate::modcat::{Bimodule, ModCat, ModuleMap, RightModule, Verdict};

pub struct IdempotentRecollement<F: Field> {
    vertices: Vec<usize>,
    e: Vec<F>,
    center: ModCat<F>,
    left: ModCat<F>,
    right: ModCat<F>,
    quotient: IdempotentQuotient<F>,
    corner: Corner<F>,
    /// `eA` as an `eAe`-`A` bimodule.
    e_a: Bimodule<F>,
    e_a_basis: Matrix<F>,
    e_a_coords: Matrix<F>,
    /// `Ae` as an `A`-`eAe` bimodule.
    a_e: Bimodule<F>,
    a_e_basis: Matrix<F>,
    a_e_coords: Matrix<F>,
}

/// `M e` as an `eAe`-module with its basis inside `M`.
struct CornerPart<F: Field> {
    module: RightModule<F>,
    basis: Matrix<F>,
    coords: Matrix<F>,
}

/// `j_! P -> j_!* X` built from a projective cover `P -> X` in the corner category.
#[derive(Clone, Debug)]
pub struct CoverTransport<F: Field> {
    pub map: ModuleMap<F>,
    pub intermediate: IntermediateExtension<ModCat<F>>,
    /// Projective source, surjective, kernel inside the radical.
    pub essential: bool,
    /// Comparison of the source with the directly computed projective cover.
    pub matches_direct: Verdict,
}

impl<F: Field> IdempotentRecollement<F> {
    /// `e` is the sum of the idempotents at `vertices`.
    pub fn new(algebra: Arc<Algebra<F>>, vertices: &[usize]) -> Result<Self> {
        let mut vertices = vertices.to_vec();
        vertices.sort_unstable();
        let corner = algebra.corner(&vertices)?;
        let quotient = algebra.quotient_by_idempotent_ideal(&vertices)?;
        let e = algebra.idempotent_sum(&vertices);
        let right_alg = Arc::new(corner.algebra.clone());
        let left_alg = Arc::new(quotient.algebra.clone());
        let n = algebra.dim();

        let ea = Subspace::row_space(&algebra.left_mult(&e)).basis().clone();
        let ea_coords = coordinate_map(&ea);
        let restrict = |m: &Matrix<F>, basis: &Matrix<F>, coords: &Matrix<F>| &(basis * m) * coords;
        let e_a = Bimodule::new(
            Arc::clone(&right_alg),
            Arc::clone(&algebra),
            ea.rows(),
            corner.embedding.row_iter().map(|c| restrict(&algebra.left_mult(c), &ea, &ea_coords)).collect(),
            (0..n).map(|j| restrict(algebra.right_mult_basis(j), &ea, &ea_coords)).collect(),
        );
        let ae = Subspace::row_space(&algebra.right_mult(&e)).basis().clone();
        let ae_coords = coordinate_map(&ae);
        let a_e = Bimodule::new(
            Arc::clone(&algebra),
            Arc::clone(&right_alg),
            ae.rows(),
            (0..n).map(|i| restrict(&algebra.left_mult(&algebra.basis_vector(i)), &ae, &ae_coords)).collect(),
            corner.embedding.row_iter().map(|c| restrict(&algebra.right_mult(c), &ae, &ae_coords)).collect(),
        );
        Ok(IdempotentRecollement {
            vertices,
            e,
            center: ModCat::new(algebra),
            left: ModCat::new(left_alg),
            right: ModCat::new(right_alg),
            quotient,
            corner,
            e_a,
            e_a_basis: ea,
            e_a_coords: ea_coords,
            a_e,
            a_e_basis: ae,
            a_e_coords: ae_coords,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn idempotent(&self) -> &[F] {
        &self.e
    }

    pub fn quotient(&self) -> &IdempotentQuotient<F> {
        &self.quotient
    }

    pub fn corner(&self) -> &Corner<F> {
        &self.corner
    }

    /// `eA` as an `eAe`-`A` bimodule; `j_!` tensors with it.
    pub fn e_times_a(&self) -> &Bimodule<F> {
        &self.e_a
    }

    /// `Ae` as an `A`-`eAe` bimodule; `j_*` is `Hom` out of it.
    pub fn a_times_e(&self) -> &Bimodule<F> {
        &self.a_e
    }

    /// `Some` for `e = 0` or `e = 1`.
    pub fn degenerate(&self) -> Option<&'static str> {
        if self.vertices.is_empty() {
            Some("e = 0: the open part is zero")
        } else if self.vertices.len() == self.center.algebra().vertex_count() {
            Some("e = 1: the closed part is zero")
        } else {
            None
        }
    }

    /// Indecomposable projectives, injectives and simples of all three categories.
    pub fn standard_samples(&self) -> Samples<RightModule<F>, RightModule<F>, RightModule<F>> {
        Samples { center: cells(&self.center), left: cells(&self.left), right: cells(&self.right) }
    }

    fn ideal_part(&self, m: &RightModule<F>) -> Subspace<F> {
        m.times_subspace(&self.quotient.ideal)
    }

    /// `M / M AeA` over `A/AeA`, with projection and section matrices.
    fn pull(&self, m: &RightModule<F>) -> (RightModule<F>, Matrix<F>, Matrix<F>) {
        let sub = self.ideal_part(m);
        let q = sub.quotient();
        let (over_a, _) = m.quotient(&sub);
        let module = over_a.restrict_along(Arc::clone(self.left.algebra()), &self.quotient.section);
        (module, q.projection, q.section)
    }

    /// `{m : m AeA = 0}` over `A/AeA`, with inclusion and coordinates.
    fn shriek(&self, m: &RightModule<F>) -> (RightModule<F>, Matrix<F>, Matrix<F>) {
        let sub = m.annihilator_of(&self.quotient.ideal);
        let (over_a, inc) = m.submodule(&sub);
        let module = over_a.restrict_along(Arc::clone(self.left.algebra()), &self.quotient.section);
        let coords = coordinate_map(&inc.matrix);
        (module, inc.matrix, coords)
    }

    fn corner_part(&self, m: &RightModule<F>) -> CornerPart<F> {
        let basis = Subspace::row_space(&m.action(&self.e)).basis().clone();
        let coords = coordinate_map(&basis);
        let action = self.corner.embedding.row_iter().map(|c| &(&basis * &m.action(c)) * &coords).collect();
        let module = RightModule::from_action(Arc::clone(self.right.algebra()), basis.rows(), action);
        CornerPart { module, basis, coords }
    }

    /// Transport a projective cover `p : P -> X` of corner modules to
    /// `j_! P -> j_!* X` and compare it with the direct projective cover.
    pub fn cover_transport(&self, x: &RightModule<F>, p: &ModuleMap<F>) -> Result<CoverTransport<F>> {
        if !self.right.is_projective(&p.source) || !p.is_surjective() {
            return Err(Error::Invariant("input is not a projective cover".into()));
        }
        let intermediate = intermediate_extension(self, x)?;
        let jp = self.j_shriek_map(p);
        let map = jp.then(&intermediate.epi);
        let rad = self.center.radical_subspace(&map.source);
        let essential = self.center.is_projective(&map.source)
            && map.is_surjective()
            && rad.contains_subspace(&map.kernel_subspace());
        let direct = self.center.projective_cover(&map.target);
        let matches_direct = self.center.is_isomorphic(&map.source, &direct.map.source).verdict();
        Ok(CoverTransport { map, intermediate, essential, matches_direct })
    }
}

fn cells<F: Field>(c: &ModCat<F>) -> Vec<(String, RightModule<F>)> {
    let names = c.algebra().vertex_names().to_vec();
    let cells = c.cells();
    let mut out = Vec::new();
    for (v, name) in names.iter().enumerate() {
        out.push((format!("P({name})"), cells.projectives[v].clone()));
        out.push((format!("I({name})"), cells.injectives[v].clone()));
        out.push((format!("S({name})"), cells.simples[v].clone()));
    }
    out
}

impl<F: Field> Recollement for IdempotentRecollement<F> {
    type Scalar = F;
    type Center = ModCat<F>;
    type Left = ModCat<F>;
    type Right = ModCat<F>;

    fn center(&self) -> &ModCat<F> {
        &self.center
    }

    fn left(&self) -> &ModCat<F> {
        &self.left
    }

    fn right(&self) -> &ModCat<F> {
        &self.right
    }

    fn i_lower(&self, z: &RightModule<F>) -> RightModule<F> {
        self.center.inflate(z, &self.quotient.projection)
    }

    fn i_lower_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap::new(self.i_lower(&f.source), self.i_lower(&f.target), f.matrix.clone())
    }

    fn i_upper(&self, x: &RightModule<F>) -> RightModule<F> {
        self.pull(x).0
    }

    fn i_upper_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        let (s, _, sec) = self.pull(&f.source);
        let (t, proj, _) = self.pull(&f.target);
        ModuleMap::new(s, t, &(&sec * &f.matrix) * &proj)
    }

    fn i_shriek(&self, x: &RightModule<F>) -> RightModule<F> {
        self.shriek(x).0
    }

    fn i_shriek_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        let (s, inc, _) = self.shriek(&f.source);
        let (t, _, coords) = self.shriek(&f.target);
        ModuleMap::new(s, t, &(&inc * &f.matrix) * &coords)
    }

    fn j_upper(&self, x: &RightModule<F>) -> RightModule<F> {
        self.corner_part(x).module
    }

    fn j_upper_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        let s = self.corner_part(&f.source);
        let t = self.corner_part(&f.target);
        ModuleMap::new(s.module, t.module, &(&s.basis * &f.matrix) * &t.coords)
    }

    fn j_shriek(&self, y: &RightModule<F>) -> RightModule<F> {
        self.e_a.tensor(y).module
    }

    fn j_shriek_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        let tx = self.e_a.tensor(&f.source);
        let ty = self.e_a.tensor(&f.target);
        self.e_a.tensor_map(f, &tx, &ty)
    }

    fn j_lower(&self, y: &RightModule<F>) -> RightModule<F> {
        self.a_e.hom_into(y).module
    }

    fn j_lower_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        let hx = self.a_e.hom_into(&f.source);
        let hy = self.a_e.hom_into(&f.target);
        self.a_e.hom_map(f, &hx, &hy)
    }

    fn i_pull_unit(&self, x: &RightModule<F>) -> ModuleMap<F> {
        let (q, proj, _) = self.pull(x);
        ModuleMap::new(x.clone(), self.i_lower(&q), proj)
    }

    fn i_pull_counit(&self, z: &RightModule<F>) -> ModuleMap<F> {
        let (q, _, sec) = self.pull(&self.i_lower(z));
        ModuleMap::new(q, z.clone(), sec)
    }

    fn i_shriek_unit(&self, z: &RightModule<F>) -> ModuleMap<F> {
        let (s, _, coords) = self.shriek(&self.i_lower(z));
        ModuleMap::new(z.clone(), s, coords)
    }

    fn i_shriek_counit(&self, x: &RightModule<F>) -> ModuleMap<F> {
        let (s, inc, _) = self.shriek(x);
        ModuleMap::new(self.i_lower(&s), x.clone(), inc)
    }

    fn j_shriek_unit(&self, y: &RightModule<F>) -> ModuleMap<F> {
        let t = self.e_a.tensor(y);
        let back = self.corner_part(&t.module);
        let e = self.e_a_coords.apply(&self.e);
        let rows: Vec<Vec<F>> = (0..y.dim())
            .map(|p| {
                let mut flat = vec![F::zero(); y.dim() * e.len()];
                flat[p * e.len()..(p + 1) * e.len()].clone_from_slice(&e);
                back.coords.apply(&t.projection.apply(&flat))
            })
            .collect();
        ModuleMap::new(y.clone(), back.module, Matrix::from_rows(back.basis.rows(), &rows))
    }

    fn j_shriek_counit(&self, x: &RightModule<F>) -> ModuleMap<F> {
        let part = self.corner_part(x);
        let t = self.e_a.tensor(&part.module);
        let mut rows = Vec::new();
        for p in part.basis.row_iter() {
            for q in self.e_a_basis.row_iter() {
                rows.push(x.action(q).apply(p));
            }
        }
        let flat = Matrix::from_rows(x.dim(), &rows);
        ModuleMap::new(t.module, x.clone(), &t.section * &flat)
    }

    fn j_star_unit(&self, x: &RightModule<F>) -> ModuleMap<F> {
        let part = self.corner_part(x);
        let h = self.a_e.hom_into(&part.module);
        let rows: Vec<Vec<F>> = (0..x.dim())
            .map(|p| {
                let mut flat = Vec::new();
                for q in self.a_e_basis.row_iter() {
                    let mut v = vec![F::zero(); x.dim()];
                    v[p] = F::one();
                    flat.extend(part.coords.apply(&x.action(q).apply(&v)));
                }
                h.coords_of(&flat)
            })
            .collect();
        ModuleMap::new(x.clone(), h.module.clone(), Matrix::from_rows(h.module.dim(), &rows))
    }

    fn j_star_counit(&self, y: &RightModule<F>) -> ModuleMap<F> {
        let h = self.a_e.hom_into(y);
        let part = self.corner_part(&h.module);
        let e = self.a_e_coords.apply(&self.e);
        let rows: Vec<Vec<F>> = part.basis.row_iter().map(|c| h.element(c).apply(&e)).collect();
        ModuleMap::new(part.module, y.clone(), Matrix::from_rows(y.dim(), &rows))
    }
}

/// `IdempotentRecollement` with `j_*` replaced by `j_!` and the corresponding
/// adjunction maps set to zero. Used as a negative control.
pub struct SwappedPushforward<F: Field>(pub IdempotentRecollement<F>);

impl<F: Field> Recollement for SwappedPushforward<F> {
    type Scalar = F;
    type Center = ModCat<F>;
    type Left = ModCat<F>;
    type Right = ModCat<F>;

    fn center(&self) -> &ModCat<F> {
        self.0.center()
    }
    fn left(&self) -> &ModCat<F> {
        self.0.left()
    }
    fn right(&self) -> &ModCat<F> {
        self.0.right()
    }
    fn i_lower(&self, z: &RightModule<F>) -> RightModule<F> {
        self.0.i_lower(z)
    }
    fn i_lower_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        self.0.i_lower_map(f)
    }
    fn i_upper(&self, x: &RightModule<F>) -> RightModule<F> {
        self.0.i_upper(x)
    }
    fn i_upper_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        self.0.i_upper_map(f)
    }
    fn i_shriek(&self, x: &RightModule<F>) -> RightModule<F> {
        self.0.i_shriek(x)
    }
    fn i_shriek_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        self.0.i_shriek_map(f)
    }
    fn j_upper(&self, x: &RightModule<F>) -> RightModule<F> {
        self.0.j_upper(x)
    }
    fn j_upper_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        self.0.j_upper_map(f)
    }
    fn j_shriek(&self, y: &RightModule<F>) -> RightModule<F> {
        self.0.j_shriek(y)
    }
    fn j_shriek_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        self.0.j_shriek_map(f)
    }
    fn j_lower(&self, y: &RightModule<F>) -> RightModule<F> {
        self.0.j_shriek(y)
    }
    fn j_lower_map(&self, f: &ModuleMap<F>) -> ModuleMap<F> {
        self.0.j_shriek_map(f)
    }
    fn i_pull_unit(&self, x: &RightModule<F>) -> ModuleMap<F> {
        self.0.i_pull_unit(x)
    }
    fn i_pull_counit(&self, z: &RightModule<F>) -> ModuleMap<F> {
        self.0.i_pull_counit(z)
    }
    fn i_shriek_unit(&self, z: &RightModule<F>) -> ModuleMap<F> {
        self.0.i_shriek_unit(z)
    }
    fn i_shriek_counit(&self, x: &RightModule<F>) -> ModuleMap<F> {
        self.0.i_shriek_counit(x)
    }
    fn j_shriek_unit(&self, y: &RightModule<F>) -> ModuleMap<F> {
        self.0.j_shriek_unit(y)
    }
    fn j_shriek_counit(&self, x: &RightModule<F>) -> ModuleMap<F> {
        self.0.j_shriek_counit(x)
    }
    fn j_star_unit(&self, x: &RightModule<F>) -> ModuleMap<F> {
        ModuleMap::zero(x, &self.j_lower(&self.j_upper(x)))
    }
    fn j_star_counit(&self, y: &RightModule<F>) -> ModuleMap<F> {
        ModuleMap::zero(&self.j_upper(&self.j_lower(y)), y)
    }
}
