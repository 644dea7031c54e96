//! Right modules as action matrices, and module maps.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::algebra::{coordinate_map, Algebra};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};

struct Inner<F> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    /// `action[i]` is the matrix of `m |-> m * b_i`.
    action: Vec<Matrix<F>>,
}

/// A finite-dimensional right module. Vectors are rows and `m * a` is
/// `m * action(a)`. Cheap to clone.
pub struct RightModule<F>(Arc<Inner<F>>);

impl<F> Clone for RightModule<F> {
    fn clone(&self) -> Self {
        RightModule(Arc::clone(&self.0))
    }
}

impl<F: Field> PartialEq for RightModule<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.dim == other.0.dim
                && self.0.action == other.0.action
                && (Arc::ptr_eq(&self.0.algebra, &other.0.algebra) || self.0.algebra == other.0.algebra))
    }
}

impl<F: Field> Eq for RightModule<F> {}

impl<F: Field> Hash for RightModule<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.dim.hash(state);
        self.0.action.hash(state);
    }
}

impl<F: Field> fmt::Debug for RightModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RightModule(dim {}, dimvec {:?})", self.dim(), self.dim_vector())
    }
}

/// A module homomorphism, stored as a `dim(source) x dim(target)` matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleMap<F: Field> {
    pub source: RightModule<F>,
    pub target: RightModule<F>,
    pub matrix: Matrix<F>,
}

impl<F: Field> fmt::Debug for ModuleMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({} -> {}, {:?})", self.source.dim(), self.target.dim(), self.matrix)
    }
}

impl<F: Field> RightModule<F> {
    /// Wrap action matrices without checking the module axioms.
    pub fn from_action(algebra: Arc<Algebra<F>>, dim: usize, action: Vec<Matrix<F>>) -> Self {
        assert_eq!(action.len(), algebra.dim(), "one action matrix per basis element");
        debug_assert!(action.iter().all(|m| m.rows() == dim && m.cols() == dim));
        RightModule(Arc::new(Inner { algebra, dim, action }))
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        let n = algebra.dim();
        Self::from_action(algebra, 0, vec![Matrix::zeros(0, 0); n])
    }

    /// The regular module `A_A`.
    pub fn regular(algebra: Arc<Algebra<F>>) -> Self {
        let action = (0..algebra.dim()).map(|j| algebra.right_mult_basis(j).clone()).collect();
        let n = algebra.dim();
        Self::from_action(algebra, n, action)
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.0.algebra
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }

    pub fn action_basis(&self, i: usize) -> &Matrix<F> {
        &self.0.action[i]
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.0.action
    }

    /// Matrix of `m |-> m * a` for an algebra element `a`.
    pub fn action(&self, a: &[F]) -> Matrix<F> {
        crate::algebra::combine(&self.0.action, a, self.0.dim)
    }

    /// `dim(M e_v)` for each vertex.
    pub fn dim_vector(&self) -> Vec<usize> {
        (0..self.algebra().vertex_count())
            .map(|v| self.action(self.algebra().idempotent(v)).rank())
            .collect()
    }

    /// Check the module axioms; returns a description of the first failure.
    pub fn check(&self) -> Result<()> {
        let a = self.algebra();
        let n = a.dim();
        let id = Matrix::identity(self.dim());
        if self.action(a.unit()) != id {
            return Err(Error::Invariant("unit does not act as the identity".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let prod = a.mul(&a.basis_vector(i), &a.basis_vector(j));
                if &self.0.action[i] * &self.0.action[j] != self.action(&prod) {
                    return Err(Error::Invariant(format!(
                        "action does not respect the product {} * {}",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Submodule spanned by a subspace closed under the action.
    pub fn submodule(&self, sub: &Subspace<F>) -> (RightModule<F>, ModuleMap<F>) {
        let basis = sub.basis();
        let coords = coordinate_map(basis);
        let action = self.0.action.iter().map(|a| &(basis * a) * &coords).collect();
        let m = Self::from_action(Arc::clone(self.algebra()), sub.dim(), action);
        let inc = ModuleMap { source: m.clone(), target: self.clone(), matrix: basis.clone() };
        (m, inc)
    }

    /// Quotient by a subspace closed under the action.
    pub fn quotient(&self, sub: &Subspace<F>) -> (RightModule<F>, ModuleMap<F>) {
        let q = sub.quotient();
        let action = self.0.action.iter().map(|a| &(&q.section * a) * &q.projection).collect();
        let m = Self::from_action(Arc::clone(self.algebra()), q.section.rows(), action);
        let proj = ModuleMap { source: self.clone(), target: m.clone(), matrix: q.projection };
        (m, proj)
    }

    /// Smallest submodule containing the given vectors.
    pub fn generated_submodule(&self, vectors: &Matrix<F>) -> Subspace<F> {
        let mut span = Subspace::row_space(vectors);
        loop {
            let mut rows = span.basis().clone();
            for a in &self.0.action {
                rows = rows.vstack(&(span.basis() * a));
            }
            let next = Subspace::row_space(&rows);
            if next == span {
                return span;
            }
            span = next;
        }
    }

    /// `M * X` for a subspace `X` of the algebra.
    pub fn times_subspace(&self, x: &Subspace<F>) -> Subspace<F> {
        let mut rows = Matrix::zeros(0, self.dim());
        for v in x.basis().row_iter() {
            rows = rows.vstack(&self.action(v));
        }
        Subspace::row_space(&rows)
    }

    /// `{m : m * x = 0 for all x in X}`.
    pub fn annihilator_of(&self, x: &Subspace<F>) -> Subspace<F> {
        let mats: Vec<Matrix<F>> = x.basis().row_iter().map(|v| self.action(v)).collect();
        if mats.is_empty() {
            return Subspace::whole(self.dim());
        }
        Subspace::left_null(&Matrix::hstack_all(self.dim(), &mats))
    }

    /// Direct sum with its injections and projections.
    pub fn direct_sum(algebra: Arc<Algebra<F>>, parts: &[RightModule<F>]) -> DirectSum<F> {
        let n = algebra.dim();
        let action = (0..n)
            .map(|i| Matrix::block_diag(&parts.iter().map(|p| p.0.action[i].clone()).collect::<Vec<_>>()))
            .collect();
        let dim = parts.iter().map(|p| p.dim()).sum();
        let sum = Self::from_action(algebra, dim, action);
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut offset = 0;
        for p in parts {
            let mut inj = Matrix::zeros(p.dim(), dim);
            inj.set_block(0, offset, &Matrix::identity(p.dim()));
            projections.push(ModuleMap { source: sum.clone(), target: p.clone(), matrix: inj.transpose() });
            injections.push(ModuleMap { source: p.clone(), target: sum.clone(), matrix: inj });
            offset += p.dim();
        }
        DirectSum { sum, injections, projections }
    }

    /// Change of rings along an algebra map given by `images` (row `i` is the
    /// image of `b_i` in the algebra of `self`).
    pub fn restrict_along(&self, algebra: Arc<Algebra<F>>, images: &Matrix<F>) -> RightModule<F> {
        let action = images.row_iter().map(|r| self.action(r)).collect();
        Self::from_action(algebra, self.dim(), action)
    }

    /// The vector-space dual, a module over the opposite algebra.
    pub fn dual(&self, opposite: Arc<Algebra<F>>) -> RightModule<F> {
        let action = self.0.action.iter().map(|a| a.transpose()).collect();
        Self::from_action(opposite, self.dim(), action)
    }
}

pub struct DirectSum<F: Field> {
    pub sum: RightModule<F>,
    pub injections: Vec<ModuleMap<F>>,
    pub projections: Vec<ModuleMap<F>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn new(source: RightModule<F>, target: RightModule<F>, matrix: Matrix<F>) -> Self {
        assert_eq!((matrix.rows(), matrix.cols()), (source.dim(), target.dim()), "map shape mismatch");
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &RightModule<F>) -> Self {
        Self::new(m.clone(), m.clone(), Matrix::identity(m.dim()))
    }

    pub fn zero(source: &RightModule<F>, target: &RightModule<F>) -> Self {
        Self::new(source.clone(), target.clone(), Matrix::zeros(source.dim(), target.dim()))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap<F>) -> Self {
        assert_eq!(self.target.dim(), next.source.dim(), "composition dimension mismatch");
        Self::new(self.source.clone(), next.target.clone(), &self.matrix * &next.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Check that the matrix intertwines every basis action.
    pub fn is_homomorphism(&self) -> bool {
        (0..self.source.algebra().dim()).all(|i| {
            &self.source.action_basis(i).clone() * &self.matrix == &self.matrix * self.target.action_basis(i)
        })
    }

    pub fn image_subspace(&self) -> Subspace<F> {
        Subspace::row_space(&self.matrix)
    }

    pub fn kernel_subspace(&self) -> Subspace<F> {
        Subspace::left_null(&self.matrix)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.source.clone(), self.target.clone(), &self.matrix + &other.matrix)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    /// The dual map `D(target) -> D(source)`.
    pub fn dual(&self, source_dual: &RightModule<F>, target_dual: &RightModule<F>) -> Self {
        Self::new(target_dual.clone(), source_dual.clone(), self.matrix.transpose())
    }
}
