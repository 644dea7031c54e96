//! Bimodules, and the tensor and Hom functors they induce.

use std::sync::Arc;

use crate::algebra::{combine, coordinate_map, Algebra};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};
use crate::modcat::module::{ModuleMap, RightModule};

/// An `S`-`R` bimodule. `left_action[i]` is the matrix of `m |-> s_i m` and
/// `right_action[j]` that of `m |-> m r_j`, both acting on row vectors.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    left: Arc<Algebra<F>>,
    right: Arc<Algebra<F>>,
    dim: usize,
    left_action: Vec<Matrix<F>>,
    right_action: Vec<Matrix<F>>,
}

/// `X (x)_S M` as a right `R`-module.
#[derive(Clone, Debug)]
pub struct Tensor<F: Field> {
    pub module: RightModule<F>,
    pub factor: RightModule<F>,
    /// `X (x)_k M -> X (x)_S M`.
    pub projection: Matrix<F>,
    pub section: Matrix<F>,
}

/// `Hom_S(N, X)` as a right `R`-module (for `N` an `R`-`S` bimodule).
#[derive(Clone, Debug)]
pub struct HomModule<F: Field> {
    pub module: RightModule<F>,
    pub factor: RightModule<F>,
    /// Rows are flattened `dim N x dim X` matrices.
    pub basis: Matrix<F>,
    source_dim: usize,
    coords: Matrix<F>,
}

impl<F: Field> Bimodule<F> {
    pub fn new(
        left: Arc<Algebra<F>>,
        right: Arc<Algebra<F>>,
        dim: usize,
        left_action: Vec<Matrix<F>>,
        right_action: Vec<Matrix<F>>,
    ) -> Self {
        assert_eq!(left_action.len(), left.dim());
        assert_eq!(right_action.len(), right.dim());
        Bimodule { left, right, dim, left_action, right_action }
    }

    /// `A` as an `A`-`A` bimodule.
    pub fn regular(a: Arc<Algebra<F>>) -> Self {
        let n = a.dim();
        let left = (0..n).map(|i| a.left_mult(&a.basis_vector(i))).collect();
        let right = (0..n).map(|i| a.right_mult_basis(i).clone()).collect();
        Bimodule::new(Arc::clone(&a), a, n, left, right)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &Arc<Algebra<F>> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra<F>> {
        &self.right
    }

    pub fn left_action(&self, s: &[F]) -> Matrix<F> {
        combine(&self.left_action, s, self.dim)
    }

    pub fn right_action(&self, r: &[F]) -> Matrix<F> {
        combine(&self.right_action, r, self.dim)
    }

    /// The underlying right `R`-module.
    pub fn as_right_module(&self) -> RightModule<F> {
        RightModule::from_action(Arc::clone(&self.right), self.dim, self.right_action.clone())
    }

    /// Check both module structures and that they commute.
    pub fn check(&self) -> Result<()> {
        let id = Matrix::identity(self.dim);
        if self.left_action(self.left.unit()) != id || self.right_action(self.right.unit()) != id {
            return Err(Error::InvalidGluing("unit does not act as the identity".into()));
        }
        let (s, r) = (&self.left, &self.right);
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let p = s.mul(&s.basis_vector(i), &s.basis_vector(j));
                // (s_i s_j) m = s_i (s_j m)
                if self.left_action(&p) != self.left_action_basis(j) * self.left_action_basis(i) {
                    return Err(Error::InvalidGluing(format!(
                        "left action fails on {} * {}",
                        s.labels()[i],
                        s.labels()[j]
                    )));
                }
            }
        }
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                let p = r.mul(&r.basis_vector(i), &r.basis_vector(j));
                if self.right_action(&p) != &self.right_action[i] * &self.right_action[j] {
                    return Err(Error::InvalidGluing(format!(
                        "right action fails on {} * {}",
                        r.labels()[i],
                        r.labels()[j]
                    )));
                }
            }
        }
        for (i, l) in self.left_action.iter().enumerate() {
            for (j, rt) in self.right_action.iter().enumerate() {
                if (l * rt) != (rt * l) {
                    return Err(Error::InvalidGluing(format!(
                        "actions of {} and {} do not commute",
                        s.labels()[i],
                        r.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    fn left_action_basis(&self, i: usize) -> &Matrix<F> {
        &self.left_action[i]
    }

    /// `X (x)_S M` for a right `S`-module `X`.
    pub fn tensor(&self, x: &RightModule<F>) -> Tensor<F> {
        let (dx, dm) = (x.dim(), self.dim);
        let mut rel = Matrix::zeros(0, dx * dm);
        for g in self.left.generators() {
            let a = x.action(&g);
            let l = self.left_action(&g);
            rel = rel.vstack(&(&a.kron(&Matrix::identity(dm)) - &Matrix::identity(dx).kron(&l)));
        }
        let q = Subspace::row_space(&rel).quotient();
        let action = self
            .right_action
            .iter()
            .map(|r| &(&q.section * &Matrix::identity(dx).kron(r)) * &q.projection)
            .collect();
        let module = RightModule::from_action(Arc::clone(&self.right), q.section.rows(), action);
        Tensor { module, factor: x.clone(), projection: q.projection, section: q.section }
    }

    /// `f (x) M : X (x)_S M -> Y (x)_S M`.
    pub fn tensor_map(&self, f: &ModuleMap<F>, tx: &Tensor<F>, ty: &Tensor<F>) -> ModuleMap<F> {
        let lifted = f.matrix.kron(&Matrix::identity(self.dim));
        ModuleMap::new(tx.module.clone(), ty.module.clone(), &(&tx.section * &lifted) * &ty.projection)
    }

    /// `Hom_S(N, X)` where `self = N` is an `R`-`S` bimodule and `X` a right `S`-module.
    pub fn hom_into(&self, x: &RightModule<F>) -> HomModule<F> {
        let (dn, dx) = (self.dim, x.dim());
        let mut system = Matrix::zeros(0, dn * dx);
        for g in self.right.generators() {
            let rn = self.right_action(&g);
            let ax = x.action(&g);
            system = system.vstack(&(&rn.kron(&Matrix::identity(dx)) - &Matrix::identity(dn).kron(&ax.transpose())));
        }
        let basis = if dn * dx == 0 { Matrix::zeros(0, 0) } else { system.kernel() };
        let coords = coordinate_map(&basis);
        // (phi . r)(n) = phi(r n): Phi |-> L_r Phi, i.e. flat |-> flat (L_r^T (x) I)
        let action = self
            .left_action
            .iter()
            .map(|l| &(&basis * &l.transpose().kron(&Matrix::identity(dx))) * &coords)
            .collect();
        let module = RightModule::from_action(Arc::clone(&self.left), basis.rows(), action);
        HomModule { module, factor: x.clone(), source_dim: dn, basis, coords }
    }

    /// `Hom_S(N, g) : Hom_S(N, X) -> Hom_S(N, Y)`.
    pub fn hom_map(&self, g: &ModuleMap<F>, hx: &HomModule<F>, hy: &HomModule<F>) -> ModuleMap<F> {
        let lifted = Matrix::identity(self.dim).kron(&g.matrix);
        ModuleMap::new(hx.module.clone(), hy.module.clone(), &(&hx.basis * &lifted) * &hy.coords)
    }
}

impl<F: Field> HomModule<F> {
    /// The `dim N x dim X` matrix of the element with the given coordinates.
    pub fn element(&self, coords: &[F]) -> Matrix<F> {
        let flat = self.basis.apply(coords);
        Matrix::from_vec(self.source_dim, self.factor.dim(), flat)
    }

    /// Coordinates of a flattened `S`-linear map.
    pub fn coords_of(&self, flat: &[F]) -> Vec<F> {
        self.coords.apply(flat)
    }
}
