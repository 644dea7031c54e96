//! Subspaces of `F^n` in canonical (RREF) form.

use crate::error::{Error, Result};
use crate::exactla::field::Field;
use crate::exactla::matrix::Matrix;

/// A subspace of `F^ambient`, stored by its RREF basis so that equal
/// subspaces have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

/// A quotient `F^n / U` with a chosen complement.
///
/// `projection` is `n x q`, `section` is `q x n`, and `section * projection = I_q`.
/// The complement spanned by `section` consists of the standard vectors at the
/// non-pivot positions of `U`.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    pub projection: Matrix<F>,
    pub section: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix<F>) -> Self {
        let r = m.rref();
        Subspace { ambient: m.cols(), basis: r.matrix.block(0, 0, r.rank, m.cols()), pivots: r.pivots }
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Self {
        Self::row_space(&Matrix::from_rows(ambient, vectors))
    }

    /// `{x : x * m = 0}` for an `ambient x k` matrix `m`.
    pub fn left_null(m: &Matrix<F>) -> Self {
        Self::row_space(&m.left_kernel())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        // RREF basis: the coefficient of row i is the entry of v at pivot i.
        let c: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.apply(&c);
        (back.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.row_iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        // x U = y V  <=>  [x, y] * [U; -V] = 0
        let stacked = self.basis.vstack(&-&other.basis);
        let k = stacked.left_kernel();
        let coeffs = k.block(0, 0, k.rows(), self.dim());
        Ok(Self::row_space(&(&coeffs * &self.basis)))
    }

    /// Image of the subspace under `v |-> v * m`.
    pub fn image_under(&self, m: &Matrix<F>) -> Self {
        Self::row_space(&(&self.basis * m))
    }

    /// Preimage of the subspace under `v |-> v * m` (`m` is `k x ambient`).
    pub fn preimage_under(&self, m: &Matrix<F>) -> Self {
        let q = self.quotient();
        Self::left_null(&(m * &q.projection))
    }

    /// Projection onto `F^n / U` and a section of it.
    pub fn quotient(&self) -> Quotient<F> {
        let n = self.ambient;
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let q = free.len();
        let mut section = Matrix::zeros(q, n);
        for (i, &f) in free.iter().enumerate() {
            section[(i, f)] = F::one();
        }
        // Reduce each standard vector e_j against the basis; its class has
        // coordinates given by the free entries of the remainder.
        let mut projection = Matrix::zeros(n, q);
        for j in 0..n {
            if let Some(i) = free.iter().position(|&f| f == j) {
                projection[(j, i)] = F::one();
            } else {
                let row = self.pivots.iter().position(|&p| p == j).expect("pivot column");
                // e_j = basis_row - (free entries of basis_row)
                for (i, &f) in free.iter().enumerate() {
                    projection[(j, i)] = -self.basis[(row, f)].clone();
                }
            }
        }
        Quotient { projection, section }
    }
}
