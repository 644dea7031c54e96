//! Split basic finite-dimensional algebras.

mod quiver;
mod validate;

pub use quiver::{build_bound_quiver_algebra, Arrow, Presentation, Quiver, Relation, DEFAULT_MAX_PATH_LENGTH};
pub use validate::{validate_algebra, ValidationReport, Violation};

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};

/// A finite-dimensional algebra given by a basis and structure constants.
///
/// `right_mult[j]` is the matrix of `x |-> x * b_j` in the basis, so row `i`
/// holds the coordinates of `b_i * b_j`.
#[derive(Clone, Debug)]
pub struct Algebra<F> {
    labels: Vec<String>,
    vertex_names: Vec<String>,
    right_mult: Vec<Matrix<F>>,
    unit: Vec<F>,
    idempotents: Vec<Vec<F>>,
    radical: Subspace<F>,
    generators: OnceLock<Vec<Vec<F>>>,
}

impl<F: Field> PartialEq for Algebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.vertex_names == other.vertex_names
            && self.right_mult == other.right_mult
            && self.unit == other.unit
            && self.idempotents == other.idempotents
            && self.radical == other.radical
    }
}

impl<F: Field> Eq for Algebra<F> {}

/// How a corner algebra `fAf` sits inside `A`.
#[derive(Clone, Debug)]
pub struct Corner<F> {
    pub algebra: Algebra<F>,
    /// Vertices of `A` kept in the corner, in order.
    pub vertices: Vec<usize>,
    /// Rows are the corner basis written in the basis of `A`.
    pub embedding: Matrix<F>,
}

/// The quotient `A / AfA` together with the comparison maps.
#[derive(Clone, Debug)]
pub struct IdempotentQuotient<F> {
    pub algebra: Algebra<F>,
    /// Vertices of `A` that survive, in order.
    pub vertices: Vec<usize>,
    /// `dim A x dim(A/AfA)`: coordinates of the class of each element.
    pub projection: Matrix<F>,
    /// Rows are representatives of the quotient basis in `A`.
    pub section: Matrix<F>,
    /// The ideal `AfA`.
    pub ideal: Subspace<F>,
}

impl<F: Field> Algebra<F> {
    /// Assemble an algebra from raw data without checking any axioms.
    /// `table[i][j]` holds the coordinates of `b_i * b_j`.
    pub fn from_structure_constants(
        labels: Vec<String>,
        vertex_names: Vec<String>,
        table: &[Vec<Vec<F>>],
        unit: Vec<F>,
        idempotents: Vec<Vec<F>>,
        radical_basis: &[Vec<F>],
    ) -> Result<Self> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::DimensionMismatch(format!("structure constants must be {n} x {n} x {n}")));
        }
        if unit.len() != n || idempotents.iter().any(|e| e.len() != n) {
            return Err(Error::DimensionMismatch("unit or idempotent has wrong length".into()));
        }
        if idempotents.len() != vertex_names.len() {
            return Err(Error::DimensionMismatch("one idempotent per vertex expected".into()));
        }
        if radical_basis.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("radical vector has wrong length".into()));
        }
        let right_mult = (0..n)
            .map(|j| Matrix::from_rows(n, &(0..n).map(|i| table[i][j].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(Algebra {
            labels,
            vertex_names,
            right_mult,
            unit,
            idempotents,
            radical: Subspace::span(n, radical_basis),
            generators: OnceLock::new(),
        })
    }

    pub fn zero() -> Self {
        Algebra {
            labels: Vec::new(),
            vertex_names: Vec::new(),
            right_mult: Vec::new(),
            unit: Vec::new(),
            idempotents: Vec::new(),
            radical: Subspace::zero(0),
            generators: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn idempotent(&self, v: usize) -> &[F] {
        &self.idempotents[v]
    }

    pub fn idempotents(&self) -> &[Vec<F>] {
        &self.idempotents
    }

    pub fn radical(&self) -> &Subspace<F> {
        &self.radical
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[i] = F::one();
        v
    }

    /// Matrix of right multiplication by the basis element `b_j`.
    pub fn right_mult_basis(&self, j: usize) -> &Matrix<F> {
        &self.right_mult[j]
    }

    /// Matrix of `x |-> x * y`.
    pub fn right_mult(&self, y: &[F]) -> Matrix<F> {
        combine(&self.right_mult, y, self.dim())
    }

    /// Matrix of `x |-> y * x`.
    pub fn left_mult(&self, y: &[F]) -> Matrix<F> {
        let rows: Vec<Vec<F>> = (0..self.dim()).map(|k| self.right_mult[k].apply(y)).collect();
        Matrix::from_rows(self.dim(), &rows)
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.right_mult(y).apply(x)
    }

    /// Sum of the idempotents of the given vertices.
    pub fn idempotent_sum(&self, vertices: &[usize]) -> Vec<F> {
        let mut f = vec![F::zero(); self.dim()];
        for &v in vertices {
            for (a, b) in f.iter_mut().zip(&self.idempotents[v]) {
                *a += b.clone();
            }
        }
        f
    }

    fn check_vertices(&self, vertices: &[usize]) -> Result<()> {
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.vertex_count() {
                return Err(Error::InvalidIdempotent(format!("vertex index {v} out of range")));
            }
            if vertices[..i].contains(&v) {
                return Err(Error::InvalidIdempotent(format!("vertex {} repeated", self.vertex_names[v])));
            }
        }
        Ok(())
    }

    /// The subspace `x A y`.
    pub fn sandwich(&self, x: &[F], y: &[F]) -> Subspace<F> {
        let l = self.left_mult(x);
        let r = self.right_mult(y);
        Subspace::row_space(&(&l * &r))
    }

    /// Basis of `e_v A e_w`, with `e_v` first when `v == w`.
    fn piece_basis(&self, v: usize, w: usize) -> Matrix<F> {
        let piece = self.sandwich(&self.idempotents[v], &self.idempotents[w]);
        if v != w {
            return piece.basis().clone();
        }
        let rad_part = piece.intersection(&self.radical).expect("same ambient");
        Matrix::from_rows(self.dim(), &[self.idempotents[v].clone()]).vstack(rad_part.basis())
    }

    /// Label for a vector: the basis label when it is a basis vector.
    fn label_of(&self, v: &[F]) -> String {
        let nonzero: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        if nonzero.len() == 1 && v[nonzero[0]].is_one() {
            return self.labels[nonzero[0]].clone();
        }
        nonzero
            .iter()
            .map(|&i| if v[i].is_one() { self.labels[i].clone() } else { format!("{}{}", v[i], self.labels[i]) })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Structure constants of the span of `basis` (rows, independent, closed
    /// under multiplication), read through the coordinate map `coords`.
    fn restrict(
        &self,
        basis: &Matrix<F>,
        coords: &Matrix<F>,
        vertex_names: Vec<String>,
        idempotents: Vec<Vec<F>>,
        radical_rows: &Matrix<F>,
    ) -> Self {
        let k = basis.rows();
        let labels = (0..k).map(|i| self.label_of(basis.row(i))).collect();
        let right_mult = (0..k)
            .map(|j| {
                let rj = self.right_mult(basis.row(j));
                &(basis * &rj) * coords
            })
            .collect();
        let unit = idempotents.iter().fold(vec![F::zero(); k], |mut acc, e| {
            for (a, b) in acc.iter_mut().zip(e) {
                *a += b.clone();
            }
            acc
        });
        Algebra {
            labels,
            vertex_names,
            right_mult,
            unit,
            idempotents,
            radical: Subspace::row_space(&(radical_rows * coords)),
            generators: OnceLock::new(),
        }
    }

    /// The corner algebra `fAf` for `f` the sum of the given vertex idempotents.
    pub fn corner(&self, vertices: &[usize]) -> Result<Corner<F>> {
        self.check_vertices(vertices)?;
        let n = self.dim();
        let mut basis = Matrix::zeros(0, n);
        let mut idem_rows = Vec::new();
        for &v in vertices {
            for &w in vertices {
                let pb = self.piece_basis(v, w);
                if v == w {
                    idem_rows.push(basis.rows());
                }
                basis = basis.vstack(&pb);
            }
        }
        let k = basis.rows();
        let coords = coordinate_map(&basis);
        let idempotents = idem_rows
            .iter()
            .map(|&r| {
                let mut e = vec![F::zero(); k];
                e[r] = F::one();
                e
            })
            .collect();
        let radical_rows = {
            let rad = Subspace::row_space(&basis).intersection(&self.radical).expect("same ambient");
            rad.basis().clone()
        };
        let names = vertices.iter().map(|&v| self.vertex_names[v].clone()).collect();
        let algebra = self.restrict(&basis, &coords, names, idempotents, &radical_rows);
        Ok(Corner { algebra, vertices: vertices.to_vec(), embedding: basis })
    }

    /// The two-sided ideal `AxA`.
    pub fn ideal_generated(&self, x: &[F]) -> Subspace<F> {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            let bx = self.mul(&self.basis_vector(i), x);
            for j in 0..n {
                rows.push(self.right_mult_basis(j).apply(&bx));
            }
        }
        Subspace::span(n, &rows)
    }

    /// The quotient `A / AfA` for `f` the sum of the given vertex idempotents.
    pub fn quotient_by_idempotent_ideal(&self, vertices: &[usize]) -> Result<IdempotentQuotient<F>> {
        self.check_vertices(vertices)?;
        let n = self.dim();
        let ideal = self.ideal_generated(&self.idempotent_sum(vertices));
        let kept: Vec<usize> = (0..self.vertex_count()).filter(|v| !vertices.contains(v)).collect();
        let mut section = Matrix::zeros(0, n);
        let mut idem_rows = Vec::new();
        for &v in &kept {
            for &w in &kept {
                let pb = self.piece_basis(v, w);
                // the ideal meets this piece inside the radical, so e_v is never a pivot
                let inside = Subspace::row_space(&pb).intersection(&ideal).expect("same ambient");
                let local = inside.basis() * &coordinate_map(&pb);
                let q = Subspace::row_space(&local).quotient();
                if v == w {
                    debug_assert!(q.section.rows() > 0 && q.section[(0, 0)].is_one());
                    idem_rows.push(section.rows());
                }
                section = section.vstack(&(&q.section * &pb));
            }
        }
        let q = section.rows();
        let full = section.vstack(ideal.basis());
        let inv = full.inverse().ok_or_else(|| {
            Error::Invariant("ideal and piece representatives do not span the algebra".into())
        })?;
        let projection = inv.block(0, 0, n, q);
        let idempotents = idem_rows
            .iter()
            .map(|&r| {
                let mut e = vec![F::zero(); q];
                e[r] = F::one();
                e
            })
            .collect();
        let names = kept.iter().map(|&v| self.vertex_names[v].clone()).collect();
        let radical_rows = self.radical.basis().clone();
        let algebra = self.restrict(&section, &projection, names, idempotents, &radical_rows);
        Ok(IdempotentQuotient { algebra, vertices: kept, projection, section, ideal })
    }

    /// The opposite algebra: same basis, reversed multiplication.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        // row k of R^op_j is b_j * b_k, i.e. row j of R_k
        let right_mult = (0..n)
            .map(|j| {
                let rows: Vec<Vec<F>> = (0..n).map(|k| self.right_mult[k].row_vec(j)).collect();
                Matrix::from_rows(n, &rows)
            })
            .collect();
        Algebra {
            labels: self.labels.clone(),
            vertex_names: self.vertex_names.clone(),
            right_mult,
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            radical: self.radical.clone(),
            generators: OnceLock::new(),
        }
    }

    /// Elements generating `A` as an algebra: the vertex idempotents and
    /// lifts of a basis of `rad / rad^2`; falls back to the whole basis if
    /// these fail to generate.
    pub fn generators(&self) -> Vec<Vec<F>> {
        self.generators.get_or_init(|| self.compute_generators()).clone()
    }

    fn compute_generators(&self) -> Vec<Vec<F>> {
        let n = self.dim();
        let rad = self.radical.basis();
        let rad2 = Subspace::row_space(&self.product_space(rad, rad));
        let local = rad2.basis() * &coordinate_map(rad);
        let q = Subspace::row_space(&local).quotient();
        let mut gens = self.idempotents.clone();
        gens.extend((&q.section * rad).row_iter().map(|r| r.to_vec()));
        if self.generated_subalgebra(&gens).dim() == n {
            gens
        } else {
            (0..n).map(|i| self.basis_vector(i)).collect()
        }
    }

    /// Span of all products `x * y` with `x` from the rows of `a`, `y` from the rows of `b`.
    pub fn product_space(&self, a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
        let mut rows = Vec::new();
        for y in b.row_iter() {
            let r = self.right_mult(y);
            for x in a.row_iter() {
                rows.push(r.apply(x));
            }
        }
        Subspace::span(self.dim(), &rows).basis().clone()
    }

    fn generated_subalgebra(&self, gens: &[Vec<F>]) -> Subspace<F> {
        let n = self.dim();
        let mut span = Subspace::span(n, std::slice::from_ref(&self.unit));
        loop {
            let g = Matrix::from_rows(n, gens);
            let next = span.sum(&Subspace::row_space(&self.product_space(span.basis(), &g))).expect("same ambient");
            if next == span {
                return span;
            }
            span = next;
        }
    }

    /// Smallest `k` with `rad^k = 0`, if it is at most `dim + 1`.
    pub fn loewy_length(&self) -> Option<usize> {
        let mut power = self.radical.basis().clone();
        let mut k = 1;
        while power.rows() > 0 {
            if k > self.dim() + 1 {
                return None;
            }
            power = self.product_space(&power, self.radical.basis());
            k += 1;
        }
        Some(k)
    }
}

/// Linear combination `sum_i y_i * mats[i]` of square matrices of size `n`.
pub(crate) fn combine<F: Field>(mats: &[Matrix<F>], y: &[F], n: usize) -> Matrix<F> {
    let mut out = Matrix::zeros(n, n);
    for (m, c) in mats.iter().zip(y) {
        if c.is_zero() {
            continue;
        }
        out = &out + &m.scale(c);
    }
    out
}

/// For independent rows `basis` (`k x n`), an `n x k` matrix `c` with `basis * c = I`.
/// Applying `c` to a vector in the row space returns its coordinates.
pub fn coordinate_map<F: Field>(basis: &Matrix<F>) -> Matrix<F> {
    let k = basis.rows();
    let n = basis.cols();
    if k == 0 {
        return Matrix::zeros(n, 0);
    }
    // solve basis * c = I_k: columns of c are solutions of basis * x = e_i
    Matrix::solve(basis, &Matrix::identity(k)).expect("rows must be independent").particular
}

#[cfg(test)]
mod tests;
