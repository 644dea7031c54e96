//! Exact linear algebra over prime fields and the rationals.

pub mod field;
pub mod matrix;
pub mod subspace;

pub use field::{Field, FieldSpec, Fp, Gf2, Gf3, Rational};
pub use matrix::{Matrix, Rref, Solution};
pub use subspace::{Quotient, Subspace};
