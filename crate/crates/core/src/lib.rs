pub mod error;
pub mod algebra;
pub mod analyze;
pub mod cli;
pub mod exactla;
pub mod fixtures;
pub mod modcat;
pub mod mvglue;
pub mod recol;
pub mod strat;

pub use error::{Error, Result};
pub use exactla::{Field, FieldSpec, Fp, Gf2, Gf3, Matrix, Rational, Subspace};
