use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("relation is not admissible: {0}")]
    NonAdmissible(String),
    #[error("path spans did not stabilize below length {0}; algebra possibly infinite-dimensional")]
    PossiblyInfinite(usize),
    #[error("invalid idempotent: {0}")]
    InvalidIdempotent(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid gluing data: {0}")]
    InvalidGluing(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("iteration bound {0} exceeded: {1}")]
    IterationBound(usize, String),
    #[error("exhaustive search requested over the rationals")]
    OracleOverRationals,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
}

pub type Result<T> = std::result::Result<T, Error>;
