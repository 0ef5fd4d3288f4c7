use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not positive-definite")]
    NotPositiveDefinite,
    #[error("matrix is singular")]
    Singular,
    #[error("vectors are linearly dependent")]
    RankDeficient,
    #[error("incompatible quadratic fields: sqrt({0}) and sqrt({1})")]
    IncompatibleField(u64, u64),
    #[error("comparison undecidable at {bits} bits: {what}")]
    Undecidable { what: String, bits: u32 },
    #[error("Q(x, y) = q(x) - y^2 is anisotropic: no solution exists")]
    NoSolutionExists,
    #[error("budget below threshold: {0}")]
    BudgetBelowThreshold(String),
    #[error("search exhausted the guaranteed radius without a solution (implementation bug)")]
    SearchExhausted,
    #[error("enumeration exceeded {0} lattice vectors")]
    EnumerationLimit(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
