use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid grid vector: {0}")]
    InvalidVector(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("comparison point has infinite regularizer value")]
    InfeasiblePoint,

    #[error("relative noise level undefined for zero data")]
    ZeroData,

    #[error("point outside the forward operator's domain: {0}")]
    OutsideDomain(String),

    #[error("linear solve failed: {0}")]
    Solve(String),
}

pub type Result<T> = std::result::Result<T, Error>;
