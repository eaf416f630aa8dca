use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("degenerate vertex set: {0}")]
    Degenerate(String),
    #[error("matrix is not in Hermite normal form: {0}")]
    InvalidHerm(String),
    #[error("{what} exceeds capacity {limit}")]
    Capacity { what: String, limit: u64 },
    #[error("simplices are not comparable: {0}")]
    Incomparable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid family specification: {0}")]
    InvalidSpec(String),
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("group element cannot be normalized to a one-row generator: {0}")]
    NotCyclicNormalizable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
