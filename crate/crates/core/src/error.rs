use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be non-increasing and non-negative")]
    InvalidPartition(Vec<i64>),

    #[error("length mismatch: expected {expected} parts, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infeasible ranks: {0}")]
    InfeasibleRanks(String),

    #[error("resource limit exceeded: {what} has {size} basis vectors (cap {cap})")]
    ResourceLimit { what: String, size: usize, cap: usize },

    #[error("inconsistent split data: {0}")]
    Inconsistent(String),

    #[error("character is not symmetric under permutation of entries: {0}")]
    NonSymmetricCharacter(String),

    #[error("negative residual while decomposing character at weight {0}")]
    NegativeResidual(String),

    #[error("ambiguous cohomology: {0}")]
    Ambiguous(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
