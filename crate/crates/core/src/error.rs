use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: n = {left} vs n = {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("n = {n} exceeds the supported limit of {limit}")]
    Capacity { n: usize, limit: usize },

    #[error("index {index} outside 1..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("torsion in degree {degree}: invariant factors {factors:?}")]
    Torsion { degree: usize, factors: Vec<String> },

    #[error("element is not in the span: {0}")]
    NotInSpan(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("cache: {0}")]
    Cache(String),
}
