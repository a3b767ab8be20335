use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("limit exceeded: {what} = {value} is above the configured limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("weight mismatch: expected {expected}, got {got}")]
    WeightMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} is not a removable corner of {partition}")]
    NotACorner { partition: String, index: usize },
    #[error("index {index} is out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid multi-index: {0}")]
    InvalidMultiIndex(String),
    #[error("symmetrizers require m >= 1")]
    EmptyDegree,
    #[error("dimension formula gave the non-integer {0}")]
    NonIntegralDimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
