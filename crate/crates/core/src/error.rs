use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range 0..={max}")]
    Range { index: i64, max: i64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("profile {0} is not admissible (sum of i*n_i is not divisible by N)")]
    NotAdmissible(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("unsupported model: {0}")]
    Unsupported(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("moduli space is empty or unstable: {0}")]
    EmptyModuli(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("degenerate profile: {0}")]
    Degenerate(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
