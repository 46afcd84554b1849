use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DmodError {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("operation requires {0}")]
    Precondition(String),
    #[error("module is not specializable along the given subvariety (b-function is zero)")]
    NotSpecializable,
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, DmodError>;
