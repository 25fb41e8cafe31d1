use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ambient dimension mismatch ({0} vs {1})")]
    AmbientMismatch(usize, usize),

    #[error("operation requires a finite field; search over the rationals is unbounded")]
    InfiniteSearch,

    #[error("enumeration guard exceeded: search space has {needed} candidates, bound is {bound}")]
    SearchBoundExceeded { needed: u128, bound: u128 },

    #[error("base algebra is not Tortkara; the Tortkara cocycle space is undefined")]
    NotTortkara,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
