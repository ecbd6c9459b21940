use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A standing assumption on the input pair is violated.
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("malformed path or slice: {0}")]
    Syntax(String),

    #[error("paths are not composable: {0}")]
    Composability(String),

    #[error("unrealizable at finite N: {0}")]
    Unrealizable(String),

    /// A computed result contradicts a proven identity.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
