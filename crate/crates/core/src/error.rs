use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QcError {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("enumeration bound {bound} exceeds the coefficient limit {limit}")]
    BoundOverflow { bound: f64, limit: i64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("duplicate point at input index {0}")]
    DuplicatePoint(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(u32, u32, u32, u32),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for QcError {
    fn from(e: std::io::Error) -> Self {
        QcError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, QcError>;
