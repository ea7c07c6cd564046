use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcgError {
    /// Malformed shapes or indices: mismatched dimensions, out-of-range entries.
    #[error("structural error: {0}")]
    Structural(String),

    /// An operation's documented precondition does not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("window too small: {0}")]
    Window(String),

    #[error("not implemented: {0}")]
    NotImplemented(String),
}

pub type Result<T, E = NcgError> = std::result::Result<T, E>;
