//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, evaluation, and I/O paths.
#[derive(Debug, Error)]
pub enum Error {
    /// A domain type was constructed with invalid parameters.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A transform specification violates a family invariant.
    #[error("invalid transform spec: {0}")]
    InvalidSpec(String),
    /// The requested evaluation path does not exist for this spec.
    #[error("unsupported path: {0}")]
    Unsupported(String),
    /// The requested discretization would exceed hard size limits.
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
    /// Configuration file or schema problem.
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::InvalidSpec(msg.into())
    }
}
