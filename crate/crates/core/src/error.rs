//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed structurally invalid data (dimension mismatch, empty grid, ...).
    #[error("argument error: {0}")]
    Argument(String),

    /// A point or parameter lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature or iteration failed to converge; the message carries diagnostics.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The combination of parameters is recognized but intentionally not implemented.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Invalid experiment configuration; the message names the offending key.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
