use thiserror::Error;

/// Errors shared across the crate.
///
/// Oracle caps produce [`Error::TooLarge`] so callers can distinguish "the
/// instance exceeds the configured enumeration budget" from "no solution".
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} too large: {actual} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        actual: u64,
        cap: u64,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInstance(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
