use thiserror::Error;

/// Errors raised by design construction, analysis and search.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range arguments.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A size limit (label width, row count, enumeration budget) would be exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// An exact identity or contract did not hold.
    #[error("verification failed: {0}")]
    Verification(String),
    /// An exact computation produced a value that cannot occur for a regular design.
    #[error("internal consistency fault: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn capacity<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Capacity(msg.into()))
}
