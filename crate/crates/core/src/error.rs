use thiserror::Error;

/// Failure modes shared by every pipeline in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments, dimension mismatches, schema or invariant violations in inputs.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A construction that is expected to succeed did not.
    #[error("internal error: {0}")]
    Internal(String),
    /// A size or length guard was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
