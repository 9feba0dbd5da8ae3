use thiserror::Error;

/// Failure modes shared by every construction and check in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An operator was applied outside the subspace where it is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A construction produced data violating one of its own invariants.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
