use thiserror::Error;

/// Failure classes shared by every module. The CLI maps each class to an
/// exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("input error: {0}")]
    Input(String),
    /// A quantity is mathematically undefined for this input, or a formula's
    /// hypothesis does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    /// The request exceeds a documented size bound or enumeration budget.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// An internal consistency check failed. Always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn capacity<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Capacity(msg.into()))
}
