use thiserror::Error;

/// Errors raised by the numerical core, the structures and the engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The dataset cannot be used by the structure (zero spread, too few samples).
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// The exact enumeration oracle does not support this target.
    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
