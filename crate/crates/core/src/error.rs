use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A coloring or report file does not conform to its format.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// An exact (exponential) scan was asked to run above its size cap.
    #[error("{what} has size {size}, above the exact cap {cap}; {hint}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
        hint: &'static str,
    },

    /// A verifier was handed an input that fails its certification step.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}
