use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A metric, committee, or instance failed validation.
    #[error("validation failed: {0}")]
    Validation(String),

    /// A rule was asked to run outside the (k, q) regime it is defined for.
    #[error("regime error: {0}")]
    Regime(String),

    /// An enumeration would exceed its configured cap.
    #[error("enumeration cap exceeded: {what} needs {needed} items, cap is {cap}")]
    Cap {
        what: String,
        needed: u128,
        cap: u128,
    },

    /// Metric sampling gave up after its retry budget.
    #[error("sampling failed: {0}")]
    Sampling(String),

    /// Malformed external input (JSON bundle, rational literal, config).
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    /// A condition that must hold by construction did not.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}
