use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An operation that needs an exact polynomial got a truncated series.
    #[error("series is not exact: {0}")]
    NotExact(&'static str),
    /// A value that should be impossible for valid input; indicates a bug.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
