use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// identify the offending input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("enumeration cap exceeded: {what} would need {needed} items (cap {cap})")]
    CapExceeded {
        what: String,
        needed: u128,
        cap: u128,
    },
    #[error("invalid core tower: {0}")]
    InvalidTower(String),
    #[error("table data error: {0}")]
    Data(String),
    #[error("internal identity failed: {0}")]
    Identity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParams(msg.into()))
}
