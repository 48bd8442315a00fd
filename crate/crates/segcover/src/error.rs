use thiserror::Error;

/// Crate-wide error type.
///
/// `Validation` names the offending field or input the way the JSON schemas
/// spell it (`rho`, `segments[3]`, ...) so callers can surface precise
/// diagnostics. `ResourceLimit` signals that an exhaustive search was cut
/// off and the caller should shrink the problem or raise the limit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {field}: {message}")]
    Validation { field: String, message: String },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation { field: field.into(), message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Error::Parse(message.into())
    }

    pub fn resource_limit(message: impl Into<String>) -> Self {
        Error::ResourceLimit(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
