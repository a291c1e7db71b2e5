use thiserror::Error;

/// Errors surfaced by the public API.
///
/// Internal invariant violations (e.g. mixing elements of different
/// characteristic deep inside an engine loop) are bugs and panic instead;
/// everything a caller can plausibly feed in wrong comes back as one of
/// these.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field descriptor mismatch: {0}")]
    FieldMismatch(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("not restricted: {0}")]
    NotRestricted(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("parity: {0}")]
    Parity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
