use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A structure failed its defining equations.
    #[error("{kind} verification failed: {summary}")]
    VerificationFailed { kind: String, summary: String },

    /// The request exceeds a hard search bound.
    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("index out of range: {index} (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unknown scalar token {token:?} at {location}")]
    UnknownToken { token: String, location: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
