use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid dihedral order, field order or algebra parameters.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    /// Caller supplied inconsistent or malformed input.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    /// The solved filtration is too small for the requested computation.
    #[error("resource limit: {0}")]
    Resource(String),
    /// The commutator span at the current slack does not yet cut the
    /// functional space down to its expected dimension.
    #[error("insufficient commutator slack: dimension {found} exceeds expected {expected} (raise slack)")]
    InsufficientSlack { found: usize, expected: usize },
    /// An exact identity that must hold did not.
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code: 1 mismatch, 2 usage, 3 resource.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Usage(_) | Error::Parse { .. } => 2,
            Error::Resource(_) | Error::InsufficientSlack { .. } => 3,
            Error::Arithmetic(_) | Error::Mismatch(_) | Error::Internal(_) => 1,
        }
    }
}
