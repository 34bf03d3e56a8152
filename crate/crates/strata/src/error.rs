use thiserror::Error;

/// Errors surfaced by constructors, the model loader, and the verified
/// product operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A structural invariant of a value failed eager validation.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// An embedded identity assertion inside a verified operation failed.
    #[error("identity check failed: {0}")]
    IdentityCheck(String),

    /// Malformed input: JSON, polynomial grammar, partition syntax.
    #[error("parse error: {0}")]
    Parse(String),

    /// Bad command-line usage or an unknown command/suite name.
    #[error("{0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 1 usage/parse, 2 invariant, 3 identity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Usage(_) | Error::Io(_) => 1,
            Error::Invariant(_) => 2,
            Error::IdentityCheck(_) => 3,
        }
    }
}
