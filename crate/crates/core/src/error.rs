use thiserror::Error;

/// Everything that can go wrong inside the engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("element {element} out of range for a domain of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("table cap exceeded: {size}^{arity} entries is above {cap}")]
    TableCap { size: usize, arity: usize, cap: usize },
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("malformed term: {0}")]
    MalformedTerm(String),
    #[error("algebra has no designated semilattice operation")]
    NoSemilattice,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
