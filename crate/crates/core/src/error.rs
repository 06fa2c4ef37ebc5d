use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no field element with the requested property: {0}")]
    NoSuchElement(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("degenerate propagation step at vertex index {step}")]
    DegenerateStep { step: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("truth assignment does not satisfy the formula (clause {0})")]
    NotSatisfying(usize),
    #[error("clause {clause} has {found} literals, expected 3")]
    ClauseArity { clause: usize, found: usize },
    #[error("clause {clause} repeats variable {var}")]
    RepeatedVariable { clause: usize, var: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolated(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
