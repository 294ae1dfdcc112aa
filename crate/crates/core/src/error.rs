use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable contexts differ")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable context: {0}")]
    InvalidContext(String),
    #[error("module mismatch: expected `{expected}`, found `{found}`")]
    ModuleMismatch { expected: String, found: String },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error("requires a Lie conformal algebra")]
    NotSkew,
    #[error("not skeletal")]
    NotSkeletal,
    #[error("not strict")]
    NotStrict,
    #[error("not a cocycle")]
    NotCocycle,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("degree {degree} exceeds configured maximum {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("wrong operation flavor: expected {expected}")]
    WrongFlavor { expected: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
