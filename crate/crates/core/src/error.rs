use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse scalar from {0:?}")]
    ParseScalar(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("square root of {0} is not in the working field")]
    SqrtOutsideField(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a member of {0}")]
    NotMember(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
