use thiserror::Error;

/// Errors raised by the exact-arithmetic layers and the experiment harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("no square root: {0}")]
    NoSquareRoot(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn prec(msg: impl Into<String>) -> Self {
        Error::InsufficientPrecision(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
