use crate::polyring::VarId;
use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no binding for variable {0}")]
    MissingVariable(VarId),
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("expected an integer, got {value} ({context})")]
    NonIntegerResult { value: String, context: String },
    #[error("enumeration of a {size}-element ground set exceeds the guard of {guard}")]
    TooLarge { size: usize, guard: usize },
    #[error("mode {mode} is not valid for family {family}")]
    InvalidMode { family: String, mode: String },
    #[error("need Taylor data up to order {needed}, have {available}")]
    OrderTooLow { needed: usize, available: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
