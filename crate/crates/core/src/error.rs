use thiserror::Error;

/// Errors raised by the base-b routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid base {0}: base must be at least 2")]
    InvalidBase(u64),

    #[error("invalid digit {digit} for base {base}")]
    InvalidDigit { digit: u64, base: u32 },

    #[error("invalid series order {0}: order must be at least 1")]
    InvalidOrder(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
