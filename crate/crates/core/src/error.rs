use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested variation budget pushes an adversarial construction's
    /// perturbation outside the range where its minimizers stay interior.
    #[error("budget too large: {0}")]
    BudgetTooLarge(String),

    #[error("numeric fault at epoch {epoch}: {what}")]
    NumericFault { epoch: usize, what: String },

    #[error("relative loss undefined: oracle total is zero")]
    UndefinedLoss,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
