use thiserror::Error;

use crate::validate::ValidationReport;

/// Errors produced by the generators, opposite rules and projections.
#[derive(Debug, Error)]
pub enum Error {
    /// An input value lies outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter is out of range or inconsistent with the input.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A solution failed its invariants.
    #[error("invalid solution: {0}")]
    Invalid(ValidationReport),

    /// Malformed input text. Line and column are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
