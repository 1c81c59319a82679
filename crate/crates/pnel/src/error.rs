//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by loaders, builders and the learning pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A text format failed to parse; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A name was used before being declared.
    #[error("undeclared {kind} `{name}`")]
    Undeclared { kind: &'static str, name: String },

    /// A membership function was built with inconsistent parameters.
    #[error("invalid membership shape: {0}")]
    InvalidShape(String),

    /// Fuzzification could not produce a set family.
    #[error("fuzzification failed for `{property}`: {message}")]
    Fuzzification { property: String, message: String },

    /// A learning task is inconsistent.
    #[error("invalid task: {0}")]
    InvalidTask(String),

    /// A configuration assignment is malformed.
    #[error("configuration: {0}")]
    Config(String),

    /// Fold construction could not satisfy the stratification invariants.
    #[error("fold construction failed: {0}")]
    Folds(String),

    /// CSV conversion failed.
    #[error("csv conversion: {0}")]
    Csv(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Attach a 1-based line number to an error raised while handling a line.
    pub fn at_line(self, line: usize) -> Error {
        match self {
            Error::Parse { message, .. } => Error::Parse { line, message },
            other => Error::Parse {
                line,
                message: other.to_string(),
            },
        }
    }
}
