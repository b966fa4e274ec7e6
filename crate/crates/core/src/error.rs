use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    Dimension {
        op: &'static str,
        left: String,
        right: String,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty clause added; formula is unsatisfiable")]
    EmptyClause,

    #[error("hard clauses are unsatisfiable")]
    HardUnsat,

    #[error("solver reported UNSATISFIABLE")]
    Unsat,

    #[error("external solver failed: {0}")]
    External(String),

    #[error("external solver timed out after {0} s")]
    Timeout(u64),

    #[error("model does not satisfy the formula: {0}")]
    ModelCheck(String),

    #[error("incomplete model: variable {0} has no value")]
    IncompleteModel(u32),

    #[error("dataset error in {path}: {msg}")]
    Dataset { path: PathBuf, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim(op: &'static str, left: impl ToString, right: impl ToString) -> Self {
        Error::Dimension {
            op,
            left: left.to_string(),
            right: right.to_string(),
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
