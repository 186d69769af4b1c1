//! Error type shared across the toolkit.

use std::io;
use std::path::Path;

use thiserror::Error;

/// Errors produced by ingestion, statistics, scoring and the experiment
/// pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Underlying I/O failure, annotated with the path that caused it.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    /// A file could not be parsed; `line` is 1-based.
    #[error("parse error in {path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    /// An input violated a documented precondition or invariant.
    #[error("validation error: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
