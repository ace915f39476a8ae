use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the toolkit.
///
/// The variants fall into three families that map onto the CLI exit codes:
/// validation problems, I/O failures and numerical guards.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("arena too small: expected target count {expected} < 1")]
    ArenaTooSmall { expected: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config {path}:{line}: {reason}")]
    Config {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("singular parameters: {0}")]
    Singular(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("normalization: mass {mass} differs from 1")]
    Normalization { mass: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for the numerical guards (pole, singular point).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Singular(_) | Error::Pole(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
