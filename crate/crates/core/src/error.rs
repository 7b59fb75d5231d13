use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {reason}")]
    Malformed {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("paper {0:?} cannot be hidden: it has no known year")]
    HideUnknown(String),

    #[error("unknown paper id {0:?}")]
    UnknownPaper(String),

    #[error("invalid fold count K={k}: {reason}")]
    InvalidFolds { k: usize, reason: String },

    #[error("unknown algorithm {algo:?} for network {network:?}")]
    UnknownAlgorithm { network: String, algo: String },

    #[error("infeasible synthetic parameters: {0}")]
    InfeasibleParams(String),

    #[error("invalid year range {min}..={max}")]
    InvalidYearRange { min: i32, max: i32 },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
