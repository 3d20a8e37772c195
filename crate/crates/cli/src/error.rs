use std::path::PathBuf;

use geomedian::GeoError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const ERROR: i32 = 1;
    pub const MAX_ITERS: i32 = 2;
    pub const INVALID: i32 = 3;
    pub const STALLED: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// Malformed document: the message carries the field path and position.
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    /// Well-formed document describing an invalid instance.
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Geo(#[from] GeoError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Invalid(_) => exit::INVALID,
            CliError::Io { .. } | CliError::Usage(_) | CliError::Geo(_) => exit::ERROR,
        }
    }
}
