use std::path::PathBuf;

use thiserror::Error;

/// Failure of one CLI run, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("material file {path}: {reason}")]
    Material { path: PathBuf, reason: String },

    #[error(transparent)]
    Core(#[from] dispersive_core::Error),

    /// One or more checks missed their tolerance; the report was written.
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
}

impl CliError {
    /// 2 for numerical-tolerance failures, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ChecksFailed { .. } | CliError::Core(dispersive_core::Error::Tolerance { .. }) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
