use std::path::PathBuf;

use crate::fetch::FetchError;

/// Failures surfaced to the shell, each mapped to a fixed exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input {path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: bipeel::Error,
    },
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Fetch(#[from] FetchError),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input { .. } => 2,
            CliError::Fetch(FetchError::UnknownDataset { .. }) => 1,
            CliError::Output { .. } | CliError::Fetch(_) | CliError::Runtime(_) => 3,
        }
    }
}

impl From<bipeel::Error> for CliError {
    fn from(e: bipeel::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
