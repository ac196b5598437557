use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config line {line}: {msg}")]
    ConfigLine { line: usize, msg: String },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] frobsieve_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }

    /// Process exit code: 1 for a failed verification, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Verification(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
