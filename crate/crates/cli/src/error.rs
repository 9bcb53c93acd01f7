use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] incant_core::Error),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot parse {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("{0}")]
    Input(String),

    #[error("verification failed: max deviation {max_deviation:e}, max leakage {max_leakage:e}")]
    VerificationFailed {
        max_deviation: f64,
        max_leakage: f64,
    },
}

impl CliError {
    /// Exit code contract: 1 for validation failures, 2 for capacity limits.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_capacity() => 2,
            _ => 1,
        }
    }
}
