use std::path::PathBuf;

use fullerene_gate::{GateError, ParseError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("invalid sweep: {0}")]
    Spec(String),
    #[error(transparent)]
    Gate(#[from] GateError),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 0 success, 1 configuration or input error, 2 no gate-time crossing,
    /// 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Gate(GateError::NoCrossing { .. }) => 2,
            CliError::Gate(e) if e.is_numerical() => 3,
            CliError::Gate(GateError::ZeroState | GateError::OutOfRange(_)) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
