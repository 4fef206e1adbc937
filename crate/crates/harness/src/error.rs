use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },
    #[error("data error: {0}")]
    Data(String),
    #[error("solver error: {0}")]
    Solver(#[from] jpda_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Machine-readable failure written next to the other outputs.
#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub exit_code: i32,
    pub message: String,
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 config, 3 data, 4 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Parse { .. } | HarnessError::Data(_) | HarnessError::Csv(_) => 3,
            HarnessError::Io { .. } | HarnessError::Json(_) => 3,
            HarnessError::Solver(e) if e.is_numerical() => 4,
            HarnessError::Solver(jpda_core::Error::InvalidConfig(_)) => 2,
            HarnessError::Solver(jpda_core::Error::Bandwidth(_)) => 2,
            HarnessError::Solver(_) => 3,
        }
    }

    pub fn record(&self) -> ErrorRecord {
        let kind = match self.exit_code() {
            2 => "config",
            4 => "numerical",
            _ => "data",
        };
        ErrorRecord {
            kind,
            exit_code: self.exit_code(),
            message: self.to_string(),
        }
    }
}
