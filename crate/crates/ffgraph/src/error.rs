use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Parameter(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error(transparent)]
    Core(#[from] ffgraph_core::Error),
}

pub type AppResult<T> = Result<T, AppError>;

impl AppError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io { path: path.into(), source }
    }

    /// 1 parameter error, 2 I/O error, 3 internal consistency failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Parameter(_) => 1,
            AppError::Io { .. } => 2,
            AppError::Consistency(_) | AppError::Core(ffgraph_core::Error::Consistency(_)) => 3,
            AppError::Core(_) => 1,
        }
    }
}
