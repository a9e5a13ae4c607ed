use std::path::PathBuf;

use paucity_core::{Error as CoreError, Int};

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed system file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Input(String),
    #[error("enumerators disagree at X={x}: {detail}")]
    Mismatch { x: Int, detail: String },
    #[error("{failed} verification suite(s) failed")]
    SuiteFailed { failed: usize },
}

impl CliError {
    /// 0 ok, 2 input, 3 degenerate system, 4 capacity or budget, 5 oracle mismatch.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::DegenerateSystem) => 3,
            CliError::Core(
                CoreError::CapacityExceeded | CoreError::WorkBudgetExceeded { .. } | CoreError::Overflow,
            ) => 4,
            CliError::Mismatch { .. } | CliError::SuiteFailed { .. } => 5,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}
