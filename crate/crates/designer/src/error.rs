use std::path::PathBuf;

use phonon_core::CoreError;

#[derive(Debug, thiserror::Error)]
pub enum DesignerError {
    #[error("cannot read {path}: {source}")]
    ReadParams { path: PathBuf, source: std::io::Error },
    #[error("invalid parameter file {path}: {source}")]
    ParseParams { path: PathBuf, source: serde_json::Error },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("computation failed: {0}")]
    Compute(#[from] CoreError),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

impl DesignerError {
    pub fn exit_code(&self) -> i32 {
        match self {
            DesignerError::ReadParams { .. } | DesignerError::ParseParams { .. } | DesignerError::Config(_) => 2,
            DesignerError::Compute(_) => 3,
            DesignerError::Write { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, DesignerError>;
