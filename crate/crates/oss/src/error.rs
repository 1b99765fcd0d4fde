use std::path::PathBuf;

use oss_core::epep::EpepError;
use oss_core::optimize::OptimizeError;
use oss_core::raytrace::TraceError;
use oss_core::scene::{RoiError, SceneError};
use oss_core::array::ArrayError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OssError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error(transparent)]
    Roi(#[from] RoiError),
    #[error(transparent)]
    Array(#[from] ArrayError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: corrupt database: {reason}")]
    CorruptDatabase { path: PathBuf, reason: String },
    #[error("{path}: stale database: {what} hash does not match the current inputs; rerun build-epep")]
    StaleDatabase { path: PathBuf, what: &'static str },
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Epep(#[from] EpepError),
    #[error(transparent)]
    Optimize(#[from] OptimizeError),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("image output: {0}")]
    Image(#[from] image::ImageError),
}

impl OssError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 1 validation, 2 stale or corrupt database,
    /// 3 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Json { .. }
            | Self::Format(_)
            | Self::Scene(_)
            | Self::Roi(_)
            | Self::Array(_)
            | Self::Config(_) => 1,
            Self::CorruptDatabase { .. } | Self::StaleDatabase { .. } => 2,
            _ => 3,
        }
    }
}

pub type Result<T, E = OssError> = std::result::Result<T, E>;
