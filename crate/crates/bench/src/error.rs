use std::path::PathBuf;

use splitting_core::SplitError;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("record {row}: {msg}")]
    Parse { row: usize, msg: String },
    #[error(transparent)]
    Core(#[from] SplitError),
}

pub type Result<T> = std::result::Result<T, BenchError>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> BenchError {
    let path = path.into();
    move |source| BenchError::Io { path, source }
}
