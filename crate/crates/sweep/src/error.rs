use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("fit domain: {0}")]
    FitDomain(String),
    #[error(transparent)]
    Model(#[from] dicke_core::Error),
}

pub type Result<T> = std::result::Result<T, SweepError>;
