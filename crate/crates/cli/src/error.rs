use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] oscnet::Error),

    #[error("invalid option: {0}")]
    Usage(String),

    #[error("malformed input document: {0}")]
    Format(String),

    #[error("malformed config file {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write output to {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}
