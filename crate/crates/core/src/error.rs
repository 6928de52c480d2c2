use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("assembly failure: {0}")]
    Assembly(String),

    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),

    #[error("solver not found: {}", .0.display())]
    SolverNotFound(PathBuf),

    #[error("solver exited with status {code:?}")]
    SolverFailed { code: Option<i32>, stdout: String, stderr: String },

    #[error("solver timed out after {seconds} s")]
    SolverTimeout { seconds: f64, stdout: String, stderr: String },

    #[error("cannot parse solver output: {message}")]
    SolverOutput { message: String, raw: String },

    #[error("malformed SDPA input at line {line}: {message}")]
    SdpaParse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
