use thiserror::Error;

/// Errors produced by the agewatch library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed text input. `line` is 1-based.
    #[error("{message} at line {line}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("training diverged at epoch {epoch} (mse = {mse})")]
    Divergence { epoch: usize, mse: f64 },

    #[error("model document: {0}")]
    ModelFormat(String),

    #[error("unknown indicator `{0}`")]
    UnknownIndicator(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn ensure_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}
