//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration or precondition violation.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Malformed input data, with the 1-based line number when known.
    #[error("ingest error at line {line}: {msg}")]
    Ingest { line: usize, msg: String },

    /// Tensor or vector dimension mismatch.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// A loss or intermediate value became non-finite or exceeded the guard threshold.
    #[error("numerical divergence: {0}")]
    Divergence(String),

    /// Operation called on inputs that violate its preconditions.
    #[error("{0}")]
    InvalidInput(String),

    /// Checkpoint file is corrupt or has an unsupported version.
    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
