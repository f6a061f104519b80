//! Shared error type for the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Tensor or weight shape does not match what the operation requires.
    #[error("shape mismatch: expected {expected}, got {actual}")]
    Shape { expected: String, actual: String },

    /// Non-finite values or other numeric contract violations.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Checkpoint / tokenizer loading failure.
    #[error("load error: {0}")]
    Load(String),

    /// Text-format parse failure with a 1-based line number.
    #[error("parse error at line {line}: {msg}")]
    ParseLine { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("out of range: {0}")]
    Range(String),

    /// Requested data was not captured in the trace.
    #[error("state error: {0}")]
    State(String),

    /// Token spans could not be aligned with the tokenization.
    #[error("span error: {0}")]
    Span(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("fit did not converge: {0}")]
    NonConvergence(String),

    /// A pipeline stage was requested before the stage it depends on.
    #[error("missing stage dependency: {0}")]
    Dependency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
