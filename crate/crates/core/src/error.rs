//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad values handed to an operation (non-finite input, unknown class, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configuration or spec violates its invariants.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// A batch is too small or inconsistent for the requested operation.
    #[error("invalid batch: {0}")]
    InvalidBatch(String),

    /// A stateful component has not accumulated enough data yet.
    #[error("not ready: {0}")]
    NotReady(String),

    /// Graph construction failed (shape mismatch, bad node reference).
    #[error("graph construction: {0}")]
    Graph(String),

    /// A forward or backward pass produced a non-finite value.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// An on-disk artifact is malformed.
    #[error("format error at byte {offset}: {msg}")]
    Format { offset: u64, msg: String },

    /// Checkpoint and configuration disagree (dimensions, class count, ...).
    #[error("incompatible: {0}")]
    Incompatible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 config, 3 numerical, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::InvalidSpec(_)
            | Error::InvalidBatch(_)
            | Error::NotReady(_)
            | Error::Graph(_)
            | Error::Incompatible(_) => 2,
            Error::Numerical(_) => 3,
            Error::Format { .. } | Error::Io(_) => 4,
        }
    }
}
