//! Crate-wide error type.
//!
//! Errors split into two broad families that the CLI maps to distinct exit
//! codes: *validation* errors (malformed input, dimension mismatches, invalid
//! parameters — exit code 2) and *numerical* errors (iteration limits,
//! domain exhaustion, overflow — exit code 1).

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite coordinate at index {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("invalid error-bound spec: {0}")]
    InvalidEbf(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("unknown builtin instance `{0}`")]
    UnknownInstance(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    EigenNoConvergence { sweeps: usize, off_norm: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit code the CLI reports for this error: 2 for validation problems,
    /// 1 for numerical failures (including I/O, which is neither the user's
    /// config nor the math going wrong, but must not be confused with bad input).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. }
            | Error::NonFinite { .. }
            | Error::InvalidSet(_)
            | Error::InvalidEbf(_)
            | Error::InvalidSchedule(_)
            | Error::UnknownInstance(_)
            | Error::Unsupported(_)
            | Error::Json(_)
            | Error::Config(_) => 2,
            Error::Domain(_)
            | Error::Numerical(_)
            | Error::EigenNoConvergence { .. }
            | Error::Io(_) => 1,
        }
    }
}
