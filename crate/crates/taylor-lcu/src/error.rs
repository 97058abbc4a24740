//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A caller-supplied value violates a precondition (non-finite entries,
    /// dimension mismatch, non-Hermitian input, bad budget, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An instance document fails its schema; `path` points at the offending
    /// field (e.g. `terms[2].alpha`).
    #[error("parse error at {path}: {reason}")]
    Parse { path: String, reason: String },

    /// The instance would exceed a hard resource guard (word count, ancilla
    /// dimension, correction order).
    #[error("instance too large: {0}")]
    TooLarge(String),

    /// The schedule cannot satisfy its own invariants (segment weight above 2,
    /// correction weight above 2, segment count too small).
    #[error("infeasible plan: {0}")]
    InfeasiblePlan(String),

    /// A proved inequality failed on measured data. This signals a bug in the
    /// engine (or an input that slipped past validation), never a user error.
    #[error("consistency check failed in {stage}: {details}")]
    Consistency { stage: String, details: String },

    /// Floating-point breakdown (overflow to inf/NaN mid-computation).
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn consistency(stage: &str, details: impl Into<String>) -> Self {
        Error::Consistency {
            stage: stage.to_string(),
            details: details.into(),
        }
    }
}
