use std::path::PathBuf;

use thiserror::Error;

use crate::dynamics::GmhdState;

pub type Result<T, E = GmhdError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum GmhdError {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("grid mismatch: {left} vs {right}")]
    GridMismatch { left: usize, right: usize },

    /// A non-finite value appeared during integration. Carries the last
    /// state that was entirely finite, if there was one.
    #[error("blow-up detected at t = {t}")]
    BlowUp {
        t: f64,
        last_valid: Option<Box<GmhdState>>,
    },

    #[error("snapshot format: {0}")]
    Format(String),

    #[error("config {path:?}: {msg}")]
    Config { path: PathBuf, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl GmhdError {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        GmhdError::Parameter(msg.into())
    }
}
