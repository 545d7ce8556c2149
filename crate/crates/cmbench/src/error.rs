//! Error type shared across the toolkit.

use thiserror::Error;

/// Toolkit-wide error. `Validation` maps to CLI exit code 1,
/// everything numerical to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation: {0}")]
    Validation(String),

    #[error("non-finite value in {context} at `{label}`")]
    NonFinite { context: String, label: String },

    #[error("{context}: did not converge after {iterations} iterations (worst residual {residual:.3e} at `{label}`)")]
    Convergence {
        context: String,
        iterations: usize,
        residual: f64,
        label: String,
    },

    #[error("numerical: {0}")]
    Numerical(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    /// Stable machine-parsable code used in CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Validation(_) => "validation",
            Error::NonFinite { .. } => "non_finite",
            Error::Convergence { .. } => "no_convergence",
            Error::Numerical(_) => "numerical",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    /// CLI exit code: 1 for validation/input problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Io(_) | Error::Json(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
