//! Error types shared by all modules.

use thiserror::Error;

/// Invalid physical input (a precondition of an operation was violated).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ValidationError {
    #[error("{field}: {reason}")]
    Invalid { field: String, reason: String },
}

impl ValidationError {
    pub fn new(field: impl Into<String>, reason: impl Into<String>) -> Self {
        ValidationError::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Name of the offending input.
    pub fn field(&self) -> &str {
        match self {
            ValidationError::Invalid { field, .. } => field,
        }
    }
}

/// Failure of a numerical routine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericalError {
    #[error("matrix is not Hermitian: relative defect {defect:.3e} exceeds {tolerance:.1e}")]
    NotHermitian { defect: f64, tolerance: f64 },
    #[error("eigenvalue {index} (E = {energy} meV) has no degenerate partner")]
    UnpairedEigenvalue { index: usize, energy: f64 },
    #[error("eigenvector gauge mismatch: imaginary residual {residual:.3e}")]
    GaugeMismatch { residual: f64 },
    #[error("{0}")]
    Other(String),
}

/// Top-level error.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("validation failed: {0}")]
    Validation(#[from] ValidationError),
    #[error("numerical failure: {0}")]
    Numerical(#[from] NumericalError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Returns a validation error unless `value` is finite.
pub(crate) fn require_finite(field: &str, value: f64) -> Result<(), ValidationError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(ValidationError::new(field, "must be finite"))
    }
}
