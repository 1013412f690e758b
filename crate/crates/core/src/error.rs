use thiserror::Error;

/// Errors raised by the operators, lifts and solvers in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplitError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("block count mismatch: expected {expected} blocks, found {found}")]
    BlockCount { expected: usize, found: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("index {index:?} out of range for shape {shape:?}")]
    IndexOutOfRange {
        index: Vec<usize>,
        shape: Vec<usize>,
    },

    #[error("linear system is singular")]
    Singular,

    #[error("inconsistent sudoku givens: {0}")]
    InconsistentGivens(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SplitError>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(SplitError::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub(crate) fn check_finite(xs: &[f64]) -> Result<()> {
    match xs.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(SplitError::NonFinite { index }),
        None => Ok(()),
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(SplitError::InvalidParameter {
            name,
            reason: format!("must be a positive finite number, got {value}"),
        });
    }
    Ok(())
}
