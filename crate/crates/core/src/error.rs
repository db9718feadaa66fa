use thiserror::Error;

use crate::half::Half;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid irrep ({n1}, {n2}): {reason}")]
    InvalidIrrep { n1: Half, n2: Half, reason: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("closure violation: {generator} maps {from} to {to}, which is not a basis state")]
    ClosureViolation { generator: &'static str, from: String, to: String },

    #[error("negative radicand {value:e} in {context}")]
    NegativeRadicand { context: String, value: f64 },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("{generator} expressions disagree by {residual:e} (tolerance {tolerance:e})")]
    Consistency { generator: &'static str, residual: f64, tolerance: f64 },

    #[error("series: {0}")]
    Series(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
