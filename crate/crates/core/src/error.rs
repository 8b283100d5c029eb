//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has a non-finite entry at ({row},{col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error(
        "matrix is not positive definite: min eigenvalue {min_eig:e} under floor {floor:e}"
    )]
    NotPositiveDefinite { min_eig: f64, floor: f64 },

    /// Eigen-solver non-convergence; carries the offending matrix
    /// (row-major) for diagnosis.
    #[error("symmetric eigen-solver failed to converge on a {dim}x{dim} matrix")]
    EigenFailure { dim: usize, entries: Vec<f64> },

    #[error("congruence factor is singular")]
    SingularFactor,

    #[error("scalar function undefined at eigenvalue {at}")]
    Domain { at: f64 },

    #[error("invalid parameter {name}={value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("function class mismatch: {required} required, got {got}")]
    FunctionClass {
        required: &'static str,
        got: &'static str,
    },

    #[error("chain needs at least two terms, got {got}")]
    ChainTooShort { got: usize },

    #[error("matrix lists must be non-empty and of equal length ({left} vs {right})")]
    ListMismatch { left: usize, right: usize },

    #[error("positive map `{map}` produced a non positive definite image")]
    MapImage { map: String },

    #[error("invalid matrix literal: {0}")]
    Literal(String),

    #[error("invalid spec string `{spec}` at segment {segment}: {reason}")]
    SpecParse {
        spec: String,
        segment: usize,
        reason: String,
    },
}
