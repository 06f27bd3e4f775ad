use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("occupation out of range: {field} = {value} exceeds truncation n_max = {n_max}")]
    OutOfBounds {
        field: &'static str,
        value: usize,
        n_max: usize,
    },

    #[error("flat index {index} out of range for dimension {dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },

    #[error("invalid argument: {0}")]
    Domain(String),

    /// tanh r = 1: the squeezed series does not converge at any truncation.
    #[error("singular limit m*Omega = 0: use the analytic limit (negativity 0) instead of a truncated state")]
    SingularLimit,

    #[error("shape mismatch: expected {expected}x{expected} matrix, got {rows}x{cols}")]
    Shape {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("matrix is not symmetric: |a[{row},{col}] - a[{col},{row}]| = {deviation:e}")]
    NotSymmetric {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("Gamma function pole at z = {0}")]
    GammaPole(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
