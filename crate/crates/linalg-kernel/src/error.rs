use thiserror::Error;

/// Errors produced by the dense kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left_rows}x{left_cols} against {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix deviates from Hermitian symmetry by {deviation:.3e} (tolerance {tolerance:.3e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("Jacobi sweep cap reached with off-diagonal mass {off_diag:.3e} still present")]
    NoConvergence { off_diag: f64 },

    #[error("empty matrix")]
    Empty,
}
