use thiserror::Error;

/// Errors produced while assembling or applying graph operators.
#[derive(Debug, Error)]
pub enum OperatorError {
    /// A vector field's shape does not match the graph it is used with.
    #[error("field has {found} entries but the graph needs {expected} (n * d)")]
    FieldShape { expected: usize, found: usize },

    /// A vertex index is outside the graph.
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    /// A finite dimension parameter must be strictly positive.
    #[error("dimension parameter must be positive, got {0}")]
    NonPositiveDimension(f64),

    #[error(transparent)]
    Linalg(#[from] linalg_kernel::LinalgError),
}
