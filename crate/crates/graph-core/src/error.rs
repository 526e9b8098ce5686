use linalg_kernel::LinalgError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("signature on edge {{{u},{v}}} is not unitary: defect {defect:.3e} exceeds {tolerance:.3e}")]
    NonUnitary {
        u: String,
        v: String,
        defect: f64,
        tolerance: f64,
    },

    #[error("edge {{{u},{v}}} carries complex entries but the graph field is real")]
    RealFieldComplexEntry { u: String, v: String },

    #[error("edge {{{u},{v}}} has non-positive weight {weight}")]
    NonPositiveWeight { u: String, v: String, weight: f64 },

    #[error("vertex {id} has non-positive measure {measure}")]
    NonPositiveMeasure { id: String, measure: f64 },

    #[error("edge {{{u},{v}}} appears more than once")]
    DuplicateEdge { u: String, v: String },

    #[error("self-loop at vertex {id}")]
    SelfLoop { id: String },

    #[error("vertex id {id} appears more than once")]
    DuplicateVertex { id: String },

    #[error("edge references unknown vertex {id}")]
    UnknownVertex { id: String },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("vertex sequence is not a cycle: {reason}")]
    NotACycle { reason: String },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("json: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("linear algebra: {0}")]
    Linalg(#[from] LinalgError),
}
