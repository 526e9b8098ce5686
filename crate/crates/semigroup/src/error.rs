use curvature::CurvatureError;
use linalg_kernel::LinalgError;
use operators::OperatorError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SemigroupError {
    /// Heat operators are only defined for nonnegative times.
    #[error("time must be nonnegative, got {0}")]
    NegativeTime(f64),
    /// A vector-field application was requested on a scalar operator or the
    /// other way around.
    #[error("operator kind mismatch: this operator is {actual}, not {expected}")]
    KindMismatch {
        expected: &'static str,
        actual: &'static str,
    },
    /// The input length does not match the operator.
    #[error("input has {got} entries, operator expects {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    /// The graph fails the curvature condition the check takes as a
    /// hypothesis, so the implication under test does not apply.
    #[error("graph does not satisfy the curvature bound {kappa} required by this check")]
    PreconditionFailed { kappa: f64 },
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
