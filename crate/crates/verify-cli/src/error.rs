use curvature::CurvatureError;
use frustration_cheeger::FrustrationError;
use graph_core::GraphError;
use linalg_kernel::LinalgError;
use operators::OperatorError;
use products::ProductError;
use semigroup::SemigroupError;
use thiserror::Error;

/// Errors a verification run can surface. Unusable input and violated
/// hypotheses are errors; a finished check that found a counterexample is a
/// failing report instead.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("spectrum has no eigenvalue above {threshold:e} on {id}")]
    AllZeroSpectrum { id: String, threshold: f64 },
    #[error("parameter r = {0} outside the supported range (0, 0.85]")]
    OutOfRange(f64),
    #[error("check '{check}' does not support this graph: {detail}")]
    BackendUnsupported { check: &'static str, detail: String },
    #[error("hypothesis of '{check}' fails: {detail}")]
    PreconditionFailed { check: &'static str, detail: String },
    #[error("unknown check name '{0}'")]
    UnknownCheck(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Frustration(#[from] FrustrationError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}
