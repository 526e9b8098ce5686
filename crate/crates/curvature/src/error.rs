use thiserror::Error;

/// Failures while locating a curvature bound.
#[derive(Debug, Error)]
pub enum CurvatureError {
    /// Feasibility never stopped while pushing the upper bracket end up;
    /// only isolated vertices should be unbounded, and those are reported
    /// through the infinity sentinel instead of this error.
    #[error("curvature at vertex {vertex} appears unbounded above")]
    Unbounded { vertex: usize },

    /// The guaranteed lower bracket end is infeasible beyond tolerance. For
    /// dimension parameter >= 2 that contradicts the universal bound and
    /// signals a kernel-direction violation; for smaller parameters it means
    /// no feasible curvature was found within the search budget.
    #[error("matrix inequality infeasible at vertex {vertex} even at K = {kappa}")]
    InfeasibleBracket { vertex: usize, kappa: f64 },

    #[error(transparent)]
    Operator(#[from] operators::OperatorError),

    #[error(transparent)]
    Linalg(#[from] linalg_kernel::LinalgError),
}
