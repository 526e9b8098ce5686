//! Curvature lower bounds for signed graphs.
//!
//! The bound K_n at a vertex is the largest K making the local matrix
//! Gamma2(x) - (1/n) * Laplacian-square term - K * Gamma(x) positive
//! semidefinite; since Gamma(x) is itself positive semidefinite the feasible
//! set is a half-line and bisection finds its endpoint. Graph-level bounds
//! take the vertex minimum, in parallel when the `parallel` feature (default
//! on) is enabled.

mod bisection;
mod error;
mod formula;
mod report;

pub use bisection::{
    check_cd, vertex_curvature, vertex_curvature_with_bracket, VertexCurvature,
    DEFAULT_TOLERANCE, PSD_TOLERANCE,
};
pub use error::CurvatureError;
pub use formula::cycle_curvature_formula;
pub use report::{graph_curvature, graph_curvature_sequential, CurvatureReport};
