use crate::bisection::{vertex_curvature_with_bracket, VertexCurvature};
use crate::error::CurvatureError;
use graph_core::SignedGraph;
use operators::DimensionParam;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Curvature bounds for a whole graph: one value per vertex and their
/// minimum, which is the graph-level bound.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub n: DimensionParam,
    pub tolerance: f64,
    pub vertices: Vec<VertexCurvature>,
    pub global: f64,
}

impl CurvatureReport {
    pub fn vertex(&self, x: usize) -> f64 {
        self.vertices[x].kappa
    }
}

fn assemble(
    n: DimensionParam,
    tol: f64,
    vertices: Vec<VertexCurvature>,
) -> CurvatureReport {
    let global = vertices
        .iter()
        .map(|v| v.kappa)
        .fold(f64::INFINITY, f64::min);
    CurvatureReport {
        n,
        tolerance: tol,
        vertices,
        global,
    }
}

/// Curvature of every vertex plus the graph minimum. With the `parallel`
/// feature the per-vertex searches run data-parallel; the report is
/// deterministic either way.
pub fn graph_curvature(
    graph: &SignedGraph,
    n: DimensionParam,
    tol: f64,
) -> Result<CurvatureReport, CurvatureError> {
    #[cfg(feature = "parallel")]
    {
        let vertices = (0..graph.n())
            .into_par_iter()
            .map(|x| vertex_curvature_with_bracket(graph, x, n, tol))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(assemble(n, tol, vertices))
    }
    #[cfg(not(feature = "parallel"))]
    {
        graph_curvature_sequential(graph, n, tol)
    }
}

/// Single-threaded variant of [`graph_curvature`]; the two agree exactly.
pub fn graph_curvature_sequential(
    graph: &SignedGraph,
    n: DimensionParam,
    tol: f64,
) -> Result<CurvatureReport, CurvatureError> {
    let vertices = (0..graph.n())
        .map(|x| vertex_curvature_with_bracket(graph, x, n, tol))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble(n, tol, vertices))
}
