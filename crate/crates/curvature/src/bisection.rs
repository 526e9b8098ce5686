use crate::error::CurvatureError;
use graph_core::SignedGraph;
use linalg_kernel::{is_psd, HermitianMatrix};
use operators::{local_blocks, DimensionParam, LocalOperatorBlocks};

/// Eigenvalue slack accepted as positive semidefinite inside the feasibility
/// oracle.
pub const PSD_TOLERANCE: f64 = 1e-9;

/// Default width at which the bisection bracket stops shrinking.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

const MAX_BRACKET_GROWTH: usize = 60;

/// A per-vertex curvature value together with the bracket that certified it:
/// the inequality is feasible at `bracket.0` and infeasible at `bracket.1`
/// (both within the working tolerances).
#[derive(Debug, Clone, Copy)]
pub struct VertexCurvature {
    pub vertex: usize,
    pub kappa: f64,
    pub bracket: (f64, f64),
}

pub(crate) fn feasible(blocks: &LocalOperatorBlocks, kappa: f64) -> Result<bool, CurvatureError> {
    let candidate = HermitianMatrix::symmetrize(blocks.cd_matrix(kappa))?;
    Ok(is_psd(&candidate, PSD_TOLERANCE)?)
}

/// The largest K (within `tol`) making the local curvature matrix positive
/// semidefinite at vertex `x`: the curvature bound K_n at that vertex.
///
/// Isolated vertices satisfy the inequality for every K and report positive
/// infinity. Everywhere else the value is found by monotone bisection, valid
/// because Gamma(x) is positive semidefinite, so feasibility is downward
/// closed in K.
pub fn vertex_curvature(
    graph: &SignedGraph,
    x: usize,
    n: DimensionParam,
    tol: f64,
) -> Result<f64, CurvatureError> {
    vertex_curvature_with_bracket(graph, x, n, tol).map(|v| v.kappa)
}

/// As [`vertex_curvature`], also reporting the final bracket.
pub fn vertex_curvature_with_bracket(
    graph: &SignedGraph,
    x: usize,
    n: DimensionParam,
    tol: f64,
) -> Result<VertexCurvature, CurvatureError> {
    if graph.neighbors(x).is_empty() {
        return Ok(VertexCurvature {
            vertex: x,
            kappa: f64::INFINITY,
            bracket: (f64::INFINITY, f64::INFINITY),
        });
    }

    let blocks = local_blocks(graph, x, n)?;
    let constants = graph.degree_constants();
    let guaranteed = 2.0 / constants.d_nor - constants.d_non;

    // Lower end: the universal curvature bound minus a margin. It is
    // guaranteed feasible for dimension parameter >= 2; below 2 the paper
    // offers no floor, so walk the end down geometrically.
    let mut lo = guaranteed - 1.0;
    if !feasible(&blocks, lo)? {
        let guaranteed_regime = match n {
            DimensionParam::Infinite => true,
            DimensionParam::Finite(v) => v >= 2.0,
        };
        if guaranteed_regime {
            return Err(CurvatureError::InfeasibleBracket { vertex: x, kappa: lo });
        }
        let mut step = 1.0;
        let mut found = false;
        for _ in 0..MAX_BRACKET_GROWTH {
            lo -= step;
            step *= 2.0;
            if feasible(&blocks, lo)? {
                found = true;
                break;
            }
        }
        if !found {
            return Err(CurvatureError::InfeasibleBracket { vertex: x, kappa: lo });
        }
    }

    // Upper end: start above twice the degree bound and double until the
    // inequality fails.
    let mut hi = 2.0 * constants.d_non + 1.0;
    let mut grew = 0usize;
    while feasible(&blocks, hi)? {
        hi *= 2.0;
        grew += 1;
        if grew > MAX_BRACKET_GROWTH {
            return Err(CurvatureError::Unbounded { vertex: x });
        }
    }

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if feasible(&blocks, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    Ok(VertexCurvature {
        vertex: x,
        kappa: lo,
        bracket: (lo, hi),
    })
}

/// CD(K, n) checked vertex by vertex: entry x is true when the local
/// curvature matrix at x is positive semidefinite at K.
pub fn check_cd(
    graph: &SignedGraph,
    kappa: f64,
    n: DimensionParam,
) -> Result<Vec<bool>, CurvatureError> {
    (0..graph.n())
        .map(|x| {
            let blocks = local_blocks(graph, x, n)?;
            feasible(&blocks, kappa)
        })
        .collect()
}
