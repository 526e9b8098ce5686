//! The two ell-1 estimates behind the Buser inequality: the semigroup moves
//! a field by at most sqrt(2t) times the ell-1 mass of its gradient, and
//! that gradient mass is controlled by the edge differences.

use curvature::check_cd;
use graph_core::SignedGraph;
use num_complex::Complex64;
use operators::{gamma_field, DimensionParam, VectorField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cd_check::random_field;
use crate::error::SemigroupError;
use crate::heat::heat_operator;

/// Relative slack allowed on both estimates.
pub const ELL1_TOLERANCE: f64 = 1e-8;

/// Worst relative slacks over the sampled fields: positive means the
/// inequality was violated beyond roundoff.
#[derive(Debug, Clone, Serialize)]
pub struct Ell1Report {
    pub t: f64,
    pub fields: usize,
    pub contraction_violation: f64,
    pub gradient_mass_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks, on seeded random fields, that ||f - P_t f||_1 stays below
/// sqrt(2t) ||sqrt(Gamma(f))||_1 (this needs nonnegative curvature, checked
/// first) and that ||sqrt(Gamma(f))||_1 stays below sqrt(2 D_nor) times the
/// summed edge differences.
pub fn check_ell1_contraction(
    graph: &SignedGraph,
    t: f64,
    fields: usize,
    seed: u64,
) -> Result<Ell1Report, SemigroupError> {
    let holds = check_cd(graph, 0.0, DimensionParam::Infinite)?;
    if !holds.iter().all(|&ok| ok) {
        return Err(SemigroupError::PreconditionFailed { kappa: 0.0 });
    }

    let op = heat_operator(graph, t, true)?;
    let d_nor = graph.degree_constants().d_nor;

    let mut contraction_violation = f64::NEG_INFINITY;
    let mut gradient_mass_violation = f64::NEG_INFINITY;

    for fi in 0..fields {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(fi as u64));
        let f = random_field(graph, &mut rng);

        let gamma_mass = sqrt_gamma_ell1(graph, &f)?;

        let pt_f = op.apply_field(&f)?;
        let diff = VectorField::from_fn(graph.n(), graph.dim(), |x, i| {
            f.at(x)[i] - pt_f.at(x)[i]
        });
        let moved = diff.lp_norm(graph, 1.0);
        let contraction_bound = (2.0 * t).sqrt() * gamma_mass;
        contraction_violation =
            contraction_violation.max(relative_slack(moved, contraction_bound));

        let mut edge_mass = 0.0;
        for edge in graph.edges() {
            let sigma = edge.sigma.entries();
            let transported = sigma.mul_vec(f.at(edge.v))?;
            let norm_sq: f64 = transported
                .iter()
                .zip(f.at(edge.u))
                .map(|(a, b)| (a - b).norm_sqr())
                .sum();
            edge_mass += edge.weight * norm_sq.sqrt();
        }
        let mass_bound = (2.0 * d_nor).sqrt() * edge_mass;
        gradient_mass_violation =
            gradient_mass_violation.max(relative_slack(gamma_mass, mass_bound));
    }

    let pass =
        contraction_violation <= ELL1_TOLERANCE && gradient_mass_violation <= ELL1_TOLERANCE;
    Ok(Ell1Report {
        t,
        fields,
        contraction_violation,
        gradient_mass_violation,
        tolerance: ELL1_TOLERANCE,
        pass,
    })
}

/// The measure-weighted ell-1 norm of sqrt(Gamma(f)).
fn sqrt_gamma_ell1(graph: &SignedGraph, f: &VectorField) -> Result<f64, SemigroupError> {
    let gamma: Vec<Complex64> = gamma_field(graph, f, f)?;
    Ok((0..graph.n())
        .map(|x| graph.measure(x) * gamma[x].re.max(0.0).sqrt())
        .sum())
}

fn relative_slack(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs) / rhs.abs().max(1.0)
}
