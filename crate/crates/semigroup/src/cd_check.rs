//! Semigroup-side consequences of the curvature-dimension inequality: the
//! gradient bound Gamma(P_t f) <= e^{-2Kt} P_t(Gamma(f)) and the variance
//! bound P_t(|f|^2) - |P_t f|^2 >= c_K(t) Gamma(P_t f), both checked
//! pointwise on sampled fields after asserting the curvature hypothesis.

use curvature::check_cd;
use graph_core::{Field, SignedGraph};
use num_complex::Complex64;
use operators::{gamma_field, DimensionParam, VectorField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::SemigroupError;
use crate::heat::heat_operator;

/// Slack allowed on the pointwise inequalities.
pub const CD_CHECK_TOLERANCE: f64 = 1e-8;

/// Worst slacks found while testing the two semigroup inequalities implied
/// by the curvature bound. `gradient_violation` is the largest value of
/// lhs - rhs for the gradient bound (nonpositive when the inequality holds
/// exactly), `variance_violation` the same for the variance bound.
#[derive(Debug, Clone, Serialize)]
pub struct SemigroupCdReport {
    pub kappa: f64,
    pub t_samples: Vec<f64>,
    pub fields_per_t: usize,
    pub gradient_violation: f64,
    pub variance_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks the two semigroup inequalities at each sampled time on seeded
/// random fields, after verifying that the graph satisfies the curvature
/// bound `kappa` at infinite dimension; the hypothesis failing is an error,
/// not a failed check, because the inequalities are implications.
pub fn check_semigroup_cd(
    graph: &SignedGraph,
    kappa: f64,
    t_samples: &[f64],
    fields_per_t: usize,
    seed: u64,
) -> Result<SemigroupCdReport, SemigroupError> {
    let holds = check_cd(graph, kappa, DimensionParam::Infinite)?;
    if !holds.iter().all(|&ok| ok) {
        return Err(SemigroupError::PreconditionFailed { kappa });
    }

    let mut gradient_violation = f64::NEG_INFINITY;
    let mut variance_violation = f64::NEG_INFINITY;

    for (ti, &t) in t_samples.iter().enumerate() {
        let signed_op = heat_operator(graph, t, true)?;
        let scalar_op = heat_operator(graph, t, false)?;
        let decay = (-2.0 * kappa * t).exp();
        let variance_factor = if kappa != 0.0 {
            ((2.0 * kappa * t).exp() - 1.0) / kappa
        } else {
            2.0 * t
        };
        for fi in 0..fields_per_t {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (ti as u64).wrapping_mul(0x9E37_79B9) ^ fi as u64);
            let f = random_field(graph, &mut rng);

            let gamma_f = gamma_field(graph, &f, &f)?;
            let pt_f = signed_op.apply_field(&f)?;
            let gamma_pt_f = gamma_field(graph, &pt_f, &pt_f)?;
            let pt_gamma_f = scalar_op.apply_scalar(&gamma_f)?;

            let norms_sq: Vec<Complex64> = (0..graph.n())
                .map(|x| Complex64::new(f.norm_at(x).powi(2), 0.0))
                .collect();
            let pt_norms_sq = scalar_op.apply_scalar(&norms_sq)?;

            for x in 0..graph.n() {
                let gradient_slack = gamma_pt_f[x].re - decay * pt_gamma_f[x].re;
                gradient_violation = gradient_violation.max(gradient_slack);

                let variance = pt_norms_sq[x].re - pt_f.norm_at(x).powi(2);
                let variance_slack = variance_factor * gamma_pt_f[x].re - variance;
                variance_violation = variance_violation.max(variance_slack);
            }
        }
    }

    let pass = gradient_violation <= CD_CHECK_TOLERANCE && variance_violation <= CD_CHECK_TOLERANCE;
    Ok(SemigroupCdReport {
        kappa,
        t_samples: t_samples.to_vec(),
        fields_per_t,
        gradient_violation,
        variance_violation,
        tolerance: CD_CHECK_TOLERANCE,
        pass,
    })
}

/// A random vector field with entries in the square [-1, 1] (real axis only
/// when the graph is real).
pub fn random_field(graph: &SignedGraph, rng: &mut impl Rng) -> VectorField {
    let complex = graph.field() == Field::Complex;
    VectorField::from_fn(graph.n(), graph.dim(), |_, _| {
        let re = rng.gen_range(-1.0..1.0);
        let im = if complex { rng.gen_range(-1.0..1.0) } else { 0.0 };
        Complex64::new(re, im)
    })
}
