use curvature::graph_curvature;
use frustration_cheeger::{
    auto_backend, boundary_measure, candidate_subsets, cheeger_tilde1, frustration_index,
    frustration_index_with_starts, subset_measure, EnumerationMode, FrustrationBackend,
    FrustrationVariant, MatrixNorm,
};
use graph_core::SignedGraph;
use operators::DimensionParam;

use crate::error::VerifyError;
use crate::report::VerificationReport;
use crate::spectrum::graph_spectrum;

const CURVATURE_TOL: f64 = 1e-9;

/// Two-sided control of the bottom eigenvalue by the relaxed one-way
/// expansion constant:
///
///   (2 / (5 D_non)) h~_1^2  <=  lambda_1  <=  2 h~_1.
pub fn verify_cheeger(
    g: &SignedGraph,
    label: &str,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new("cheeger", seed, tol);
    let lambda1 = graph_spectrum(g)?[0].max(0.0);
    let h_tilde = cheeger_tilde1(g)?;
    let d_non = g.degree_constants().d_non;
    report.push_le(
        format!("{label}: expansion lower bound"),
        1,
        2.0 / (5.0 * d_non) * h_tilde * h_tilde,
        lambda1,
    );
    report.push_le(format!("{label}: expansion upper bound"), 1, lambda1, 2.0 * h_tilde);
    Ok(report)
}

/// Relaxed frustration of one subset: exact in dimension one, and the
/// better of the local optimizer's switching and unit-vector estimates in
/// higher dimension (the relaxation is seeded with the switching witness so
/// it can only improve on it).
fn subset_iota_tilde(g: &SignedGraph, subset: &[usize]) -> Result<f64, VerifyError> {
    if g.dim() == 1 {
        Ok(frustration_index(
            g,
            subset,
            MatrixNorm::Average21,
            FrustrationVariant::UnitVector,
            auto_backend(g),
        )?
        .value)
    } else {
        let switching = frustration_index(
            g,
            subset,
            MatrixNorm::Average21,
            FrustrationVariant::Switching,
            FrustrationBackend::LocalOpt,
        )?;
        let relaxed = frustration_index_with_starts(
            g,
            subset,
            MatrixNorm::Average21,
            FrustrationVariant::UnitVector,
            FrustrationBackend::LocalOpt,
            std::slice::from_ref(&switching.witness),
        )?;
        Ok(relaxed.value.min(switching.value))
    }
}

/// Isoperimetry from curvature: with K = max(0, -K_infinity) the bound
///
///   iota~(S) + |E(S, S^c)|  >=  c(lambda_1, K) mu(S) / (2 sqrt(2 D_nor))
///
/// holds for every nonempty subset S, where c takes the minimum of
/// (1 - 1/e) sqrt(lambda_1) and lambda_1 / (2 sqrt(2K)) (the second branch
/// drops out at K = 0). The final instance is the spectral-gap consequence
///
///   lambda_1 <= 8 max{ (e/(e-1))^2 D_nor h~_1^2, sqrt(D_nor K) h~_1 }.
pub fn verify_isoperimetry(
    g: &SignedGraph,
    label: &str,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new("isoperimetry", seed, tol);
    let lambda1 = graph_spectrum(g)?[0].max(0.0);
    let kappa = graph_curvature(g, DimensionParam::Infinite, CURVATURE_TOL)?.global;
    let k_minus = (-kappa).max(0.0);
    let d_nor = g.degree_constants().d_nor;
    let first_branch = (1.0 - (-1.0f64).exp()) * lambda1.sqrt();
    let rate = if k_minus > 0.0 {
        first_branch.min(lambda1 / (2.0 * (2.0 * k_minus).sqrt()))
    } else {
        first_branch
    };
    let factor = rate / (2.0 * (2.0 * d_nor).sqrt());

    let mut h_tilde = f64::INFINITY;
    for subset in candidate_subsets(g, EnumerationMode::AllEnum, None)? {
        let iota = subset_iota_tilde(g, &subset)?;
        let boundary = boundary_measure(g, &subset)?;
        let measure = subset_measure(g, &subset)?;
        h_tilde = h_tilde.min((iota + boundary) / measure);
        let ids: Vec<&str> = subset.iter().map(|&x| g.id_of(x)).collect();
        report.push_le(
            format!("{label}: S={{{}}}", ids.join(",")),
            0,
            factor * measure,
            iota + boundary,
        );
    }
    let gap_bound = 8.0
        * f64::max(
            (std::f64::consts::E / (std::f64::consts::E - 1.0)).powi(2) * d_nor * h_tilde * h_tilde,
            (d_nor * k_minus).sqrt() * h_tilde,
        );
    report.push_le(format!("{label}: gap from expansion"), 1, lambda1, gap_bound);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use graph_core::standard::{signed_cycle, triangle_with_twist};
    use num_complex::Complex64;

    #[test]
    fn twisted_triangles_obey_both_sides_across_the_sweep() {
        for i in 1..=6 {
            let theta = std::f64::consts::PI * i as f64 / 6.0;
            let g = triangle_with_twist(Complex64::from_polar(1.0, theta), 2.0);
            let report = verify_cheeger(&g, "t", 42, 1e-8).unwrap();
            assert!(report.pass, "failed at theta = {theta}");
            // In dimension one the relaxed constant is the plain one:
            // |s - 1| / 6 for the triangle.
            let h = (Complex64::from_polar(1.0, theta) - 1.0).norm() / 6.0;
            assert_abs_diff_eq!(report.instances[1].rhs, 2.0 * h, epsilon = 1e-9);
        }
    }

    #[test]
    fn balanced_graphs_collapse_to_equalities() {
        let g = signed_cycle(5, Complex64::new(1.0, 0.0), 2.0);
        let report = verify_cheeger(&g, "c5", 42, 1e-8).unwrap();
        assert!(report.pass);
        assert_abs_diff_eq!(report.instances[0].lhs, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.instances[1].lhs, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(report.instances[1].rhs, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn every_subset_of_the_flat_four_cycle_is_isoperimetric() {
        let g = signed_cycle(4, Complex64::new(-1.0, 0.0), 2.0);
        let report = verify_isoperimetry(&g, "c4", 42, 1e-8).unwrap();
        assert!(report.pass);
        // 15 nonempty subsets plus the spectral-gap consequence.
        assert_eq!(report.instances.len(), 16);
    }

    #[test]
    fn negative_curvature_activates_the_second_branch() {
        // A star with a heavy center is negatively curved; the bound must
        // still hold for every subset with the K-dependent rate.
        let g = SignedGraph::builder(1, graph_core::Field::Real)
            .vertex("c", 0.8)
            .vertex("a", 1.2)
            .vertex("b", 0.6)
            .vertex("d", 1.0)
            .edge("c", "a", 1.5, linalg_kernel::CMatrix::identity(1))
            .edge("c", "b", 0.7, linalg_kernel::CMatrix::identity(1))
            .edge("c", "d", 1.1, linalg_kernel::CMatrix::identity(1))
            .build()
            .unwrap();
        let kappa = graph_curvature(&g, DimensionParam::Infinite, 1e-9)
            .unwrap()
            .global;
        assert!(kappa < 0.0, "the example should be negatively curved");
        let report = verify_isoperimetry(&g, "star", 42, 1e-8).unwrap();
        assert!(report.pass);
    }
}
