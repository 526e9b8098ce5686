use curvature::graph_curvature;
use graph_core::SignedGraph;
use operators::DimensionParam;

use crate::error::VerifyError;
use crate::report::VerificationReport;
use crate::spectrum::{first_nonzero, graph_spectrum};

/// Bisection tolerance for the curvature bound entering the comparison.
const CURVATURE_TOL: f64 = 1e-9;

/// Spectral-gap lower bound from curvature: the first nonzero eigenvalue
/// satisfies ((n-1)/n) lambda >= K_n, with the factor read as 1 at
/// n = infinity. The curvature side is computed by bisection on the same
/// graph, so the check is self-contained.
pub fn verify_lichnerowicz(
    g: &SignedGraph,
    label: &str,
    ns: &[DimensionParam],
    seed: u64,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new("lichnerowicz", seed, tol);
    let spectrum = graph_spectrum(g)?;
    let (lambda, flagged) = first_nonzero(&spectrum, label)?;
    let suffix = if flagged { " (near-threshold)" } else { "" };
    for &n in ns {
        let factor = match n {
            DimensionParam::Finite(v) => (v - 1.0) / v,
            DimensionParam::Infinite => 1.0,
        };
        let kappa = graph_curvature(g, n, CURVATURE_TOL)?.global;
        let id = match n {
            DimensionParam::Finite(v) => format!("{label}: n={v}{suffix}"),
            DimensionParam::Infinite => format!("{label}: n=inf{suffix}"),
        };
        report.push_le(id, 0, kappa, factor * lambda);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use graph_core::standard::{signed_cycle, triangle_with_twist};
    use num_complex::Complex64;

    #[test]
    fn flat_triangle_has_gap_half_against_curvature_quarter() {
        let g = triangle_with_twist(Complex64::new(-1.0, 0.0), 2.0);
        let report =
            verify_lichnerowicz(&g, "t", &[DimensionParam::Infinite], 42, 1e-6).unwrap();
        assert!(report.pass);
        let inst = &report.instances[0];
        assert_abs_diff_eq!(inst.lhs, 0.25, epsilon = 1e-6);
        assert_abs_diff_eq!(inst.rhs, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn balanced_triangle_skips_the_zero_eigenvalue() {
        // Balanced: lambda_1 = 0 is skipped and the comparison uses the
        // first nonzero eigenvalue 3/2 against the jump value 5/4.
        let g = triangle_with_twist(Complex64::new(1.0, 0.0), 2.0);
        let report =
            verify_lichnerowicz(&g, "t", &[DimensionParam::Infinite], 42, 1e-6).unwrap();
        assert!(report.pass);
        let inst = &report.instances[0];
        assert_abs_diff_eq!(inst.lhs, 1.25, epsilon = 1e-6);
        assert_abs_diff_eq!(inst.rhs, 1.5, epsilon = 1e-9);
    }

    #[test]
    fn balanced_four_cycle_sits_at_equality() {
        let g = signed_cycle(4, Complex64::new(1.0, 0.0), 2.0);
        let report =
            verify_lichnerowicz(&g, "c4", &[DimensionParam::Infinite], 42, 1e-6).unwrap();
        assert!(report.pass);
        let inst = &report.instances[0];
        assert_abs_diff_eq!(inst.lhs, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(inst.rhs, 1.0, epsilon = 1e-9);
        assert!(inst.slack.abs() < 1e-6, "equality case has no room");
    }

    #[test]
    fn finite_dimension_scales_the_eigenvalue_factor() {
        let g = triangle_with_twist(Complex64::new(0.0, 1.0), 2.0);
        let ns = [DimensionParam::Finite(2.0), DimensionParam::Infinite];
        let report = verify_lichnerowicz(&g, "t", &ns, 42, 1e-6).unwrap();
        assert!(report.pass);
        assert_abs_diff_eq!(
            report.instances[0].rhs,
            report.instances[1].rhs / 2.0,
            epsilon = 1e-12
        );
        // K_2 <= K_infinity, both below their eigenvalue sides.
        assert!(report.instances[0].lhs <= report.instances[1].lhs + 1e-9);
    }
}
