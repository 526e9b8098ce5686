use curvature::check_cd;
use frustration_cheeger::{cheeger_constants, EnumerationMode};
use graph_core::{Field, SignedGraph};
use operators::DimensionParam;

use crate::corpus::all_minus_cycle;
use crate::error::VerifyError;
use crate::report::VerificationReport;
use crate::spectrum::{graph_spectrum, ZERO_THRESHOLD};

/// Explicit constant for the eigenvalue ratio bound: the chain of estimates
/// behind it produces 64 sqrt(2 log 2), and squaring gives 8192 log 2.
pub const RATIO_CONSTANT: f64 = 8192.0;

/// Eigenvalue ratio bounds for sign-valued (O(1)) signatures. Two families
/// per k:
///
///   h_1 <= 16 sqrt(2 D_non) k lambda_1 / sqrt(lambda_k)        (quoted bound)
///   lambda_k <= 8192 log(2) D_nor D_non k^2 lambda_1           (ratio bound)
///
/// The ratio bound needs nonnegative curvature and a nonzero lambda_1; on
/// balanced graphs it degenerates and is reported as skipped.
pub fn verify_eigenvalue_ratio(
    g: &SignedGraph,
    label: &str,
    k_max: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    if g.dim() != 1 || g.field() != Field::Real {
        return Err(VerifyError::BackendUnsupported {
            check: "ratio",
            detail: format!(
                "{label} carries a {}-dimensional {} signature; the ratio bounds cover sign signatures only",
                g.dim(),
                match g.field() {
                    Field::Real => "real",
                    Field::Complex => "complex",
                }
            ),
        });
    }
    let holds = check_cd(g, 0.0, DimensionParam::Infinite)?;
    if !holds.iter().all(|&ok| ok) {
        return Err(VerifyError::PreconditionFailed {
            check: "ratio",
            detail: format!("{label} does not satisfy the nonnegative curvature bound"),
        });
    }
    let mut report = VerificationReport::new("ratio", seed, tol);
    let constants = g.degree_constants();
    let spectrum = graph_spectrum(g)?;
    let lambda1 = spectrum[0].max(0.0);
    let h1 = cheeger_constants(g, 1, EnumerationMode::ConnectedEnum)?[0].value;
    let k_max = k_max.min(g.n());
    for k in 1..=k_max {
        let lambda_k = spectrum[k - 1].max(0.0);
        if lambda_k > ZERO_THRESHOLD {
            report.push_le(
                format!("{label}: expansion vs ratio, k={k}"),
                k,
                h1,
                16.0 * (2.0 * constants.d_non).sqrt() * k as f64 * lambda1 / lambda_k.sqrt(),
            );
        } else {
            // lambda_k = 0 forces lambda_1 = 0, hence a balanced graph and
            // h_1 = 0: the quoted bound holds as 0 <= 0.
            report.push_le(format!("{label}: expansion vs ratio, k={k}"), k, h1, 0.0);
        }
        if lambda1 > ZERO_THRESHOLD {
            report.push_le(
                format!("{label}: eigenvalue ratio, k={k}"),
                k,
                lambda_k,
                RATIO_CONSTANT
                    * std::f64::consts::LN_2
                    * constants.d_nor
                    * constants.d_non
                    * (k * k) as f64
                    * lambda1,
            );
        } else {
            report.push_skipped(format!("{label}: eigenvalue ratio, k={k}"), k, "balanced");
        }
    }
    Ok(report)
}

/// Dual expansion bound on cycles: flipping every edge sign of an unweighted
/// cycle (measure = degree) reflects the spectrum, so the top unsigned
/// eigenvalue obeys
///
///   2 - lambda_max <= 16 log(2) D (h_1^flip)^2,
///
/// where D = D_nor = 2 and h_1^flip is the expansion constant of the
/// all-minus cycle. The reflection identity itself is verified exactly.
pub fn verify_dual_buser(
    lengths: &[usize],
    seed: u64,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new("dual-buser", seed, tol);
    for &n in lengths {
        let flipped = all_minus_cycle(n);
        let holds = check_cd(&flipped, 0.0, DimensionParam::Infinite)?;
        if !holds.iter().all(|&ok| ok) {
            return Err(VerifyError::PreconditionFailed {
                check: "dual-buser",
                detail: format!("all-minus C{n} does not satisfy the nonnegative curvature bound"),
            });
        }
        let plain = graph_core::standard::signed_cycle(n, num_complex::Complex64::new(1.0, 0.0), 2.0);
        let lambda_max = *graph_spectrum(&plain)?
            .last()
            .expect("cycles have nonempty spectra");
        let lambda1_flip = graph_spectrum(&flipped)?[0].max(0.0);
        report.push_eq(
            format!("C{n}: spectral reflection"),
            0,
            lambda1_flip,
            2.0 - lambda_max,
        );
        let d_nor = flipped.degree_constants().d_nor;
        let h1 = cheeger_constants(&flipped, 1, EnumerationMode::ConnectedEnum)?[0].value;
        report.push_le(
            format!("C{n}: dual expansion bound"),
            1,
            2.0 - lambda_max,
            16.0 * std::f64::consts::LN_2 * d_nor * h1 * h1,
        );
    }
    Ok(report)
}
