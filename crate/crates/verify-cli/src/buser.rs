use curvature::check_cd;
use frustration_cheeger::{cheeger_constants, EnumerationMode};
use graph_core::SignedGraph;
use operators::DimensionParam;

use crate::error::VerifyError;
use crate::report::VerificationReport;
use crate::spectrum::graph_spectrum;

/// Eigenvalue bound by multi-way expansion under nonnegative curvature:
/// for each k up to `k_max`,
///
///   sqrt(lambda_{k d}) <= 4 sqrt(D_nor) * k d * sqrt(log(2 k d)) * h_k.
///
/// The nonnegative-curvature hypothesis is verified first and its failure is
/// an error, not a failing report.
pub fn verify_buser(
    g: &SignedGraph,
    label: &str,
    k_max: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    let holds = check_cd(g, 0.0, DimensionParam::Infinite)?;
    if !holds.iter().all(|&ok| ok) {
        return Err(VerifyError::PreconditionFailed {
            check: "buser",
            detail: format!("{label} does not satisfy the nonnegative curvature bound"),
        });
    }
    let mut report = VerificationReport::new("buser", seed, tol);
    let d = g.dim();
    let d_nor = g.degree_constants().d_nor;
    let spectrum = graph_spectrum(g)?;
    let k_max = k_max.min(g.n());
    let reports = cheeger_constants(g, k_max, EnumerationMode::ConnectedEnum)?;
    for entry in &reports {
        let k = entry.k;
        let kd = k * d;
        let lambda = spectrum[kd - 1].max(0.0);
        let rhs = 4.0 * d_nor.sqrt() * kd as f64 * (2.0 * kd as f64).ln().sqrt() * entry.value;
        report.push_le(format!("{label}: eigenvalue {kd} vs h_{k}"), k, lambda.sqrt(), rhs);
    }
    Ok(report)
}
