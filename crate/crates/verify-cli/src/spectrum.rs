use graph_core::SignedGraph;
use operators::ConnectionLaplacian;

use crate::error::VerifyError;

/// Eigenvalues below this are treated as zero when looking for the first
/// nonzero eigenvalue.
pub const ZERO_THRESHOLD: f64 = 1e-8;

/// Ascending eigenvalues of minus the connection Laplacian. All lie in
/// [0, 2 D_non] up to roundoff.
pub fn graph_spectrum(g: &SignedGraph) -> Result<Vec<f64>, VerifyError> {
    let lap = ConnectionLaplacian::assemble(g);
    Ok(lap.eigen()?.eigenvalues)
}

/// The smallest eigenvalue above [`ZERO_THRESHOLD`], or an error when the
/// whole spectrum is numerically zero. The boolean flags a near-threshold
/// value (within a decade of the cut), where "first nonzero" is a fragile
/// label: callers should report the flag rather than silently classify.
pub fn first_nonzero(spectrum: &[f64], graph_id: &str) -> Result<(f64, bool), VerifyError> {
    let value = spectrum.iter().copied().find(|&v| v > ZERO_THRESHOLD);
    match value {
        Some(v) => Ok((v, v <= ZERO_THRESHOLD * 10.0)),
        None => Err(VerifyError::AllZeroSpectrum {
            id: graph_id.to_string(),
            threshold: ZERO_THRESHOLD,
        }),
    }
}
