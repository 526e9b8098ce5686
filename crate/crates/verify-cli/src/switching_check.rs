use std::collections::BTreeMap;

use curvature::graph_curvature;
use frustration_cheeger::{
    auto_backend, cheeger_constants, frustration_index, frustration_index_with_starts,
    EnumerationMode, FrustrationBackend, FrustrationVariant, MatrixNorm,
};
use graph_core::{apply_switching, SignedGraph, SwitchingFunction};
use linalg_kernel::CMatrix;
use operators::DimensionParam;

use crate::corpus::{full_subset, switching_stream};
use crate::error::VerifyError;
use crate::report::VerificationReport;
use crate::spectrum::graph_spectrum;

/// Bisection tolerance for curvature invariance; a decade below the slack
/// tolerance so two independent bisections cannot disagree by more than the
/// reported tolerance.
const CURVATURE_TOL: f64 = 1e-10;

/// Dimension parameters exercised by the invariance check.
const DIMENSIONS: [DimensionParam; 2] = [DimensionParam::Finite(2.0), DimensionParam::Infinite];

fn transport_witness(
    witness: &BTreeMap<String, CMatrix>,
    tau: &SwitchingFunction,
    forward: bool,
) -> BTreeMap<String, CMatrix> {
    witness
        .iter()
        .map(|(id, block)| {
            let t = tau.get(id).expect("switching covers every vertex");
            let moved = if forward {
                t.inverse().entries().mul(block)
            } else {
                t.entries().mul(block)
            }
            .expect("dimensions agree");
            (id.clone(), moved)
        })
        .collect()
}

/// Conjugating the signature by vertex unitaries must leave the spectrum,
/// the vertex curvatures, the frustration index, and the expansion constants
/// unchanged. Spectra and curvatures are compared directly at every block
/// dimension. The frustration index in dimension one is exact and compared
/// directly; in higher dimension the optimizer's witness is transported to
/// the switched graph and back, and the check asserts the round trip is
/// stable and never improves on the original value.
pub fn verify_switching(
    g: &SignedGraph,
    label: &str,
    switch_count: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new("switching", seed, tol);
    let everything = full_subset(g);
    let base_spectrum = graph_spectrum(g)?;
    let mut base_curvatures = Vec::new();
    for n in DIMENSIONS {
        base_curvatures.push(graph_curvature(g, n, CURVATURE_TOL)?);
    }
    let exact = g.dim() == 1;
    let base_frustration = if exact {
        frustration_index(
            g,
            &everything,
            MatrixNorm::Average21,
            FrustrationVariant::Switching,
            auto_backend(g),
        )?
    } else {
        frustration_index(
            g,
            &everything,
            MatrixNorm::Average21,
            FrustrationVariant::Switching,
            FrustrationBackend::LocalOpt,
        )?
    };
    let base_cheeger = if exact {
        Some(cheeger_constants(g, 2, EnumerationMode::ConnectedEnum)?)
    } else {
        None
    };

    for (j, tau) in switching_stream(g, seed, switch_count).iter().enumerate() {
        let switched = apply_switching(g, tau)?;

        let spectrum = graph_spectrum(&switched)?;
        let spectral_defect = base_spectrum
            .iter()
            .zip(&spectrum)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        report.push_eq(format!("{label}: switch {j} spectrum"), 0, spectral_defect, 0.0);

        for (n, base) in DIMENSIONS.iter().zip(&base_curvatures) {
            let switched_curv = graph_curvature(&switched, *n, CURVATURE_TOL)?;
            let defect = (0..g.n())
                .map(|x| (base.vertex(x) - switched_curv.vertex(x)).abs())
                .fold(0.0, f64::max);
            let name = match n {
                DimensionParam::Finite(v) => format!("n={v}"),
                DimensionParam::Infinite => "n=inf".to_string(),
            };
            report.push_eq(
                format!("{label}: switch {j} vertex curvature {name}"),
                0,
                defect,
                0.0,
            );
        }

        if exact {
            let switched_frustration = frustration_index(
                &switched,
                &everything,
                MatrixNorm::Average21,
                FrustrationVariant::Switching,
                auto_backend(&switched),
            )?;
            report.push_eq(
                format!("{label}: switch {j} frustration"),
                0,
                switched_frustration.value,
                base_frustration.value,
            );
            let switched_cheeger = cheeger_constants(&switched, 2, EnumerationMode::ConnectedEnum)?;
            for (a, b) in base_cheeger.as_ref().unwrap().iter().zip(&switched_cheeger) {
                report.push_eq(
                    format!("{label}: switch {j} expansion h_{}", a.k),
                    a.k,
                    b.value,
                    a.value,
                );
            }
        } else {
            let forward_start = transport_witness(&base_frustration.witness, tau, true);
            let there = frustration_index_with_starts(
                &switched,
                &everything,
                MatrixNorm::Average21,
                FrustrationVariant::Switching,
                FrustrationBackend::LocalOpt,
                &[forward_start],
            )?;
            let back_start = transport_witness(&there.witness, tau, false);
            let back = frustration_index_with_starts(
                g,
                &everything,
                MatrixNorm::Average21,
                FrustrationVariant::Switching,
                FrustrationBackend::LocalOpt,
                &[back_start],
            )?;
            report.push_le(
                format!("{label}: switch {j} frustration does not increase"),
                0,
                there.value,
                base_frustration.value,
            );
            report.push_eq(
                format!("{label}: switch {j} frustration round trip"),
                0,
                back.value,
                there.value,
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::main_corpus;
    use graph_core::standard::signed_cycle;
    use num_complex::Complex64;

    #[test]
    fn phase_cycles_are_fully_invariant() {
        let g = signed_cycle(5, Complex64::new(0.0, 1.0), 1.3);
        let report = verify_switching(&g, "c5", 4, 42, 1e-8).unwrap();
        assert!(report.pass);
        // Per switch: spectrum, two curvature rows, frustration, h_1, h_2.
        assert_eq!(report.instances.len(), 4 * 6);
    }

    #[test]
    fn block_signatures_pass_via_witness_transport() {
        let entry = main_corpus(42)
            .into_iter()
            .find(|e| e.graph.dim() == 2 && e.graph.n() <= 5)
            .expect("the corpus contains small two-dimensional graphs");
        let report = verify_switching(&entry.graph, &entry.label, 2, 42, 1e-8).unwrap();
        assert!(report.pass, "{}", report.render_text());
    }
}
