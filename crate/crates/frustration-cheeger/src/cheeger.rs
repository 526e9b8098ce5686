//! Multi-way Cheeger constants: minimize, over families of k disjoint vertex
//! subsets, the worst expansion rate among the parts.

use crate::error::FrustrationError;
use crate::frustration::{
    auto_backend, frustration_index, frustration_index_with_starts, FrustrationBackend,
    FrustrationVariant,
};
use crate::norm::MatrixNorm;
use crate::subset::{
    boundary_measure, candidate_subsets, subset_measure, EnumerationMode,
};
use graph_core::SignedGraph;
use serde::Serialize;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A family of pairwise-disjoint nonempty vertex sets, each sorted, with the
/// parts ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubPartition {
    pub parts: Vec<Vec<String>>,
}

/// Per-part detail of a Cheeger witness.
#[derive(Debug, Clone, Serialize)]
pub struct CheegerPart {
    pub vertices: Vec<String>,
    pub phi: f64,
    pub iota: f64,
    pub boundary: f64,
    pub measure: f64,
}

/// The k-way Cheeger constant together with a witnessing subpartition.
#[derive(Debug, Clone, Serialize)]
pub struct CheegerReport {
    pub k: usize,
    pub value: f64,
    pub parts: Vec<CheegerPart>,
}

impl CheegerReport {
    /// The witnessing subpartition as bare vertex sets.
    pub fn subpartition(&self) -> SubPartition {
        SubPartition {
            parts: self.parts.iter().map(|p| p.vertices.clone()).collect(),
        }
    }
}

/// Expansion data of one enumerated subset.
#[derive(Debug, Clone)]
pub struct SubsetScore {
    pub subset: Vec<usize>,
    pub phi: f64,
    pub iota: f64,
    pub boundary: f64,
    pub measure: f64,
}

/// Scores every candidate subset: frustration (exact backend where one
/// exists), boundary weight, measure, and the resulting expansion rate.
pub fn score_subsets(
    graph: &SignedGraph,
    mode: EnumerationMode,
    cap: Option<usize>,
) -> Result<Vec<SubsetScore>, FrustrationError> {
    let candidates = candidate_subsets(graph, mode, cap)?;
    score_candidates(graph, candidates)
}

/// Sequential version of [`score_subsets`], available regardless of the
/// parallel feature so the two code paths can be compared.
pub fn score_subsets_sequential(
    graph: &SignedGraph,
    mode: EnumerationMode,
    cap: Option<usize>,
) -> Result<Vec<SubsetScore>, FrustrationError> {
    let candidates = candidate_subsets(graph, mode, cap)?;
    candidates
        .into_iter()
        .map(|subset| score_one(graph, subset))
        .collect()
}

#[cfg(feature = "parallel")]
fn score_candidates(
    graph: &SignedGraph,
    candidates: Vec<Vec<usize>>,
) -> Result<Vec<SubsetScore>, FrustrationError> {
    candidates
        .into_par_iter()
        .map(|subset| score_one(graph, subset))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn score_candidates(
    graph: &SignedGraph,
    candidates: Vec<Vec<usize>>,
) -> Result<Vec<SubsetScore>, FrustrationError> {
    candidates
        .into_iter()
        .map(|subset| score_one(graph, subset))
        .collect()
}

fn score_one(graph: &SignedGraph, subset: Vec<usize>) -> Result<SubsetScore, FrustrationError> {
    let iota = frustration_index(
        graph,
        &subset,
        MatrixNorm::Average21,
        FrustrationVariant::Switching,
        auto_backend(graph),
    )?
    .value;
    let boundary = boundary_measure(graph, &subset)?;
    let measure = subset_measure(graph, &subset)?;
    Ok(SubsetScore {
        phi: (iota + boundary) / measure,
        subset,
        iota,
        boundary,
        measure,
    })
}

/// Assembles the k-way Cheeger constants from precomputed subset scores by
/// searching for k pairwise-disjoint subsets minimizing the worst expansion.
///
/// Scores are sorted by expansion; scanning candidates in that order, the
/// first candidate that completes a disjoint family of k sets drawn from the
/// sorted prefix determines the constant. Among optimal witnesses the
/// lexicographically smallest family of vertex sets is reported.
pub fn cheeger_from_scores(
    graph: &SignedGraph,
    scores: &[SubsetScore],
    k_max: usize,
) -> Result<Vec<CheegerReport>, FrustrationError> {
    let n = graph.n();
    if k_max > n {
        return Err(FrustrationError::TooManyParts { k: k_max, n });
    }
    if n > 64 {
        return Err(FrustrationError::TooLarge { n, cap: 64 });
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[a]
            .phi
            .partial_cmp(&scores[b].phi)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| scores[a].subset.cmp(&scores[b].subset))
    });
    let masks: Vec<u64> = order
        .iter()
        .map(|&i| {
            scores[i]
                .subset
                .iter()
                .fold(0u64, |mask, &x| mask | (1u64 << x))
        })
        .collect();

    let mut reports = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut threshold = None;
        'scan: for t in 0..order.len() {
            if completes_packing(&masks, t, k) {
                threshold = Some(t);
                break 'scan;
            }
        }
        let Some(t) = threshold else {
            // With k <= n a family of singletons always exists, so an absent
            // packing means the scores do not cover the graph's singletons.
            return Err(FrustrationError::TooManyParts { k, n });
        };
        let threshold_value = scores[order[t]].phi;
        let witness = lexicographic_witness(scores, threshold_value, k)
            .expect("a packing at the optimal value exists");
        let parts: Vec<CheegerPart> = witness
            .into_iter()
            .map(|i| {
                let s = &scores[i];
                CheegerPart {
                    vertices: s.subset.iter().map(|&x| graph.id_of(x).to_string()).collect(),
                    phi: s.phi,
                    iota: s.iota,
                    boundary: s.boundary,
                    measure: s.measure,
                }
            })
            .collect();
        let value = parts
            .iter()
            .map(|p| p.phi)
            .fold(f64::NEG_INFINITY, f64::max);
        reports.push(CheegerReport { k, value, parts });
    }
    Ok(reports)
}

/// Does some family of k pairwise-disjoint masks exist within the sorted
/// prefix ending at (and including) position `t`?
fn completes_packing(masks: &[u64], t: usize, k: usize) -> bool {
    fn extend(masks: &[u64], limit: usize, used: u64, needed: usize, start: usize) -> bool {
        if needed == 0 {
            return true;
        }
        for p in start..limit {
            if masks[p] & used == 0 && extend(masks, limit, used | masks[p], needed - 1, p + 1) {
                return true;
            }
        }
        false
    }
    extend(masks, t, masks[t], k - 1, 0)
}

/// Finds the lexicographically smallest family of k disjoint subsets among
/// the scores with expansion at most `value`.
fn lexicographic_witness(scores: &[SubsetScore], value: f64, k: usize) -> Option<Vec<usize>> {
    let mut eligible: Vec<usize> = (0..scores.len())
        .filter(|&i| scores[i].phi <= value)
        .collect();
    eligible.sort_by(|&a, &b| scores[a].subset.cmp(&scores[b].subset));
    let masks: Vec<u64> = eligible
        .iter()
        .map(|&i| {
            scores[i]
                .subset
                .iter()
                .fold(0u64, |mask, &x| mask | (1u64 << x))
        })
        .collect();
    fn first(
        eligible: &[usize],
        masks: &[u64],
        used: u64,
        needed: usize,
        start: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if needed == 0 {
            return true;
        }
        for p in start..eligible.len() {
            if masks[p] & used == 0 {
                chosen.push(eligible[p]);
                if first(eligible, masks, used | masks[p], needed - 1, p + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(k);
    if first(&eligible, &masks, 0, k, 0, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

/// The k-way Cheeger constants for k = 1..=k_max.
pub fn cheeger_constants(
    graph: &SignedGraph,
    k_max: usize,
    mode: EnumerationMode,
) -> Result<Vec<CheegerReport>, FrustrationError> {
    let scores = score_subsets(graph, mode, None)?;
    cheeger_from_scores(graph, &scores, k_max)
}

/// One-way Cheeger constant built on the unit-vector relaxation of the
/// frustration index. For one-dimensional signatures the relaxation is tight
/// (unit scalars are the group), so the value coincides with the ordinary
/// constant; in higher dimensions the frustration term is the local
/// optimizer's upper estimate, seeded with the columns of the switching
/// witness so the value never exceeds the ordinary constant.
pub fn cheeger_tilde1(graph: &SignedGraph) -> Result<f64, FrustrationError> {
    let candidates = candidate_subsets(graph, EnumerationMode::ConnectedEnum, None)?;
    let phis = tilde_phis(graph, candidates)?;
    Ok(phis.into_iter().fold(f64::INFINITY, f64::min))
}

#[cfg(feature = "parallel")]
fn tilde_phis(
    graph: &SignedGraph,
    candidates: Vec<Vec<usize>>,
) -> Result<Vec<f64>, FrustrationError> {
    candidates
        .into_par_iter()
        .map(|subset| tilde_phi_one(graph, subset))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn tilde_phis(
    graph: &SignedGraph,
    candidates: Vec<Vec<usize>>,
) -> Result<Vec<f64>, FrustrationError> {
    candidates
        .into_iter()
        .map(|subset| tilde_phi_one(graph, subset))
        .collect()
}

fn tilde_phi_one(graph: &SignedGraph, subset: Vec<usize>) -> Result<f64, FrustrationError> {
    let iota_tilde = if graph.dim() == 1 {
        frustration_index(
            graph,
            &subset,
            MatrixNorm::Average21,
            FrustrationVariant::UnitVector,
            auto_backend(graph),
        )?
        .value
    } else {
        let switching = frustration_index(
            graph,
            &subset,
            MatrixNorm::Average21,
            FrustrationVariant::Switching,
            FrustrationBackend::LocalOpt,
        )?;
        let relaxed = frustration_index_with_starts(
            graph,
            &subset,
            MatrixNorm::Average21,
            FrustrationVariant::UnitVector,
            FrustrationBackend::LocalOpt,
            &[switching.witness],
        )?;
        relaxed.value.min(switching.value)
    };
    let boundary = boundary_measure(graph, &subset)?;
    let measure = subset_measure(graph, &subset)?;
    Ok((iota_tilde + boundary) / measure)
}

/// Comparison between the one-way Cheeger constant and (half) the zero-block
/// frustration ratio built from Frobenius norms.
#[derive(Debug, Clone, Serialize)]
pub struct BssComparison {
    /// Upper estimate of the ratio: minimize over subsets, placing the
    /// subset's frustration witness inside and zero blocks outside.
    pub nu_star: f64,
    /// The one-way Cheeger constant.
    pub h1: f64,
    /// Whether h1 <= nu_star / 2 up to a 1e-9 slack.
    pub holds: bool,
}

/// Evaluates the zero-extended frustration ratio by scanning connected
/// subsets: each ordered edge pair inside costs its Frobenius defect, each
/// boundary edge costs the full block norm in both directions, and the
/// denominator is the Frobenius mass of the subset.
pub fn bss_nu_star(graph: &SignedGraph) -> Result<BssComparison, FrustrationError> {
    let candidates = candidate_subsets(graph, EnumerationMode::ConnectedEnum, None)?;
    let d = graph.dim() as f64;
    let backend = auto_backend(graph);
    let ratios = bss_ratios(graph, candidates, backend, d)?;
    let nu_star = ratios.into_iter().fold(f64::INFINITY, f64::min);
    let h1 = cheeger_constants(graph, 1, EnumerationMode::ConnectedEnum)?[0].value;
    Ok(BssComparison {
        nu_star,
        h1,
        holds: h1 <= nu_star / 2.0 + 1e-9,
    })
}

#[cfg(feature = "parallel")]
fn bss_ratios(
    graph: &SignedGraph,
    candidates: Vec<Vec<usize>>,
    backend: FrustrationBackend,
    d: f64,
) -> Result<Vec<f64>, FrustrationError> {
    candidates
        .into_par_iter()
        .map(|subset| bss_ratio_one(graph, subset, backend, d))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn bss_ratios(
    graph: &SignedGraph,
    candidates: Vec<Vec<usize>>,
    backend: FrustrationBackend,
    d: f64,
) -> Result<Vec<f64>, FrustrationError> {
    candidates
        .into_iter()
        .map(|subset| bss_ratio_one(graph, subset, backend, d))
        .collect()
}

fn bss_ratio_one(
    graph: &SignedGraph,
    subset: Vec<usize>,
    backend: FrustrationBackend,
    d: f64,
) -> Result<f64, FrustrationError> {
    let frobenius = frustration_index(
        graph,
        &subset,
        MatrixNorm::Frobenius,
        FrustrationVariant::Switching,
        backend,
    )?;
    let boundary = boundary_measure(graph, &subset)?;
    let measure = subset_measure(graph, &subset)?;
    Ok((2.0 * frobenius.value + 2.0 * d.sqrt() * boundary) / (d.sqrt() * measure))
}
