//! Seeded random graph families shared by the verification drivers.
//!
//! Every generator takes an explicit seed and is deterministic for it, so a
//! failing instance can be reproduced from the report parameters alone.

use std::collections::BTreeMap;

use graph_core::{polar_project, Field, SignedGraph, SwitchingFunction, UnitaryBlock};
use linalg_kernel::CMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::VerifyError;

/// Number of graphs in the main random corpus.
pub const CORPUS_SIZE: usize = 200;

/// A corpus entry: the graph plus a stable label for report instances.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub label: String,
    pub graph: SignedGraph,
}

fn per_graph_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A uniform phase, a random sign, or the unitary polar factor of a random
/// matrix, depending on the block dimension and field.
pub fn random_unitary(d: usize, field: Field, rng: &mut ChaCha8Rng) -> CMatrix {
    if d == 1 {
        return match field {
            Field::Real => {
                let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                CMatrix::from_real_rows(&[vec![sign]])
            }
            Field::Complex => {
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                CMatrix::from_fn(1, 1, |_, _| Complex64::from_polar(1.0, theta))
            }
        };
    }
    let raw = CMatrix::from_fn(d, d, |_, _| match field {
        Field::Real => Complex64::new(rng.gen_range(-1.0..1.0), 0.0),
        Field::Complex => Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
    });
    polar_project(&raw).expect("a random matrix is almost surely nonsingular")
}

/// Connected random graph: a random spanning tree over `n` vertices plus
/// independent extra edges, with weights and measures drawn from [0.5, 2).
pub fn random_connected_graph(
    n: usize,
    d: usize,
    field: Field,
    extra_edge_prob: f64,
    rng: &mut ChaCha8Rng,
) -> SignedGraph {
    let mut builder = SignedGraph::builder(d, field);
    for i in 0..n {
        builder = builder.vertex(&format!("v{i}"), rng.gen_range(0.5..2.0));
    }
    let mut present = vec![false; n * n];
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        present[parent * n + i] = true;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !present[i * n + j] && rng.gen_bool(extra_edge_prob) {
                present[i * n + j] = true;
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if present[i * n + j] {
                let weight = rng.gen_range(0.5..2.0);
                let sigma = random_unitary(d, field, rng);
                builder = builder.edge(&format!("v{i}"), &format!("v{j}"), weight, sigma);
            }
        }
    }
    builder.build().expect("generated graphs are valid")
}

/// The main random corpus: `CORPUS_SIZE` connected graphs on at most eight
/// vertices, alternating one-dimensional and two-dimensional unitary
/// signatures, with random weights and measures.
pub fn main_corpus(seed: u64) -> Vec<LabeledGraph> {
    (0..CORPUS_SIZE)
        .map(|i| {
            let mut rng = per_graph_rng(seed, i as u64);
            let n = rng.gen_range(3..=8);
            let d = if i % 2 == 0 { 1 } else { 2 };
            let graph = random_connected_graph(n, d, Field::Complex, 0.35, &mut rng);
            LabeledGraph {
                label: format!("rand-{i:03}-n{n}-d{d}"),
                graph,
            }
        })
        .collect()
}

/// Sparse one-dimensional corpus: spanning tree plus at most two extra
/// edges, so the cycle space stays small enough for grid brute force.
pub fn sparse_phase_corpus(seed: u64, count: usize) -> Vec<LabeledGraph> {
    (0..count)
        .map(|i| {
            let mut rng = per_graph_rng(seed, 0x5000 + i as u64);
            let n = rng.gen_range(3..=7);
            let mut builder = SignedGraph::builder(1, Field::Complex);
            for v in 0..n {
                builder = builder.vertex(&format!("v{v}"), rng.gen_range(0.5..2.0));
            }
            let mut present = vec![false; n * n];
            let mut pairs = Vec::new();
            for v in 1..n {
                let parent = rng.gen_range(0..v);
                present[parent * n + v] = true;
            }
            for u in 0..n {
                for v in (u + 1)..n {
                    if !present[u * n + v] {
                        pairs.push((u, v));
                    }
                }
            }
            let extras = rng.gen_range(0..=pairs.len().min(2));
            for _ in 0..extras {
                let pick = rng.gen_range(0..pairs.len());
                let (u, v) = pairs.swap_remove(pick);
                present[u * n + v] = true;
            }
            for u in 0..n {
                for v in (u + 1)..n {
                    if present[u * n + v] {
                        let weight = rng.gen_range(0.5..2.0);
                        let sigma = random_unitary(1, Field::Complex, &mut rng);
                        builder = builder.edge(&format!("v{u}"), &format!("v{v}"), weight, sigma);
                    }
                }
            }
            LabeledGraph {
                label: format!("sparse-{i:02}-n{n}"),
                graph: builder.build().expect("generated graphs are valid"),
            }
        })
        .collect()
}

/// A random switching function compatible with the graph's field and block
/// dimension.
pub fn random_switching(g: &SignedGraph, rng: &mut ChaCha8Rng) -> SwitchingFunction {
    let mut blocks = BTreeMap::new();
    for id in g.vertex_ids() {
        let block = UnitaryBlock::new(random_unitary(g.dim(), g.field(), rng))
            .expect("projected blocks are unitary");
        blocks.insert(id.clone(), block);
    }
    SwitchingFunction::new(blocks)
}

/// Seeded switching stream for invariance checks.
pub fn switching_stream(g: &SignedGraph, seed: u64, count: usize) -> Vec<SwitchingFunction> {
    let mut rng = per_graph_rng(seed, 0xA000);
    (0..count).map(|_| random_switching(g, &mut rng)).collect()
}

/// Unweighted cycle whose every edge carries the sign -1, with constant
/// vertex measure equal to the degree. Even lengths are balanced (the edge
/// signs multiply to +1 around the cycle), odd lengths are not.
pub fn all_minus_cycle(n: usize) -> SignedGraph {
    let minus = CMatrix::from_real_rows(&[vec![-1.0]]);
    let mut builder = SignedGraph::builder(1, Field::Real);
    for i in 0..n {
        builder = builder.vertex(&format!("v{i:02}"), 2.0);
    }
    for i in 0..n {
        let j = (i + 1) % n;
        builder = builder.edge(&format!("v{i:02}"), &format!("v{j:02}"), 1.0, minus.clone());
    }
    builder.build().expect("cycles are valid")
}

/// All vertex indices of a graph, the subset most checks evaluate on.
pub fn full_subset(g: &SignedGraph) -> Vec<usize> {
    (0..g.n()).collect()
}

/// Parses a comma-separated vertex id list into indices.
pub fn parse_subset(g: &SignedGraph, spec: &str) -> Result<Vec<usize>, VerifyError> {
    spec.split(',')
        .map(|raw| {
            let id = raw.trim();
            g.index_of(id)
                .ok_or_else(|| VerifyError::BackendUnsupported {
                    check: "subset",
                    detail: format!("unknown vertex id '{id}'"),
                })
        })
        .collect()
}
