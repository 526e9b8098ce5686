//! Spanning-tree machinery: counting, enumeration, and evaluation of the
//! gauges that make all tree edges exact.
//!
//! For one-dimensional complex signatures the best tree gauge attains the
//! frustration index exactly; in higher dimensions the scan still yields a
//! family of upper bounds, one per spanning tree, which is exactly what the
//! counterexample analysis needs.

use crate::error::FrustrationError;
use crate::norm::MatrixNorm;
use crate::subset::{induced_edge_indices, is_induced_connected, validate_subset};
use graph_core::SignedGraph;
use linalg_kernel::{hermitian_eigen, CMatrix, HermitianMatrix};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Default cap on the number of spanning trees a scan will enumerate.
pub const DEFAULT_TREE_CAP: usize = 1_000_000;

/// Result of evaluating every spanning-tree gauge of a connected subset.
#[derive(Debug, Clone)]
pub struct TreeGaugeScan {
    /// Number of spanning trees of the induced subgraph.
    pub tree_count: usize,
    /// Objective value of each tree gauge, in enumeration order.
    pub values: Vec<f64>,
    /// Smallest value over all trees.
    pub best_value: f64,
    /// Edges (as id pairs) of a tree attaining the best value.
    pub best_tree: Vec<(String, String)>,
    /// The gauge attaining the best value, one unitary block per vertex.
    pub witness: BTreeMap<String, CMatrix>,
}

/// Number of spanning trees of the subgraph induced by `subset`, with every
/// edge counted once regardless of weight. Computed from the eigenvalues of
/// a Laplacian minor, so the value is exact for counts below 2^53.
pub fn spanning_tree_count(
    graph: &SignedGraph,
    subset: &[usize],
) -> Result<f64, FrustrationError> {
    let sorted = validate_subset(graph, subset)?;
    if !is_induced_connected(graph, &sorted) {
        return Err(FrustrationError::DisconnectedSubset);
    }
    let edges = local_edges(graph, &sorted);
    Ok(count_trees_local(sorted.len(), &edges)?)
}

/// Enumerates every spanning tree of the connected induced subgraph, builds
/// the gauge that makes the tree edges exact, and evaluates the frustration
/// objective for each tree.
pub fn tree_gauge_scan(
    graph: &SignedGraph,
    subset: &[usize],
    norm: MatrixNorm,
    cap: usize,
) -> Result<TreeGaugeScan, FrustrationError> {
    let sorted = validate_subset(graph, subset)?;
    if !is_induced_connected(graph, &sorted) {
        return Err(FrustrationError::DisconnectedSubset);
    }
    let edges = local_edges(graph, &sorted);
    let count = count_trees_local(sorted.len(), &edges)?;
    if count > cap as f64 {
        return Err(FrustrationError::TooLarge {
            n: count as usize,
            cap,
        });
    }

    let n = sorted.len();
    let mut sigmas: Vec<CMatrix> = Vec::with_capacity(edges.len());
    let mut weights: Vec<f64> = Vec::with_capacity(edges.len());
    for &(lu, lv) in &edges {
        let sigma = graph
            .sigma(sorted[lu], sorted[lv])
            .expect("induced edge endpoints are adjacent");
        sigmas.push(sigma);
        weights.push(
            graph
                .edge_between(sorted[lu], sorted[lv])
                .map(|e| e.weight)
                .expect("induced edge exists"),
        );
    }

    let scalar = graph.dim() == 1;
    let scalar_sigmas: Vec<Complex64> = if scalar {
        sigmas.iter().map(|s| s[(0, 0)]).collect()
    } else {
        Vec::new()
    };

    let mut values = Vec::new();
    let mut best_value = f64::INFINITY;
    let mut best_edges: Vec<usize> = Vec::new();
    enumerate_spanning_trees(n, &edges, usize::MAX, |tree| {
        let value = if scalar {
            evaluate_tree_scalar(n, &edges, &scalar_sigmas, &weights, tree)
        } else {
            evaluate_tree_general(graph.dim(), n, &edges, &sigmas, &weights, norm, tree)
        };
        values.push(value);
        if value < best_value {
            best_value = value;
            best_edges = tree.to_vec();
        }
    });

    let witness_local = if scalar {
        gauge_from_tree_scalar(n, &edges, &scalar_sigmas, &best_edges)
            .into_iter()
            .map(|z| CMatrix::from_rows(&[vec![z]]))
            .collect()
    } else {
        gauge_from_tree_general(graph.dim(), n, &edges, &sigmas, &best_edges)
    };
    let mut witness = BTreeMap::new();
    for (local, block) in witness_local.into_iter().enumerate() {
        witness.insert(graph.id_of(sorted[local]).to_string(), block);
    }
    let best_tree = best_edges
        .iter()
        .map(|&e| {
            let (lu, lv) = edges[e];
            (
                graph.id_of(sorted[lu]).to_string(),
                graph.id_of(sorted[lv]).to_string(),
            )
        })
        .collect();

    Ok(TreeGaugeScan {
        tree_count: values.len(),
        best_value,
        best_tree,
        witness,
        values,
    })
}

fn local_edges(graph: &SignedGraph, sorted: &[usize]) -> Vec<(usize, usize)> {
    let mut position = vec![usize::MAX; graph.n()];
    for (i, &x) in sorted.iter().enumerate() {
        position[x] = i;
    }
    induced_edge_indices(graph, sorted)
        .into_iter()
        .map(|idx| {
            let e = &graph.edges()[idx];
            (position[e.u], position[e.v])
        })
        .collect()
}

fn count_trees_local(n: usize, edges: &[(usize, usize)]) -> Result<f64, FrustrationError> {
    if n <= 1 {
        return Ok(1.0);
    }
    if edges.len() < n - 1 {
        return Ok(0.0);
    }
    let mut laplacian = vec![vec![0.0f64; n]; n];
    for &(u, v) in edges {
        laplacian[u][u] += 1.0;
        laplacian[v][v] += 1.0;
        laplacian[u][v] -= 1.0;
        laplacian[v][u] -= 1.0;
    }
    let minor = CMatrix::from_fn(n - 1, n - 1, |i, j| {
        Complex64::new(laplacian[i + 1][j + 1], 0.0)
    });
    let decomposition = hermitian_eigen(&HermitianMatrix::new(minor)?)?;
    let product: f64 = decomposition.eigenvalues.iter().product();
    Ok(product.round().max(0.0))
}

/// Walks every spanning tree exactly once via include/exclude recursion over
/// the edge list, pruning branches that can no longer connect the subset.
/// Stops early once `cap` trees have been emitted.
fn enumerate_spanning_trees(
    n: usize,
    edges: &[(usize, usize)],
    cap: usize,
    mut on_tree: impl FnMut(&[usize]),
) {
    if n == 0 {
        return;
    }
    if n == 1 {
        on_tree(&[]);
        return;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(n - 1);
    let mut parent: Vec<usize> = (0..n).collect();
    let mut emitted = 0usize;
    recurse(
        n,
        edges,
        0,
        &mut parent,
        &mut chosen,
        cap,
        &mut emitted,
        &mut on_tree,
    );

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    fn connectable(n: usize, edges: &[(usize, usize)], from: usize, parent: &[usize]) -> bool {
        let mut scratch = parent.to_vec();
        let mut classes = {
            let mut roots = std::collections::BTreeSet::new();
            for x in 0..n {
                roots.insert(find(&mut scratch, x));
            }
            roots.len()
        };
        for &(u, v) in &edges[from..] {
            let ru = find(&mut scratch, u);
            let rv = find(&mut scratch, v);
            if ru != rv {
                scratch[ru] = rv;
                classes -= 1;
                if classes == 1 {
                    return true;
                }
            }
        }
        classes == 1
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        n: usize,
        edges: &[(usize, usize)],
        idx: usize,
        parent: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        cap: usize,
        emitted: &mut usize,
        on_tree: &mut impl FnMut(&[usize]),
    ) {
        if *emitted >= cap {
            return;
        }
        if chosen.len() == n - 1 {
            *emitted += 1;
            on_tree(chosen);
            return;
        }
        if idx == edges.len() || !connectable(n, edges, idx, parent) {
            return;
        }
        let (u, v) = edges[idx];
        let ru = find(parent, u);
        let rv = find(parent, v);
        if ru != rv {
            let saved = parent.clone();
            parent[ru] = rv;
            chosen.push(idx);
            recurse(n, edges, idx + 1, parent, chosen, cap, emitted, on_tree);
            chosen.pop();
            *parent = saved;
        }
        recurse(n, edges, idx + 1, parent, chosen, cap, emitted, on_tree);
    }
}

fn tree_adjacency(n: usize, edges: &[(usize, usize)], tree: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut adjacency = vec![Vec::new(); n];
    for &e in tree {
        let (u, v) = edges[e];
        adjacency[u].push((v, e));
        adjacency[v].push((u, e));
    }
    adjacency
}

/// Gauge over U(1): propagate phases outward from vertex 0 so that every
/// tree edge contributes nothing to the objective.
fn gauge_from_tree_scalar(
    n: usize,
    edges: &[(usize, usize)],
    sigmas: &[Complex64],
    tree: &[usize],
) -> Vec<Complex64> {
    let adjacency = tree_adjacency(n, edges, tree);
    let mut tau = vec![Complex64::new(1.0, 0.0); n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for &(y, e) in &adjacency[x] {
            if seen[y] {
                continue;
            }
            seen[y] = true;
            let (u, _) = edges[e];
            tau[y] = if u == x {
                sigmas[e].conj() * tau[x]
            } else {
                sigmas[e] * tau[x]
            };
            queue.push(y);
        }
    }
    tau
}

fn evaluate_tree_scalar(
    n: usize,
    edges: &[(usize, usize)],
    sigmas: &[Complex64],
    weights: &[f64],
    tree: &[usize],
) -> f64 {
    let tau = gauge_from_tree_scalar(n, edges, sigmas, tree);
    edges
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| weights[e] * (sigmas[e] * tau[v] - tau[u]).norm())
        .sum()
}

fn gauge_from_tree_general(
    d: usize,
    n: usize,
    edges: &[(usize, usize)],
    sigmas: &[CMatrix],
    tree: &[usize],
) -> Vec<CMatrix> {
    let adjacency = tree_adjacency(n, edges, tree);
    let mut tau = vec![CMatrix::identity(d); n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for &(y, e) in &adjacency[x] {
            if seen[y] {
                continue;
            }
            seen[y] = true;
            let (u, _) = edges[e];
            tau[y] = if u == x {
                sigmas[e].adjoint().mul(&tau[x]).expect("square blocks")
            } else {
                sigmas[e].mul(&tau[x]).expect("square blocks")
            };
            queue.push(y);
        }
    }
    tau
}

fn evaluate_tree_general(
    d: usize,
    n: usize,
    edges: &[(usize, usize)],
    sigmas: &[CMatrix],
    weights: &[f64],
    norm: MatrixNorm,
    tree: &[usize],
) -> f64 {
    let tau = gauge_from_tree_general(d, n, edges, sigmas, tree);
    edges
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let transported = sigmas[e].mul(&tau[v]).expect("square blocks");
            let difference = transported.sub(&tau[u]).expect("matching shapes");
            weights[e] * norm.evaluate(&difference)
        })
        .sum()
}
