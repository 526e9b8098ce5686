//! Vertex-subset bookkeeping: measures, boundaries, induced edges, and the
//! deterministic subset enumeration behind the Cheeger search.

use crate::error::FrustrationError;
use graph_core::SignedGraph;

/// Which family of subsets the Cheeger search enumerates.
///
/// `ConnectedEnum` restricts to subsets whose induced subgraph is connected;
/// `AllEnum` walks every nonempty subset. Both yield the same Cheeger
/// constants because splitting a disconnected part can only lower the worst
/// expansion, so the two modes exist mainly to cross-check each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    ConnectedEnum,
    AllEnum,
}

/// Default vertex cap for the connected enumeration.
pub const CONNECTED_ENUM_CAP: usize = 14;
/// Default vertex cap for the unrestricted enumeration.
pub const ALL_ENUM_CAP: usize = 12;

/// Checks indices, removes duplicates, and returns the subset sorted.
pub(crate) fn validate_subset(
    graph: &SignedGraph,
    subset: &[usize],
) -> Result<Vec<usize>, FrustrationError> {
    if subset.is_empty() {
        return Err(FrustrationError::EmptySubset);
    }
    let n = graph.n();
    let mut sorted: Vec<usize> = subset.to_vec();
    for &x in &sorted {
        if x >= n {
            return Err(FrustrationError::VertexOutOfRange { index: x, n });
        }
    }
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted)
}

/// Total measure of the subset.
pub fn subset_measure(graph: &SignedGraph, subset: &[usize]) -> Result<f64, FrustrationError> {
    let sorted = validate_subset(graph, subset)?;
    Ok(sorted.iter().map(|&x| graph.measure(x)).sum())
}

/// Total weight of the edges leaving the subset.
pub fn boundary_measure(graph: &SignedGraph, subset: &[usize]) -> Result<f64, FrustrationError> {
    let sorted = validate_subset(graph, subset)?;
    let inside = membership(graph.n(), &sorted);
    let mut total = 0.0;
    for edge in graph.edges() {
        if inside[edge.u] != inside[edge.v] {
            total += edge.weight;
        }
    }
    Ok(total)
}

pub(crate) fn membership(n: usize, sorted_subset: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; n];
    for &x in sorted_subset {
        inside[x] = true;
    }
    inside
}

/// Indices (into `graph.edges()`) of the edges with both endpoints inside.
pub(crate) fn induced_edge_indices(graph: &SignedGraph, sorted_subset: &[usize]) -> Vec<usize> {
    let inside = membership(graph.n(), sorted_subset);
    graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| inside[e.u] && inside[e.v])
        .map(|(i, _)| i)
        .collect()
}

/// Connected components of the induced subgraph, each sorted.
pub(crate) fn subset_components(graph: &SignedGraph, sorted_subset: &[usize]) -> Vec<Vec<usize>> {
    let inside = membership(graph.n(), sorted_subset);
    let mut seen = vec![false; graph.n()];
    let mut components = Vec::new();
    for &start in sorted_subset {
        if seen[start] {
            continue;
        }
        let mut component = vec![start];
        let mut queue = vec![start];
        seen[start] = true;
        while let Some(x) = queue.pop() {
            for &(y, _) in graph.neighbors(x) {
                if inside[y] && !seen[y] {
                    seen[y] = true;
                    component.push(y);
                    queue.push(y);
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}

pub(crate) fn is_induced_connected(graph: &SignedGraph, sorted_subset: &[usize]) -> bool {
    subset_components(graph, sorted_subset).len() == 1
}

/// Enumerates candidate subsets for the Cheeger search in a deterministic
/// order (ascending bitmask over the vertex indices).
pub fn candidate_subsets(
    graph: &SignedGraph,
    mode: EnumerationMode,
    cap: Option<usize>,
) -> Result<Vec<Vec<usize>>, FrustrationError> {
    let n = graph.n();
    let cap = cap.unwrap_or(match mode {
        EnumerationMode::ConnectedEnum => CONNECTED_ENUM_CAP,
        EnumerationMode::AllEnum => ALL_ENUM_CAP,
    });
    if n > cap {
        return Err(FrustrationError::TooLarge { n, cap });
    }
    let mut subsets = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|&x| mask & (1 << x) != 0).collect();
        match mode {
            EnumerationMode::AllEnum => subsets.push(subset),
            EnumerationMode::ConnectedEnum => {
                if is_induced_connected(graph, &subset) {
                    subsets.push(subset);
                }
            }
        }
    }
    Ok(subsets)
}
