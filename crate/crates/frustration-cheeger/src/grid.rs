//! Discretized reference evaluation of the frustration objective for
//! one-dimensional complex signatures.
//!
//! Phases are restricted to the `roots`-th roots of unity, which turns the
//! minimization into a finite problem. Because every edge cost depends only
//! on the phase difference across the edge, the exact grid minimum can be
//! computed by factor elimination: leaves contribute their cheapest phase,
//! degree-two vertices are removed by a min-plus convolution of their two
//! incident cost tables, and parallel tables add pointwise. Any subgraph
//! whose cycle space has dimension at most two reduces completely.
//!
//! The grid minimum is an upper bound of the true frustration, and exceeds it
//! by at most `2 * (total induced weight) * pi / roots`, since rounding every
//! phase to the nearest grid point moves each edge cost by at most two grid
//! half-steps.

use crate::error::FrustrationError;
use crate::subset::{induced_edge_indices, validate_subset};
use graph_core::{Field, SignedGraph};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Exact minimum of the frustration objective over phase assignments drawn
/// from the `roots`-th roots of unity.
pub fn grid_frustration(
    graph: &SignedGraph,
    subset: &[usize],
    roots: usize,
) -> Result<f64, FrustrationError> {
    if graph.dim() != 1 || graph.field() != Field::Complex {
        return Err(FrustrationError::BackendUnsupported {
            dim: graph.dim(),
            field: match graph.field() {
                Field::Real => "real",
                Field::Complex => "complex",
            },
        });
    }
    let sorted = validate_subset(graph, subset)?;
    let r = roots;

    // Local vertex numbering and one cost table per induced edge, stored on
    // the key (min, max) and oriented from the smaller to the larger vertex.
    let mut position = vec![usize::MAX; graph.n()];
    for (i, &x) in sorted.iter().enumerate() {
        position[x] = i;
    }
    let mut tables: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
    for idx in induced_edge_indices(graph, &sorted) {
        let edge = &graph.edges()[idx];
        let sigma = edge.sigma.entries()[(0, 0)];
        let (mut u, mut v) = (position[edge.u], position[edge.v]);
        let mut table: Vec<f64> = (0..r)
            .map(|delta| {
                let ratio = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * delta as f64 / r as f64);
                edge.weight * (sigma * ratio - Complex64::new(1.0, 0.0)).norm()
            })
            .collect();
        if u > v {
            std::mem::swap(&mut u, &mut v);
            table = reverse_table(&table);
        }
        merge_table(&mut tables, (u, v), table);
    }

    let mut degree: Vec<usize> = vec![0; sorted.len()];
    for &(u, v) in tables.keys() {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut alive: Vec<bool> = {
        let mut alive = vec![false; sorted.len()];
        for &x in &sorted {
            alive[position[x]] = true;
        }
        alive
    };

    let mut total = 0.0;
    loop {
        // Vertices with no incident table cost nothing.
        for x in 0..alive.len() {
            if alive[x] && degree[x] == 0 {
                alive[x] = false;
            }
        }
        let Some(x) = (0..alive.len()).find(|&x| alive[x] && degree[x] <= 2) else {
            if alive.iter().any(|&a| a) && !tables.is_empty() {
                return Err(FrustrationError::NotReducible {
                    remaining: alive.iter().filter(|&&a| a).count(),
                });
            }
            break;
        };
        let incident: Vec<(usize, usize)> = tables
            .keys()
            .copied()
            .filter(|&(u, v)| u == x || v == x)
            .collect();
        match incident.len() {
            1 => {
                let key = incident[0];
                let table = tables.remove(&key).expect("present");
                total += table.iter().copied().fold(f64::INFINITY, f64::min);
                let other = if key.0 == x { key.1 } else { key.0 };
                degree[other] -= 1;
                degree[x] = 0;
                alive[x] = false;
            }
            2 => {
                let key_a = incident[0];
                let key_b = incident[1];
                let table_a = tables.remove(&key_a).expect("present");
                let table_b = tables.remove(&key_b).expect("present");
                // Orient both tables away from the endpoints towards x.
                let (a, f) = if key_a.1 == x {
                    (key_a.0, table_a)
                } else {
                    (key_a.1, reverse_table(&table_a))
                };
                let (b, g) = if key_b.0 == x {
                    (key_b.1, table_b)
                } else {
                    (key_b.0, reverse_table(&table_b))
                };
                // f is a -> x, g is x -> b; compose to a -> b.
                let mut h = vec![f64::INFINITY; r];
                for (s, slot) in h.iter_mut().enumerate() {
                    for (delta, fv) in f.iter().enumerate() {
                        let gv = g[(s + r - delta) % r];
                        let candidate = fv + gv;
                        if candidate < *slot {
                            *slot = candidate;
                        }
                    }
                }
                degree[a] -= 1;
                degree[b] -= 1;
                degree[x] = 0;
                alive[x] = false;
                let (mut u, mut v, mut table) = (a, b, h);
                if u > v {
                    std::mem::swap(&mut u, &mut v);
                    table = reverse_table(&table);
                }
                if merge_table(&mut tables, (u, v), table) {
                    degree[u] += 1;
                    degree[v] += 1;
                }
            }
            _ => unreachable!("degree bookkeeping out of sync"),
        }
    }
    Ok(total)
}

/// Worst-case gap between the grid minimum and the true frustration of the
/// subset: two grid half-steps per unit of induced edge weight.
pub fn grid_discretization_bound(
    graph: &SignedGraph,
    subset: &[usize],
    roots: usize,
) -> Result<f64, FrustrationError> {
    let sorted = validate_subset(graph, subset)?;
    let total_weight: f64 = induced_edge_indices(graph, &sorted)
        .into_iter()
        .map(|idx| graph.edges()[idx].weight)
        .sum();
    Ok(2.0 * total_weight * std::f64::consts::PI / roots as f64)
}

fn reverse_table(table: &[f64]) -> Vec<f64> {
    let r = table.len();
    (0..r).map(|delta| table[(r - delta) % r]).collect()
}

/// Adds `table` into the slot for `key`, pointwise if a table is already
/// there. Returns true when the key is new.
fn merge_table(
    tables: &mut BTreeMap<(usize, usize), Vec<f64>>,
    key: (usize, usize),
    table: Vec<f64>,
) -> bool {
    match tables.get_mut(&key) {
        Some(existing) => {
            for (slot, value) in existing.iter_mut().zip(table) {
                *slot += value;
            }
            false
        }
        None => {
            tables.insert(key, table);
            true
        }
    }
}
