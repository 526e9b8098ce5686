use std::collections::BTreeMap;

use crate::error::GraphError;
use crate::graph::SignedGraph;
use crate::unitary::UnitaryBlock;

/// Tolerance for deciding that a switched non-tree edge carries the identity.
pub const BALANCE_TOL: f64 = 1e-9;

/// A vertex-wise unitary gauge: tau(x) conjugates the signature without
/// changing any spectral or variational quantity attached to the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchingFunction {
    blocks: BTreeMap<String, UnitaryBlock>,
}

impl SwitchingFunction {
    pub fn new(blocks: BTreeMap<String, UnitaryBlock>) -> Self {
        SwitchingFunction { blocks }
    }

    pub fn identity(g: &SignedGraph) -> Self {
        let blocks = g
            .vertex_ids()
            .iter()
            .map(|id| (id.clone(), UnitaryBlock::identity(g.dim())))
            .collect();
        SwitchingFunction { blocks }
    }

    pub fn get(&self, id: &str) -> Option<&UnitaryBlock> {
        self.blocks.get(id)
    }

    pub fn insert(&mut self, id: &str, block: UnitaryBlock) {
        self.blocks.insert(id.to_string(), block);
    }

    /// Pointwise inverse.
    pub fn inverse(&self) -> SwitchingFunction {
        SwitchingFunction {
            blocks: self
                .blocks
                .iter()
                .map(|(id, b)| (id.clone(), b.inverse()))
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &UnitaryBlock)> {
        self.blocks.iter()
    }
}

/// Replaces sigma_xy by tau(x)^{-1} sigma_xy tau(y) on every oriented edge.
/// Vertices, edges, weights and the measure are untouched.
pub fn apply_switching(
    g: &SignedGraph,
    tau: &SwitchingFunction,
) -> Result<SignedGraph, GraphError> {
    // Validate coverage and dimensions up front.
    for id in g.vertex_ids() {
        let block = tau.get(id).ok_or_else(|| GraphError::UnknownVertex {
            id: id.clone(),
        })?;
        if block.dim() != g.dim() {
            return Err(GraphError::DimensionMismatch {
                context: format!("switching block at {id}"),
                expected: g.dim(),
                found: block.dim(),
            });
        }
    }
    g.with_signature(|edge| {
        let tu = tau.get(g.id_of(edge.u)).expect("validated above");
        let tv = tau.get(g.id_of(edge.v)).expect("validated above");
        tu.inverse().compose(&edge.sigma)?.compose(tv)
    })
}

/// Product of the signature along a closed walk x_1 x_2 ... x_l x_1 using
/// pairwise-distinct edges. The result is one representative of the
/// conjugacy class attached to the cycle; basing the walk elsewhere
/// conjugates it.
pub fn cycle_signature(g: &SignedGraph, cycle: &[&str]) -> Result<UnitaryBlock, GraphError> {
    if cycle.len() < 3 {
        return Err(GraphError::NotACycle {
            reason: format!("length {} is below 3", cycle.len()),
        });
    }
    let mut indices = Vec::with_capacity(cycle.len());
    for id in cycle {
        indices.push(g.index_of(id).ok_or_else(|| GraphError::UnknownVertex {
            id: id.to_string(),
        })?);
    }
    let mut used = std::collections::BTreeSet::new();
    let mut product = UnitaryBlock::identity(g.dim());
    for k in 0..indices.len() {
        let x = indices[k];
        let y = indices[(k + 1) % indices.len()];
        let edge = g.edge_between(x, y).ok_or_else(|| GraphError::NotACycle {
            reason: format!("{} and {} are not adjacent", g.id_of(x), g.id_of(y)),
        })?;
        if !used.insert((edge.u, edge.v)) {
            return Err(GraphError::NotACycle {
                reason: format!(
                    "edge {{{},{}}} traversed twice",
                    g.id_of(edge.u),
                    g.id_of(edge.v)
                ),
            });
        }
        let step = if edge.u == x {
            edge.sigma.clone()
        } else {
            edge.sigma.inverse()
        };
        product = product.compose(&step)?;
    }
    Ok(product)
}

/// Balance test with witness. A spanning tree (per component) is gauged to
/// the identity; the graph is balanced exactly when every non-tree edge then
/// carries a block within [`BALANCE_TOL`] of the identity. On success the
/// trivializing switching function is returned.
pub fn is_balanced(g: &SignedGraph) -> Result<(bool, Option<SwitchingFunction>), GraphError> {
    let n = g.n();
    let d = g.dim();
    let mut tau: Vec<Option<UnitaryBlock>> = vec![None; n];
    let mut tree_edges = vec![false; g.edges().len()];

    for component in g.components() {
        let root = component[0];
        tau[root] = Some(UnitaryBlock::identity(d));
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in g.neighbors(x) {
                if tau[y].is_some() {
                    continue;
                }
                // Gauge the tree edge to the identity:
                // tau(x)^H sigma_xy tau(y) = I forces tau(y) = sigma_yx tau(x).
                let edge = &g.edges()[e];
                let sigma_yx = if edge.u == y {
                    edge.sigma.clone()
                } else {
                    edge.sigma.inverse()
                };
                tau[y] = Some(sigma_yx.compose(tau[x].as_ref().unwrap())?);
                tree_edges[e] = true;
                queue.push_back(y);
            }
        }
    }

    let identity = UnitaryBlock::identity(d);
    let mut balanced = true;
    for (e, edge) in g.edges().iter().enumerate() {
        if tree_edges[e] {
            continue;
        }
        let tu = tau[edge.u].as_ref().unwrap();
        let tv = tau[edge.v].as_ref().unwrap();
        let switched = tu.inverse().compose(&edge.sigma)?.compose(tv)?;
        if switched.max_distance_to(&identity) > BALANCE_TOL {
            balanced = false;
            break;
        }
    }

    if balanced {
        let blocks = g
            .vertex_ids()
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), tau[i].clone().unwrap()))
            .collect();
        Ok((true, Some(SwitchingFunction::new(blocks))))
    } else {
        Ok((false, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Field, SignedGraph};
    use linalg_kernel::CMatrix;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn triangle(s: Complex64) -> SignedGraph {
        SignedGraph::builder(1, if s.im == 0.0 { Field::Real } else { Field::Complex })
            .vertex("x", 2.0)
            .vertex("y", 2.0)
            .vertex("z", 2.0)
            .edge("x", "y", 1.0, CMatrix::identity(1))
            .edge("x", "z", 1.0, CMatrix::identity(1))
            .edge("y", "z", 1.0, CMatrix::from_rows(&[vec![s]]))
            .build()
            .unwrap()
    }

    #[test]
    fn identity_switching_is_a_no_op() {
        let g = triangle(c(0.0, 1.0));
        let switched = apply_switching(&g, &SwitchingFunction::identity(&g)).unwrap();
        assert_eq!(g, switched);
    }

    #[test]
    fn switching_moves_the_twist_around_the_triangle() {
        let s = c(0.6, 0.8);
        let g = triangle(s);
        let mut tau = SwitchingFunction::identity(&g);
        tau.insert("z", UnitaryBlock::scalar(s.conj()).unwrap());
        let switched = apply_switching(&g, &tau).unwrap();

        let (x, y, z) = (
            switched.index_of("x").unwrap(),
            switched.index_of("y").unwrap(),
            switched.index_of("z").unwrap(),
        );
        assert!((switched.sigma(y, z).unwrap()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
        // tau(x)^{-1} sigma_xz tau(z) = conj(s): the twist moved to xz,
        // conjugated by the gauge.
        assert!((switched.sigma(x, z).unwrap()[(0, 0)] - s.conj()).norm() < 1e-14);
        // The cycle signature is untouched.
        let sig = cycle_signature(&switched, &["x", "y", "z"]).unwrap();
        assert!((sig.entries()[(0, 0)] - s).norm() < 1e-14);
    }

    #[test]
    fn triangle_cycle_signature_is_the_twist() {
        let s = c(-0.28, 0.96);
        let g = triangle(s);
        let sig = cycle_signature(&g, &["x", "y", "z"]).unwrap();
        assert!((sig.entries()[(0, 0)] - s).norm() < 1e-14);
        // Walked backwards the class is conjugated, for scalars inverted.
        let back = cycle_signature(&g, &["z", "y", "x"]).unwrap();
        assert!((back.entries()[(0, 0)] - s.conj()).norm() < 1e-14);
    }

    #[test]
    fn backtracking_walks_are_rejected() {
        let g = triangle(c(1.0, 0.0));
        match cycle_signature(&g, &["x", "y", "x"]) {
            Err(GraphError::NotACycle { .. }) => {}
            other => panic!("expected NotACycle, got {other:?}"),
        }
    }

    #[test]
    fn balanced_square_has_identity_cycle_signature() {
        let g = SignedGraph::builder(1, Field::Real)
            .vertex("a", 1.0)
            .vertex("b", 1.0)
            .vertex("c", 1.0)
            .vertex("d", 1.0)
            .edge("a", "b", 1.0, CMatrix::identity(1))
            .edge("b", "c", 1.0, CMatrix::identity(1))
            .edge("c", "d", 1.0, CMatrix::identity(1))
            .edge("d", "a", 1.0, CMatrix::identity(1))
            .build()
            .unwrap();
        let sig = cycle_signature(&g, &["a", "b", "c", "d"]).unwrap();
        assert!(sig.max_distance_to(&UnitaryBlock::identity(1)) < 1e-14);
    }

    #[test]
    fn trees_are_balanced() {
        let g = SignedGraph::builder(1, Field::Complex)
            .vertex("a", 1.0)
            .vertex("b", 1.0)
            .vertex("c", 1.0)
            .edge("a", "b", 1.0, CMatrix::from_rows(&[vec![c(0.0, 1.0)]]))
            .edge("b", "c", 1.0, CMatrix::from_rows(&[vec![c(0.6, 0.8)]]))
            .build()
            .unwrap();
        let (balanced, tau) = is_balanced(&g).unwrap();
        assert!(balanced);
        assert!(tau.is_some());
    }

    #[test]
    fn balance_of_the_triangle_depends_on_the_twist() {
        let (balanced, tau) = is_balanced(&triangle(c(1.0, 0.0))).unwrap();
        assert!(balanced);
        // The witness really trivializes the signature.
        let g = triangle(c(1.0, 0.0));
        let switched = apply_switching(&g, &tau.unwrap()).unwrap();
        for edge in switched.edges() {
            assert!(
                edge.sigma
                    .max_distance_to(&UnitaryBlock::identity(1))
                    < 1e-12
            );
        }

        let (balanced, tau) = is_balanced(&triangle(c(-1.0, 0.0))).unwrap();
        assert!(!balanced);
        assert!(tau.is_none());
    }
}
