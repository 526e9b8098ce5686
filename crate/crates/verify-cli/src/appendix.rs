use std::f64::consts::PI;

use frustration_cheeger::{assignment_cost, spanning_tree_count, tree_gauge_scan, MatrixNorm};
use graph_core::{Field, SignedGraph};
use linalg_kernel::CMatrix;
use num_complex::Complex64;

use crate::error::VerifyError;
use crate::report::VerificationReport;

/// Largest twist radius accepted by [`appendix_b_check`]. Past this point the
/// separation between the constant gauge and the tree gauges collapses and
/// the strict comparisons below lose their meaning.
pub const MAX_RADIUS: f64 = 0.85;

/// The U(2) blocks of the four-vertex example where no spanning-tree gauge
/// attains the frustration index.
pub struct AppendixMatrices {
    pub r: f64,
    /// `a[0]` is the rotation by a quarter turn; `a[1..=3]` share a common
    /// column and differ by phases at third-of-a-turn spacing.
    pub a: [CMatrix; 4],
    /// `b[k] = a[3]^{-1} a[k]`, so `b[3]` is the identity.
    pub b: [CMatrix; 4],
}

impl AppendixMatrices {
    pub fn new(r: f64) -> Result<Self, VerifyError> {
        if !(r > 0.0 && r <= MAX_RADIUS) {
            return Err(VerifyError::OutOfRange(r));
        }
        let c = (1.0 - r * r).sqrt();
        let a0 = CMatrix::from_real_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let mut a = vec![a0];
        for k in 1..=3 {
            let alpha = 2.0 * (k as f64 - 1.0) * PI / 3.0;
            let phase = Complex64::from_polar(r, alpha);
            a.push(CMatrix::from_rows(&[
                vec![phase, Complex64::new(-c, 0.0)],
                vec![Complex64::new(c, 0.0), phase.conj()],
            ]));
        }
        let a3_inv = a[3].adjoint();
        let b: Vec<CMatrix> = a.iter().map(|m| a3_inv.mul(m).unwrap()).collect();
        Ok(Self {
            r,
            a: a.try_into().unwrap(),
            b: b.try_into().unwrap(),
        })
    }

    /// The constant gauge sending x, y, z to `b[0]` and w to the identity.
    pub fn constant_gauge(&self) -> std::collections::BTreeMap<String, CMatrix> {
        let mut gauge = std::collections::BTreeMap::new();
        for id in ["x", "y", "z"] {
            gauge.insert(id.to_string(), self.b[0].clone());
        }
        gauge.insert("w".to_string(), CMatrix::identity(2));
        gauge
    }
}

/// Four vertices x, y, z, w with identity blocks on xy, yz, yw and the
/// non-trivial blocks on zw and xw. Unit weights and measures.
pub fn appendix_graph(r: f64) -> Result<SignedGraph, VerifyError> {
    let m = AppendixMatrices::new(r)?;
    let graph = SignedGraph::builder(2, Field::Complex)
        .vertex("x", 1.0)
        .vertex("y", 1.0)
        .vertex("z", 1.0)
        .vertex("w", 1.0)
        .edge("x", "y", 1.0, m.b[3].clone())
        .edge("y", "z", 1.0, m.b[3].clone())
        .edge("y", "w", 1.0, m.b[3].clone())
        .edge("z", "w", 1.0, m.b[1].clone())
        .edge("x", "w", 1.0, m.b[2].clone())
        .build()?;
    Ok(graph)
}

/// Verifies the counterexample where the Frobenius frustration minimum over
/// switching gauges is not attained by any spanning-tree gauge:
///
///   (a) the three phased blocks are pairwise sqrt(6) r apart;
///   (b) each sits 2 sqrt(1 - sqrt(1 - r^2)) from the quarter turn;
///   (c) the constant gauge beats the common tree-gauge value in closed form;
///   (d) on the assembled graph, the same strict gap holds against a full
///       census of all spanning-tree gauges.
pub fn appendix_b_check(r: f64, seed: u64) -> Result<VerificationReport, VerifyError> {
    let m = AppendixMatrices::new(r)?;
    let graph = appendix_graph(r)?;
    let mut report = VerificationReport::new("appendix-b", seed, 1e-10);

    let pair_dist = 6.0f64.sqrt() * r;
    for (k, l) in [(1usize, 2usize), (1, 3), (2, 3)] {
        let d = m.a[k].sub(&m.a[l]).unwrap().frobenius_norm();
        report.push_eq(format!("pairwise distance a{k} a{l}"), 0, d, pair_dist);
    }

    let hub_dist = 2.0 * (1.0 - (1.0 - r * r).sqrt()).sqrt();
    for k in 1..=3 {
        let d = m.a[0].sub(&m.a[k]).unwrap().frobenius_norm();
        report.push_eq(format!("distance a0 a{k}"), 0, d, hub_dist);
    }

    report.push_strict(
        "constant gauge beats tree value, closed form",
        0,
        3.0 * hub_dist,
        2.0 * pair_dist,
    );

    let subset: Vec<usize> = (0..graph.n()).collect();
    let tree_count = spanning_tree_count(&graph, &subset)?;
    report.push_eq("spanning tree census", 0, tree_count, 8.0);

    let scan = tree_gauge_scan(&graph, &subset, MatrixNorm::Frobenius, 64)?;
    let constant_cost =
        assignment_cost(&graph, &subset, &m.constant_gauge(), MatrixNorm::Frobenius)?;
    report.push_eq("constant gauge cost on graph", 0, constant_cost, 3.0 * hub_dist);
    report.push_strict(
        "constant gauge beats best tree gauge",
        0,
        constant_cost,
        scan.best_value,
    );
    for (j, value) in scan.values.iter().enumerate() {
        report.push_eq(format!("tree gauge {j} cost"), 0, *value, 2.0 * pair_dist);
    }
    Ok(report)
}
