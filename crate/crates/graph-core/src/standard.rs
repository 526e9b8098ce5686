//! Small parameterized graph families used throughout the test and
//! verification suites.

use linalg_kernel::CMatrix;
use num_complex::Complex64;

use crate::graph::{Field, SignedGraph};

fn scalar(z: Complex64) -> CMatrix {
    CMatrix::from_rows(&[vec![z]])
}

fn field_for(z: Complex64) -> Field {
    if z.im == 0.0 {
        Field::Real
    } else {
        Field::Complex
    }
}

/// Cycle on n >= 3 vertices, unit weights, constant vertex measure. All edges
/// carry the identity except the closing edge, which carries the scalar s;
/// the cycle signature is therefore s.
pub fn signed_cycle(n: usize, s: Complex64, measure: f64) -> SignedGraph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    assert!(n < 100, "two-digit vertex labels");
    let mut builder = SignedGraph::builder(1, field_for(s));
    for i in 0..n {
        builder = builder.vertex(&format!("v{i:02}"), measure);
    }
    for i in 0..n - 1 {
        builder = builder.edge(
            &format!("v{i:02}"),
            &format!("v{:02}", i + 1),
            1.0,
            scalar(Complex64::new(1.0, 0.0)),
        );
    }
    builder = builder.edge(&format!("v{:02}", n - 1), "v00", 1.0, scalar(s));
    builder.build().expect("cycle construction is valid")
}

/// Path on n >= 2 vertices, unit weights and identity signature.
pub fn path_graph(n: usize, measure: f64) -> SignedGraph {
    assert!(n >= 2 && n < 100);
    let mut builder = SignedGraph::builder(1, Field::Real);
    for i in 0..n {
        builder = builder.vertex(&format!("v{i:02}"), measure);
    }
    for i in 0..n - 1 {
        builder = builder.edge(
            &format!("v{i:02}"),
            &format!("v{:02}", i + 1),
            1.0,
            scalar(Complex64::new(1.0, 0.0)),
        );
    }
    builder.build().expect("path construction is valid")
}

/// Triangle on x, y, z with unit weights: identity on xy and xz, the scalar
/// s on yz. The standard one-twisted-edge example.
pub fn triangle_with_twist(s: Complex64, measure: f64) -> SignedGraph {
    SignedGraph::builder(1, field_for(s))
        .vertex("x", measure)
        .vertex("y", measure)
        .vertex("z", measure)
        .edge("x", "y", 1.0, scalar(Complex64::new(1.0, 0.0)))
        .edge("x", "z", 1.0, scalar(Complex64::new(1.0, 0.0)))
        .edge("y", "z", 1.0, scalar(s))
        .build()
        .expect("triangle construction is valid")
}
