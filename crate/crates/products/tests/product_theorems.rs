//! The product constructions against the theorems they exist for: curvature
//! of a product dominates the worst factor (at half strength for the random
//! walk weights), expansion constants are subadditive across factors, and
//! frustration of a product subset is controlled by the factor values.

use curvature::graph_curvature;
use frustration_cheeger::{
    cheeger_constants, frustration_index, EnumerationMode, FrustrationBackend, FrustrationVariant,
    MatrixNorm,
};
use graph_core::{standard, Field, SignedGraph};
use linalg_kernel::CMatrix;
use num_complex::Complex64;
use operators::DimensionParam;
use products::{cartesian_product, commuting_check, MeasureMode, ProductSpec, SignatureMode, WeightMode};

fn unit_edge() -> SignedGraph {
    SignedGraph::builder(1, Field::Real)
        .vertex("a", 1.0)
        .vertex("b", 1.0)
        .edge("a", "b", 1.0, CMatrix::from_real_rows(&[vec![1.0]]))
        .build()
        .unwrap()
}

#[test]
fn product_curvature_dominates_the_worst_factor() {
    let g1 = standard::triangle_with_twist(Complex64::new(-1.0, 0.0), 1.0);
    let g2 = unit_edge();
    assert!(commuting_check(&g1, &g2, 1e-10));
    let p = cartesian_product(&g1, &g2, ProductSpec::plain_same_group()).unwrap();

    for n in [DimensionParam::Finite(2.0), DimensionParam::Infinite] {
        let k1 = graph_curvature(&g1, n, 1e-9).unwrap().global;
        let k2 = graph_curvature(&g2, n, 1e-9).unwrap().global;
        let n12 = match n {
            DimensionParam::Finite(v) => DimensionParam::Finite(2.0 * v),
            DimensionParam::Infinite => DimensionParam::Infinite,
        };
        let kp = graph_curvature(&p, n12, 1e-9).unwrap().global;
        assert!(
            kp >= k1.min(k2) - 2e-8,
            "product curvature {kp} below min({k1}, {k2})"
        );
    }
}

#[test]
fn tensor_embedding_needs_no_commutation() {
    let swap = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    let flip = CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]);
    let g1 = SignedGraph::builder(2, Field::Real)
        .vertex("a", 1.0)
        .vertex("b", 1.0)
        .edge("a", "b", 1.0, swap)
        .build()
        .unwrap();
    let g2 = SignedGraph::builder(2, Field::Real)
        .vertex("a", 1.0)
        .vertex("b", 1.0)
        .edge("a", "b", 1.0, flip)
        .build()
        .unwrap();
    assert!(!commuting_check(&g1, &g2, 1e-10));

    let p = cartesian_product(&g1, &g2, ProductSpec::plain_tensor()).unwrap();
    let k1 = graph_curvature(&g1, DimensionParam::Infinite, 1e-9)
        .unwrap()
        .global;
    let k2 = graph_curvature(&g2, DimensionParam::Infinite, 1e-9)
        .unwrap()
        .global;
    let kp = graph_curvature(&p, DimensionParam::Infinite, 1e-9)
        .unwrap()
        .global;
    assert!(
        kp >= k1.min(k2) - 2e-8,
        "tensor product curvature {kp} below min({k1}, {k2})"
    );
}

#[test]
fn random_walk_weights_keep_half_the_curvature() {
    let one = CMatrix::from_real_rows(&[vec![1.0]]);
    let mut b = SignedGraph::builder(1, Field::Real);
    for id in ["a", "b", "c"] {
        b = b.vertex(id, 2.0);
    }
    let g = b
        .edge("a", "b", 1.0, one.clone())
        .edge("b", "c", 1.0, one.clone())
        .edge("a", "c", 1.0, one)
        .build()
        .unwrap();
    let p = cartesian_product(&g, &g, ProductSpec::chung_tetali()).unwrap();
    for x in 0..p.n() {
        assert!((p.measure(x) - 8.0).abs() < 1e-12);
    }
    let k = graph_curvature(&g, DimensionParam::Finite(2.0), 1e-9)
        .unwrap()
        .global;
    let kp = graph_curvature(&p, DimensionParam::Finite(4.0), 1e-9)
        .unwrap()
        .global;
    assert!(
        kp >= 0.5 * k - 2e-8,
        "random-walk product curvature {kp} below half of {k}"
    );
}

#[test]
fn expansion_constants_are_subadditive_across_factors() {
    let s = Complex64::from_polar(1.0, 2.0);
    let g1 = standard::signed_cycle(3, s, 1.0);
    let g2 = unit_edge();
    let p = cartesian_product(&g1, &g2, ProductSpec::plain_same_group()).unwrap();

    let h1 = cheeger_constants(&g1, 2, EnumerationMode::ConnectedEnum).unwrap();
    let h2 = cheeger_constants(&g2, 2, EnumerationMode::ConnectedEnum).unwrap();
    let hp = cheeger_constants(&p, 4, EnumerationMode::ConnectedEnum).unwrap();

    for k in 1..=2usize {
        for l in 1..=2usize {
            let bound = h1[k - 1].value + h2[l - 1].value;
            let got = hp[k * l - 1].value;
            assert!(
                got <= bound + 1e-9,
                "h_{} = {got} above h_{k} + h_{l} = {bound}",
                k * l
            );
        }
    }
}

#[test]
fn subset_frustration_is_controlled_by_the_factors() {
    let s1 = Complex64::from_polar(1.0, 1.3);
    let s2 = Complex64::from_polar(1.0, -2.1);
    let g1 = standard::signed_cycle(3, s1, 1.0);
    let g2 = standard::signed_cycle(4, s2, 1.0);
    let p = cartesian_product(&g1, &g2, ProductSpec::plain_same_group()).unwrap();

    let iota = |g: &SignedGraph, subset: &[usize]| {
        frustration_index(
            g,
            subset,
            MatrixNorm::Average21,
            FrustrationVariant::Switching,
            FrustrationBackend::TreeExact,
        )
        .unwrap()
        .value
    };

    let cases: [(Vec<usize>, Vec<usize>); 3] = [
        ((0..3).collect(), (0..4).collect()),
        (vec![0, 1], (0..4).collect()),
        ((0..3).collect(), vec![1, 2]),
    ];
    for (s1_sub, s2_sub) in cases {
        let i1 = iota(&g1, &s1_sub);
        let i2 = iota(&g2, &s2_sub);
        let product_subset: Vec<usize> = (0..p.n())
            .filter(|&v| {
                let (a, b) = products::split_id(p.id_of(v)).unwrap();
                s1_sub.contains(&g1.index_of(a).unwrap()) && s2_sub.contains(&g2.index_of(b).unwrap())
            })
            .collect();
        let ip = iota(&p, &product_subset);
        let bound = s1_sub.len() as f64 * i2 + s2_sub.len() as f64 * i1;
        assert!(
            ip <= bound + 1e-9,
            "product subset frustration {ip} above {bound}"
        );
    }
}

#[test]
fn explicit_measure_rescales_curvature_as_promised() {
    // Constant factor measures nu1 = nu2 = 1 and product measure nu: the
    // product satisfies the bound with min(K1, K2) / nu.
    let g = standard::triangle_with_twist(Complex64::new(1.0, 0.0), 1.0);
    let e = unit_edge();
    let nu = 2.0;
    let spec = ProductSpec {
        weight_mode: WeightMode::Plain,
        signature_mode: SignatureMode::SameGroup,
        measure_mode: MeasureMode::Explicit(nu),
    };
    let p = cartesian_product(&g, &e, spec).unwrap();
    let k1 = graph_curvature(&g, DimensionParam::Infinite, 1e-9)
        .unwrap()
        .global;
    let k2 = graph_curvature(&e, DimensionParam::Infinite, 1e-9)
        .unwrap()
        .global;
    let kp = graph_curvature(&p, DimensionParam::Infinite, 1e-9)
        .unwrap()
        .global;
    assert!(kp >= k1.min(k2) / nu - 2e-8);
}
