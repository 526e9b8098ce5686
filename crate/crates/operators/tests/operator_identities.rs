//! Structural identities tying the Laplacian, the forms, and switching
//! together, exercised on randomly generated weighted graphs.

use graph_core::{apply_switching, polar_project, Field, SignedGraph, SwitchingFunction, UnitaryBlock};
use std::collections::BTreeMap;
use linalg_kernel::{CMatrix, HermitianMatrix};
use num_complex::Complex64;
use operators::{
    apply_laplacian, gamma_field, gamma_fields, scalar_laplacian, ConnectionLaplacian, VectorField,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    if d == 1 {
        let theta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        return CMatrix::from_rows(&[vec![Complex64::from_polar(1.0, theta)]]);
    }
    loop {
        let raw = CMatrix::from_fn(d, d, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        if let Ok(u) = polar_project(&raw) {
            return u;
        }
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, d: usize) -> SignedGraph {
    let mut builder = SignedGraph::builder(d, Field::Complex);
    for v in 0..n {
        builder = builder.vertex(&format!("v{v}"), rng.gen_range(0.5..2.0));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(0.35) {
                edges.push((u, v));
            }
        }
    }
    for (u, v) in edges {
        builder = builder.edge(
            &format!("v{u}"),
            &format!("v{v}"),
            rng.gen_range(0.5..2.0),
            random_unitary(rng, d),
        );
    }
    builder.build().unwrap()
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, d: usize) -> VectorField {
    VectorField::from_fn(n, d, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn random_switching(rng: &mut ChaCha8Rng, graph: &SignedGraph) -> SwitchingFunction {
    let mut tau = SwitchingFunction::new(BTreeMap::new());
    for id in graph.vertex_ids() {
        let block = UnitaryBlock::new(random_unitary(rng, graph.dim())).unwrap();
        tau.insert(id, block);
    }
    tau
}

/// (tau f)(x) = tau(x) f(x).
fn switch_field(graph: &SignedGraph, tau: &SwitchingFunction, f: &VectorField) -> VectorField {
    let d = graph.dim();
    VectorField::from_fn(graph.n(), d, |x, i| {
        let block = tau.get(graph.id_of(x)).unwrap().entries();
        (0..d).map(|j| block[(i, j)] * f.at(x)[j]).sum()
    })
}

#[test]
fn gamma_sums_against_the_laplacian_inner_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for &(n, d) in &[(6usize, 1usize), (5, 2), (7, 2)] {
        let graph = random_graph(&mut rng, n, d);
        let f = random_field(&mut rng, n, d);
        let g = random_field(&mut rng, n, d);
        let gamma = gamma_field(&graph, &f, &g).unwrap();
        let total: Complex64 = (0..n).map(|x| graph.measure(x) * gamma[x]).sum();
        let lap_g = apply_laplacian(&graph, &g, true).unwrap();
        let paired = f.inner_product(&lap_g, &graph);
        assert!(
            (total + paired).norm() <= 1e-10,
            "summation by parts broke: {total} vs {}",
            -paired
        );
    }
}

#[test]
fn scalar_laplacian_has_zero_weighted_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let graph = random_graph(&mut rng, 7, 1);
    let values: Vec<Complex64> = (0..7)
        .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
        .collect();
    let image = scalar_laplacian(&graph, &values);
    let mean: Complex64 = (0..7).map(|x| graph.measure(x) * image[x]).sum();
    assert!(mean.norm() <= 1e-10);
}

#[test]
fn switching_conjugates_the_gamma_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for &d in &[1usize, 2] {
        let graph = random_graph(&mut rng, 6, d);
        let tau = random_switching(&mut rng, &graph);
        let switched = apply_switching(&graph, &tau).unwrap();
        let f = random_field(&mut rng, 6, d);
        let h = random_field(&mut rng, 6, d);
        // sigma' = tau(x)^H sigma tau(y), so the switched form applied to
        // (f, h) matches the original form applied to (tau f, tau h).
        let lifted_f = switch_field(&graph, &tau, &f);
        let lifted_h = switch_field(&graph, &tau, &h);
        let (switched_gamma, switched_gamma2) = gamma_fields(&switched, &f, &h).unwrap();
        let (gamma, gamma2) = gamma_fields(&graph, &lifted_f, &lifted_h).unwrap();
        for x in 0..6 {
            assert!((switched_gamma[x] - gamma[x]).norm() <= 1e-10);
            assert!((switched_gamma2[x] - gamma2[x]).norm() <= 1e-10);
        }
    }
}

#[test]
fn block_diagonal_signatures_split_the_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    // One combinatorial graph, three signature assignments: diag(s1, s2) in
    // dimension 2, and s1, s2 separately in dimension 1.
    let n = 6;
    let skeleton = random_graph(&mut rng, n, 1);
    let phases: Vec<(Complex64, Complex64)> = skeleton
        .edges()
        .iter()
        .map(|_| {
            (
                Complex64::from_polar(1.0, rng.gen_range(-3.0..3.0)),
                Complex64::from_polar(1.0, rng.gen_range(-3.0..3.0)),
            )
        })
        .collect();

    let build = |select: &dyn Fn(usize) -> CMatrix, d: usize| -> SignedGraph {
        let mut builder = SignedGraph::builder(d, Field::Complex);
        for (x, id) in skeleton.vertex_ids().iter().enumerate() {
            builder = builder.vertex(id, skeleton.measure(x));
        }
        for (k, e) in skeleton.edges().iter().enumerate() {
            builder = builder.edge(
                skeleton.id_of(e.u),
                skeleton.id_of(e.v),
                e.weight,
                select(k),
            );
        }
        builder.build().unwrap()
    };

    let joint = build(
        &|k| {
            let (s1, s2) = phases[k];
            CMatrix::from_fn(2, 2, |r, c| {
                if r == 0 && c == 0 {
                    s1
                } else if r == 1 && c == 1 {
                    s2
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        },
        2,
    );
    let first = build(&|k| CMatrix::from_rows(&[vec![phases[k].0]]), 1);
    let second = build(&|k| CMatrix::from_rows(&[vec![phases[k].1]]), 1);

    let f = random_field(&mut rng, n, 2);
    let f1 = VectorField::from_fn(n, 1, |x, _| f.at(x)[0]);
    let f2 = VectorField::from_fn(n, 1, |x, _| f.at(x)[1]);
    let joint_gamma = gamma_field(&joint, &f, &f).unwrap();
    let gamma_1 = gamma_field(&first, &f1, &f1).unwrap();
    let gamma_2 = gamma_field(&second, &f2, &f2).unwrap();
    for x in 0..n {
        assert!((joint_gamma[x] - gamma_1[x] - gamma_2[x]).norm() <= 1e-10);
    }
}

#[test]
fn tensor_lift_replicates_the_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let base = random_graph(&mut rng, 6, 1);
    let mut builder = SignedGraph::builder(2, Field::Complex);
    for (x, id) in base.vertex_ids().iter().enumerate() {
        builder = builder.vertex(id, base.measure(x));
    }
    for e in base.edges() {
        let lifted = e.sigma.entries().kron(&CMatrix::identity(2));
        builder = builder.edge(base.id_of(e.u), base.id_of(e.v), e.weight, lifted);
    }
    let lifted = builder.build().unwrap();

    let f = random_field(&mut rng, 6, 1);
    let base_gamma = gamma_field(&base, &f, &f).unwrap();
    for slot in 0..2 {
        let embedded = VectorField::from_fn(6, 2, |x, i| {
            if i == slot {
                f.at(x)[0]
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let lifted_gamma = gamma_field(&lifted, &embedded, &embedded).unwrap();
        for x in 0..6 {
            assert!((lifted_gamma[x] - base_gamma[x]).norm() <= 1e-10);
        }
    }
}

#[test]
fn balanced_graphs_share_the_spectrum_of_the_trivial_signature() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for &d in &[1usize, 2] {
        let skeleton = random_graph(&mut rng, 6, d);
        let trivial = {
            let mut builder = SignedGraph::builder(d, Field::Complex);
            for (x, id) in skeleton.vertex_ids().iter().enumerate() {
                builder = builder.vertex(id, skeleton.measure(x));
            }
            for e in skeleton.edges() {
                builder = builder.edge(
                    skeleton.id_of(e.u),
                    skeleton.id_of(e.v),
                    e.weight,
                    CMatrix::identity(d),
                );
            }
            builder.build().unwrap()
        };
        let tau = random_switching(&mut rng, &trivial);
        let balanced = apply_switching(&trivial, &tau).unwrap();

        let spec_trivial = ConnectionLaplacian::assemble(&trivial).eigen().unwrap();
        let spec_balanced = ConnectionLaplacian::assemble(&balanced).eigen().unwrap();
        for (a, b) in spec_trivial
            .eigenvalues
            .iter()
            .zip(spec_balanced.eigenvalues.iter())
        {
            assert!((a - b).abs() <= 1e-9);
        }
    }
}

#[test]
fn spectrum_is_invariant_under_switching() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let graph = random_graph(&mut rng, 6, 2);
    let reference = ConnectionLaplacian::assemble(&graph).eigen().unwrap();
    for _ in 0..3 {
        let tau = random_switching(&mut rng, &graph);
        let switched = apply_switching(&graph, &tau).unwrap();
        let spec = ConnectionLaplacian::assemble(&switched).eigen().unwrap();
        for (a, b) in reference.eigenvalues.iter().zip(spec.eigenvalues.iter()) {
            assert!((a - b).abs() <= 1e-9);
        }
    }
}

#[test]
fn spectrum_sits_inside_the_degree_window() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for &(n, d) in &[(5usize, 1usize), (6, 2), (8, 1)] {
        let graph = random_graph(&mut rng, n, d);
        let eig = ConnectionLaplacian::assemble(&graph).eigen().unwrap();
        let upper = 2.0 * graph.degree_constants().d_non + 1e-9;
        for &lambda in &eig.eigenvalues {
            assert!(lambda >= -1e-9, "negative eigenvalue {lambda}");
            assert!(lambda <= upper, "eigenvalue {lambda} above {upper}");
        }
    }
}

#[test]
fn symmetrized_eigenvectors_transport_to_the_laplacian_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let graph = random_graph(&mut rng, 6, 2);
    let lap = ConnectionLaplacian::assemble(&graph);
    let eig = lap.eigen().unwrap();
    let size = 6 * 2;
    for k in 0..size {
        let field = lap.eigenvector_field(&eig, k);
        let image = lap.minus_delta().mul_vec(field.data()).unwrap();
        for (idx, &val) in image.iter().enumerate() {
            let residual = (val - eig.eigenvalues[k] * field.data()[idx]).norm();
            assert!(residual <= 1e-9, "transport residual {residual} at {idx}");
        }
    }
}

#[test]
fn symmetrized_matrix_is_similar_to_minus_delta() {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let graph = random_graph(&mut rng, 7, 1);
    let lap = ConnectionLaplacian::assemble(&graph);
    // Conjugating M by D_mu^{1/2} must land exactly on the Hermitian matrix.
    let n = graph.n();
    let half = CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::new(graph.measure(r).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let half_inv = CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::new(1.0 / graph.measure(r).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let conjugated = half
        .mul(lap.minus_delta())
        .unwrap()
        .mul(&half_inv)
        .unwrap();
    let difference = conjugated.sub(lap.symmetrized().as_matrix()).unwrap();
    assert!(difference.max_abs() <= 1e-12);
    let _ = HermitianMatrix::new(conjugated).expect("conjugated matrix stays Hermitian");
}
