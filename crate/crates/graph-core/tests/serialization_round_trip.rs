use graph_core::{parse_graph, serialize_graph, Field, SignedGraph};
use linalg_kernel::CMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_unitary_2x2(rng: &mut ChaCha8Rng) -> CMatrix {
    // Explicit parameterization of U(2): phases and a rotation angle.
    let (a, b, t, p) = (
        rng.gen_range(0.0..std::f64::consts::TAU),
        rng.gen_range(0.0..std::f64::consts::TAU),
        rng.gen_range(0.0..std::f64::consts::TAU),
        rng.gen_range(0.0..std::f64::consts::TAU),
    );
    let (ca, sa) = (t.cos(), t.sin());
    let e = |phi: f64| c(phi.cos(), phi.sin());
    CMatrix::from_rows(&[
        vec![e(a) * ca, e(b) * sa],
        vec![-e(p - b) * sa, e(p - a) * ca],
    ])
}

#[test]
fn complex_graph_round_trips_bit_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut builder = SignedGraph::builder(2, Field::Complex);
    for (i, id) in ["ant", "bee", "cat", "dog"].iter().enumerate() {
        builder = builder.vertex(id, 0.5 + 0.37 * i as f64);
    }
    for (u, v) in [("ant", "bee"), ("bee", "cat"), ("cat", "dog"), ("dog", "ant")] {
        builder = builder.edge(u, v, rng.gen_range(0.1..3.0), random_unitary_2x2(&mut rng));
    }
    let g = builder.build().unwrap();

    let text = serialize_graph(&g);
    let reparsed = parse_graph(&text).unwrap();
    assert_eq!(g, reparsed, "serialize/parse must reproduce the graph exactly");

    // And a second round trip produces identical text.
    assert_eq!(text, serialize_graph(&reparsed));
}

#[test]
fn real_graph_writes_single_component_cells() {
    let g = graph_core::standard::signed_cycle(4, c(-1.0, 0.0), 2.0);
    let text = serialize_graph(&g);
    assert!(text.contains("\"field\": \"real\""));
    let reparsed = parse_graph(&text).unwrap();
    assert_eq!(g, reparsed);
    // Real graphs must not serialize imaginary parts at all: every sigma cell
    // is a singleton array.
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    for edge in value["edges"].as_array().unwrap() {
        for row in edge["sigma"].as_array().unwrap() {
            for cell in row.as_array().unwrap() {
                assert_eq!(cell.as_array().unwrap().len(), 1);
            }
        }
    }
}

#[test]
fn ingest_projection_then_round_trip_is_stable() {
    // A block 1e-11 away from unitary: ingest snaps it to the polar factor,
    // after which serialization round-trips verbatim.
    let drift = 1e-11;
    let m = CMatrix::from_rows(&[
        vec![c(0.0, drift), c(1.0 + drift, 0.0)],
        vec![c(1.0, -drift), c(0.0, 0.0)],
    ]);
    let g = SignedGraph::builder(2, Field::Complex)
        .vertex("p", 1.0)
        .vertex("q", 1.0)
        .edge("p", "q", 1.0, m)
        .build()
        .unwrap();
    assert!(graph_core::unitarity_defect(g.edges()[0].sigma.entries()).unwrap() <= 1e-13);

    let text = serialize_graph(&g);
    let reparsed = parse_graph(&text).unwrap();
    assert_eq!(g, reparsed);
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(parse_graph("{").is_err());
    // Wrong field tag.
    let bad_field = r#"{"d":1,"field":"quaternionic","vertices":[{"id":"a","measure":1.0}],"edges":[]}"#;
    assert!(parse_graph(bad_field).is_err());
    // Complex entry in a real graph.
    let complex_cell = r#"{"d":1,"field":"real",
        "vertices":[{"id":"a","measure":1.0},{"id":"b","measure":1.0}],
        "edges":[{"u":"a","v":"b","weight":1.0,"sigma":[[[0.0,1.0]]]}]}"#;
    assert!(parse_graph(complex_cell).is_err());
    // Signature with the wrong shape.
    let bad_shape = r#"{"d":2,"field":"real",
        "vertices":[{"id":"a","measure":1.0},{"id":"b","measure":1.0}],
        "edges":[{"u":"a","v":"b","weight":1.0,"sigma":[[[1.0]]]}]}"#;
    assert!(parse_graph(bad_shape).is_err());
}
