//! End-to-end acceptance gate. Each numbered criterion prints exactly one
//! PASS/FAIL line; the process exits nonzero if any criterion fails. Run it
//! alone with `cargo test -p verify-cli --test acceptance`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use curvature::{check_cd, cycle_curvature_formula, graph_curvature};
use frustration_cheeger::{
    cheeger_constants, frustration_index, grid_discretization_bound, grid_frustration,
    EnumerationMode, FrustrationBackend, FrustrationVariant, MatrixNorm,
};
use graph_core::standard::signed_cycle;
use graph_core::SignedGraph;
use linalg_kernel::CMatrix;
use num_complex::Complex64;
use operators::DimensionParam;
use products::{cartesian_product, ProductSpec};

use verify_cli::corpus::full_subset;
use verify_cli::{
    appendix_b_check, demo_triangle, main_corpus, sparse_phase_corpus, verify_buser,
    verify_cheeger, verify_dual_buser, verify_eigenvalue_ratio, verify_lichnerowicz,
    verify_product_cheeger, verify_product_square, verify_semigroup, verify_switching,
    LabeledGraph, VerificationReport, DEFAULT_SEED,
};

const SEED: u64 = DEFAULT_SEED;

fn sig(name: &str) -> Complex64 {
    match name {
        "1" => Complex64::new(1.0, 0.0),
        "-1" => Complex64::new(-1.0, 0.0),
        "i" => Complex64::new(0.0, 1.0),
        "pi/6" => Complex64::from_polar(1.0, std::f64::consts::PI / 6.0),
        _ => unreachable!(),
    }
}

const SIGNATURES: [&str; 4] = ["1", "-1", "i", "pi/6"];

fn first_failure(report: &VerificationReport) -> String {
    report
        .instances
        .iter()
        .find(|i| !i.pass)
        .map(|i| {
            format!(
                "instance \"{}\": lhs={:.9e} rhs={:.9e} slack={:.3e}",
                i.id, i.lhs, i.rhs, i.slack
            )
        })
        .unwrap_or_else(|| "report failed with no failing instance".into())
}

fn expect_pass(report: &VerificationReport) -> Result<usize, String> {
    if report.pass {
        Ok(report.instances.len())
    } else {
        Err(first_failure(report))
    }
}

/// Criterion 1: 201-point curvature sweep of the twisted triangle matches
/// the closed form within 1e-6 and reproduces the jump at s = 1.
fn item01() -> Result<String, String> {
    let (csv, report) = demo_triangle(0.01, SEED).map_err(|e| e.to_string())?;
    let points = csv.trim_end().lines().count() - 1;
    if points != 201 {
        return Err(format!("expected 201 grid points, got {points}"));
    }
    expect_pass(&report)?;
    let at_one = report
        .instances
        .iter()
        .find(|i| i.id == "jump: curvature at s=1")
        .ok_or("missing s=1 jump instance")?;
    if (at_one.lhs - 1.25).abs() > 1e-6 {
        return Err(format!("K at s=1 was {:.9}, expected 1.25", at_one.lhs));
    }
    Ok(format!("{points} grid points within 1e-6, jump pinned at 5/4"))
}

/// Criterion 2: four-cycles have curvature 1 exactly when balanced and 0
/// otherwise; all longer cycles are flat for every probed signature.
fn item02() -> Result<String, String> {
    let mut instances = 0;
    for n in 4..=8usize {
        for name in ["1", "-1", "i"] {
            let s = sig(name);
            let g = signed_cycle(n, s, 2.0);
            let bisected = graph_curvature(&g, DimensionParam::Infinite, 1e-9)
                .map_err(|e| e.to_string())?
                .global;
            let expected = if n == 4 && name == "1" { 1.0 } else { 0.0 };
            let formula = cycle_curvature_formula(n, s, 2.0);
            if (formula - expected).abs() > 1e-12 {
                return Err(format!(
                    "closed form for C{n}(s={name}) gave {formula}, expected {expected}"
                ));
            }
            if (bisected - expected).abs() > 1e-6 {
                return Err(format!(
                    "bisection for C{n}(s={name}) gave {bisected:.9}, expected {expected}"
                ));
            }
            instances += 1;
        }
    }
    Ok(format!("{instances} cycle instances match 1/0 closed forms"))
}

/// Criterion 3: every corpus graph satisfies the universal curvature bound
/// CD(2/D_nor - D_non, 2) at PSD tolerance 1e-9.
fn item03(corpus: &[LabeledGraph]) -> Result<String, String> {
    for lg in corpus {
        let dc = lg.graph.degree_constants();
        let kappa = 2.0 / dc.d_nor - dc.d_non;
        let flags = check_cd(&lg.graph, kappa, DimensionParam::Finite(2.0))
            .map_err(|e| format!("{}: {e}", lg.label))?;
        if let Some(x) = flags.iter().position(|ok| !ok) {
            return Err(format!(
                "{}: vertex {} fails CD({kappa:.6}, 2)",
                lg.label,
                lg.graph.id_of(x)
            ));
        }
    }
    Ok(format!(
        "{} random graphs pass CD(2/D_nor - D_non, 2) at every vertex",
        corpus.len()
    ))
}

/// Criterion 4: Lichnerowicz bound on the whole corpus for n = 2, 5, inf.
fn item04(corpus: &[LabeledGraph]) -> Result<String, String> {
    let dims = [
        DimensionParam::Finite(2.0),
        DimensionParam::Finite(5.0),
        DimensionParam::Infinite,
    ];
    let mut instances = 0;
    for lg in corpus {
        let report = verify_lichnerowicz(&lg.graph, &lg.label, &dims, SEED, 1e-6)
            .map_err(|e| format!("{}: {e}", lg.label))?;
        instances += expect_pass(&report).map_err(|m| format!("{}: {m}", lg.label))?;
    }
    Ok(format!(
        "{instances} spectral-gap bounds over {} graphs x 3 dimensions",
        corpus.len()
    ))
}

fn buser_cycles() -> Vec<LabeledGraph> {
    let mut graphs = Vec::new();
    for n in 3..=8usize {
        for name in SIGNATURES {
            graphs.push(LabeledGraph {
                label: format!("C{n}(s={name})"),
                graph: signed_cycle(n, sig(name), 2.0),
            });
        }
    }
    graphs
}

fn buser_products() -> Result<Vec<LabeledGraph>, String> {
    let mut graphs = Vec::new();
    for (m, n) in [(3usize, 3usize), (3, 4)] {
        for s1 in SIGNATURES {
            for s2 in SIGNATURES {
                let g1 = signed_cycle(m, sig(s1), 1.0);
                let g2 = signed_cycle(n, sig(s2), 1.0);
                let product = cartesian_product(&g1, &g2, ProductSpec::plain_same_group())
                    .map_err(|e| e.to_string())?;
                graphs.push(LabeledGraph {
                    label: format!("C{m}(s={s1}) x C{n}(s={s2})"),
                    graph: product,
                });
            }
        }
    }
    Ok(graphs)
}

/// Criterion 5: the Buser inequality for k <= 3 on every probed cycle and on
/// the unit-measure cycle products small enough to enumerate; the triangle
/// instance reproduces the 32 log 2 constant.
fn item05() -> Result<String, String> {
    let mut instances = 0;
    let mut graphs = buser_cycles();
    graphs.extend(buser_products()?);
    let total = graphs.len();
    for lg in &graphs {
        let report = verify_buser(&lg.graph, &lg.label, 3, SEED, 1e-8)
            .map_err(|e| format!("{}: {e}", lg.label))?;
        instances += expect_pass(&report).map_err(|m| format!("{}: {m}", lg.label))?;
    }

    let triangle = signed_cycle(3, sig("-1"), 2.0);
    let h1 = cheeger_constants(&triangle, 1, EnumerationMode::ConnectedEnum)
        .map_err(|e| e.to_string())?[0]
        .value;
    let report = verify_buser(&triangle, "C3(s=-1)", 1, SEED, 1e-8).map_err(|e| e.to_string())?;
    let inst = &report.instances[0];
    let expected_rhs = (32.0 * 2.0f64.ln()).sqrt() * h1;
    if (inst.rhs - expected_rhs).abs() > 1e-12 {
        return Err(format!(
            "triangle Buser bound is {:.12}, expected sqrt(32 log 2) h_1 = {:.12}",
            inst.rhs, expected_rhs
        ));
    }
    Ok(format!(
        "{instances} bounds over {total} graphs; triangle reproduces lambda_1 <= 32 log(2) h_1^2"
    ))
}

/// Criterion 6: the dimension-free two-sided expansion bounds on the
/// corpora of items 3 and 5.
fn item06(corpus: &[LabeledGraph]) -> Result<String, String> {
    let mut graphs = buser_cycles();
    graphs.extend(buser_products()?);
    let mut instances = 0;
    let mut total = 0;
    for lg in corpus.iter().chain(graphs.iter()) {
        let report = verify_cheeger(&lg.graph, &lg.label, SEED, 1e-8)
            .map_err(|e| format!("{}: {e}", lg.label))?;
        instances += expect_pass(&report).map_err(|m| format!("{}: {m}", lg.label))?;
        total += 1;
    }
    Ok(format!(
        "{instances} two-sided gap bounds over {total} graphs"
    ))
}

fn tree_constant_defect(g: &SignedGraph, witness: &BTreeMap<String, CMatrix>) -> f64 {
    // The witness is tree-constant when its zero-residual edges span every
    // connected component: a union-find over edges whose transported block
    // matches exactly gives back one class per component.
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut worst: f64 = 0.0;
    let mut residuals: Vec<(usize, usize, f64)> = Vec::new();
    for e in g.edges() {
        let wu = &witness[g.id_of(e.u)];
        let wv = &witness[g.id_of(e.v)];
        let residual = e
            .sigma
            .entries()
            .mul(wv)
            .and_then(|m| m.sub(wu))
            .map(|m| m.frobenius_norm())
            .unwrap_or(f64::INFINITY);
        residuals.push((e.u, e.v, residual));
    }
    for &(u, v, residual) in &residuals {
        if residual <= 1e-9 {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
    }
    // Any edge crossing two residual classes inside one graph component
    // witnesses a non-tree-constant assignment; report the smallest residual
    // that would have been needed to connect them.
    for &(u, v, residual) in &residuals {
        if find(&mut parent, u) != find(&mut parent, v) {
            worst = worst.max(residual);
        }
    }
    // Connected corpus graphs: everything must collapse to one class.
    let root = find(&mut parent, 0);
    for x in 1..n {
        if find(&mut parent, x) != root {
            worst = worst.max(1.0);
        }
    }
    worst
}

/// Criterion 7: spanning-tree search equals the 720-root phase grid within
/// the discretization bound, with a structurally tree-constant witness.
fn item07() -> Result<String, String> {
    let corpus = sparse_phase_corpus(SEED, 50);
    for lg in &corpus {
        let subset = full_subset(&lg.graph);
        let tree = frustration_index(
            &lg.graph,
            &subset,
            MatrixNorm::Average21,
            FrustrationVariant::Switching,
            FrustrationBackend::TreeExact,
        )
        .map_err(|e| format!("{}: {e}", lg.label))?;
        let grid = grid_frustration(&lg.graph, &subset, 720)
            .map_err(|e| format!("{}: {e}", lg.label))?;
        let bound = grid_discretization_bound(&lg.graph, &subset, 720)
            .map_err(|e| format!("{}: {e}", lg.label))?;
        // The grid minimum can only overshoot the true value; the tree value
        // is exact, so their gap must stay inside the discretization bound.
        if grid < tree.value - 1e-9 {
            return Err(format!(
                "{}: grid minimum {:.9} undershoots the exact value {:.9}",
                lg.label, grid, tree.value
            ));
        }
        if grid - tree.value > bound {
            return Err(format!(
                "{}: grid gap {:.3e} exceeds the discretization bound {:.3e}",
                lg.label,
                grid - tree.value,
                bound
            ));
        }
        let defect = tree_constant_defect(&lg.graph, &tree.witness);
        if defect > 1e-9 {
            return Err(format!(
                "{}: witness is not tree-constant (defect {defect:.3e})",
                lg.label
            ));
        }
    }
    Ok(format!(
        "{} sparse graphs: tree search inside the 720-root grid bound, witnesses tree-constant",
        corpus.len()
    ))
}

/// Criterion 8: the four-vertex U(2) example at r = 1/2.
fn item08() -> Result<String, String> {
    let report = appendix_b_check(0.5, SEED).map_err(|e| e.to_string())?;
    expect_pass(&report)?;
    let margin = report
        .instances
        .iter()
        .find(|i| i.id == "constant gauge beats best tree gauge")
        .ok_or("missing gauge-gap instance")?
        .slack;
    if (margin - 0.253_337_3).abs() > 1e-6 {
        return Err(format!("gauge margin was {margin:.9}, expected about 0.2533373"));
    }
    let pair = report
        .instances
        .iter()
        .find(|i| i.id == "pairwise distance a1 a2")
        .ok_or("missing pairwise-distance instance")?;
    if (pair.lhs - 6.0f64.sqrt() / 2.0).abs() > 1e-10 {
        return Err(format!(
            "pairwise block distance was {:.12}, expected sqrt(6)/2",
            pair.lhs
        ));
    }
    Ok(format!(
        "all block identities at 1e-10; constant gauge beats all 8 tree gauges by {margin:.6}"
    ))
}

/// Criterion 9: product curvature (worst factor, self-product tightness,
/// random-walk half bound) and expansion subadditivity on cycle products.
fn item09() -> Result<String, String> {
    let c3 = signed_cycle(3, sig("i"), 1.0);
    let c4 = signed_cycle(4, sig("pi/6"), 1.0);
    let mut instances = 0;

    let pair = cartesian_product(&c3, &c4, ProductSpec::plain_same_group())
        .map_err(|e| e.to_string())?;
    for (np, nf) in [
        (DimensionParam::Finite(4.0), DimensionParam::Finite(2.0)),
        (DimensionParam::Infinite, DimensionParam::Infinite),
    ] {
        let kp = graph_curvature(&pair, np, 1e-9).map_err(|e| e.to_string())?.global;
        let k1 = graph_curvature(&c3, nf, 1e-9).map_err(|e| e.to_string())?.global;
        let k2 = graph_curvature(&c4, nf, 1e-9).map_err(|e| e.to_string())?.global;
        if kp < k1.min(k2) - 2e-8 {
            return Err(format!(
                "C3 x C4: product curvature {kp:.9} fell below min({k1:.9}, {k2:.9})"
            ));
        }
        instances += 1;
    }

    let square = verify_product_square(&c3, "C3(s=i)", SEED, 2e-8).map_err(|e| e.to_string())?;
    instances += expect_pass(&square).map_err(|m| format!("C3 square: {m}"))?;
    let tight = square
        .instances
        .iter()
        .filter(|i| i.id.contains("tight") && !i.id.contains("skipped"))
        .count();
    if tight != 2 {
        return Err("self-product tightness was not checked at both dimensions".into());
    }

    let (sq33, _) = verify_cli::square_of(&c3, "C3(s=i)").map_err(|e| e.to_string())?;
    let sub33 = verify_product_cheeger(&c3, &c3, &sq33, "C3 x C3", 2, SEED, 1e-9)
        .map_err(|e| e.to_string())?;
    instances += expect_pass(&sub33).map_err(|m| format!("C3 x C3 expansion: {m}"))?;
    let sub34 = verify_product_cheeger(&c3, &c4, &pair, "C3 x C4", 2, SEED, 1e-9)
        .map_err(|e| e.to_string())?;
    instances += expect_pass(&sub34).map_err(|m| format!("C3 x C4 expansion: {m}"))?;

    Ok(format!(
        "{instances} product comparisons: worst-factor, tightness, half bound, subadditivity"
    ))
}

/// Criterion 10: heat-semigroup identities and curvature-driven decay at the
/// certified K of every corpus graph, plus transport bounds where CD(0,inf)
/// holds; appended flat cycles keep that branch non-vacuous.
fn item10(corpus: &[LabeledGraph]) -> Result<String, String> {
    let mut graphs: Vec<LabeledGraph> = Vec::new();
    for n in 3..=6usize {
        for name in ["1", "i"] {
            graphs.push(LabeledGraph {
                label: format!("C{n}(s={name})"),
                graph: signed_cycle(n, sig(name), 2.0),
            });
        }
    }
    let mut instances = 0;
    let mut transported = 0;
    for lg in corpus.iter().chain(graphs.iter()) {
        let report = verify_semigroup(&lg.graph, &lg.label, 20, SEED, 1e-8)
            .map_err(|e| format!("{}: {e}", lg.label))?;
        instances += expect_pass(&report).map_err(|m| format!("{}: {m}", lg.label))?;
        if report.instances.iter().any(|i| i.id.contains("moved mass")) {
            transported += 1;
        }
    }
    if transported == 0 {
        return Err("no graph exercised the transport bounds".into());
    }
    Ok(format!(
        "{instances} heat-flow comparisons; {transported} graphs exercised the transport bounds"
    ))
}

/// Criterion 11: spectra, vertex curvatures, frustration, and expansion
/// constants are invariant under random switchings.
fn item11(corpus: &[LabeledGraph]) -> Result<String, String> {
    let mut instances = 0;
    let sample = &corpus[..10];
    for lg in sample {
        let report = verify_switching(&lg.graph, &lg.label, 20, SEED, 1e-8)
            .map_err(|e| format!("{}: {e}", lg.label))?;
        instances += expect_pass(&report).map_err(|m| format!("{}: {m}", lg.label))?;
    }
    Ok(format!(
        "{instances} invariance comparisons over {} graphs x 20 switchings",
        sample.len()
    ))
}

/// Criterion 12: the expansion-vs-gap bounds special to O(1) signatures,
/// and the dual Buser bound at the top of the spectrum.
fn item12() -> Result<String, String> {
    let mut instances = 0;
    for n in [6usize, 8] {
        let g = signed_cycle(n, sig("-1"), 2.0);
        let report = verify_eigenvalue_ratio(&g, &format!("C{n}(s=-1)"), 3, SEED, 1e-8)
            .map_err(|e| e.to_string())?;
        instances += expect_pass(&report).map_err(|m| format!("C{n}: {m}"))?;
    }
    let dual = verify_dual_buser(&[4, 5, 6, 7, 8, 9], SEED, 1e-8).map_err(|e| e.to_string())?;
    instances += expect_pass(&dual).map_err(|m| format!("dual: {m}"))?;
    Ok(format!(
        "{instances} ratio and dual-Buser bounds across even and odd cycles"
    ))
}

fn main() {
    let overall = Instant::now();
    println!("acceptance gate (seed {SEED})");
    let corpus = main_corpus(SEED);

    let items: Vec<(&str, Box<dyn Fn() -> Result<String, String>>)> = vec![
        ("01 triangle-curvature-curve", Box::new(item01)),
        ("02 cycle-curvatures", Box::new(item02)),
        ("03 universal-bound", Box::new({ let c = corpus.clone(); move || item03(&c) })),
        ("04 lichnerowicz", Box::new({ let c = corpus.clone(); move || item04(&c) })),
        ("05 buser", Box::new(item05)),
        ("06 cheeger-two-sided", Box::new({ let c = corpus.clone(); move || item06(&c) })),
        ("07 tree-exactness", Box::new(item07)),
        ("08 appendix-b", Box::new(item08)),
        ("09 products", Box::new(item09)),
        ("10 semigroup", Box::new({ let c = corpus.clone(); move || item10(&c) })),
        ("11 switching-invariance", Box::new({ let c = corpus.clone(); move || item11(&c) })),
        ("12 o1-ratio-and-dual", Box::new(item12)),
    ];

    let mut failures = 0;
    for (name, run) in &items {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(Ok(detail)) => {
                println!("acceptance {name}: PASS ({elapsed:.1}s) - {detail}");
            }
            Ok(Err(message)) => {
                failures += 1;
                println!("acceptance {name}: FAIL ({elapsed:.1}s) - {message}");
            }
            Err(_) => {
                failures += 1;
                println!("acceptance {name}: FAIL ({elapsed:.1}s) - panicked");
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        items.len() - failures,
        items.len(),
        overall.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(101);
    }
}
