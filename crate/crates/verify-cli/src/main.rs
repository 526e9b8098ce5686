use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use frustration_cheeger::{
    cheeger_constants, frustration_index, EnumerationMode, FrustrationBackend, FrustrationVariant,
    MatrixNorm, CONNECTED_ENUM_CAP,
};
use graph_core::{read_graph, write_graph};
use linalg_kernel::CMatrix;
use operators::DimensionParam;
use products::{cartesian_product, MeasureMode, ProductSpec, SignatureMode, WeightMode};
use serde_json::json;

use verify_cli::corpus::{full_subset, parse_subset};
use verify_cli::{
    appendix_b_check, demo_triangle, graph_spectrum, square_of, verify_buser, verify_cheeger,
    verify_eigenvalue_ratio, verify_isoperimetry, verify_lichnerowicz, verify_product_cheeger,
    verify_product_square, verify_semigroup, verify_switching, VerificationReport, VerifyError,
    DEFAULT_SEED, DEFAULT_SLACK_TOL,
};

#[derive(Parser)]
#[command(
    name = "graphsig",
    version,
    about = "Spectra, curvature, expansion, and inequality verification for unitarily signed graphs"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized parts of the checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Absolute tolerance on inequality slacks (bisection tolerance for `curvature`)
    #[arg(long, global = true, default_value_t = DEFAULT_SLACK_TOL)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph file and print its basic invariants
    Validate { file: PathBuf },
    /// Eigenvalues of the signed Laplacian, ascending
    Spectrum { file: PathBuf },
    /// Per-vertex and global curvature lower bounds via feasibility bisection
    Curvature {
        file: PathBuf,
        /// Dimension parameter: a positive number or "inf"
        #[arg(long, default_value = "inf", value_parser = parse_dimension)]
        n: DimensionParam,
    },
    /// Multi-way expansion constants with witnessing subpartitions
    Cheeger {
        file: PathBuf,
        /// Number of parts to go up to
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Subset enumeration: "connected" or "all"
        #[arg(long, default_value = "connected")]
        mode: String,
    },
    /// Frustration index of a vertex subset
    Frustration {
        file: PathBuf,
        /// Comma-separated vertex ids; the whole graph when omitted
        #[arg(long)]
        subset: Option<String>,
        /// "average21" or "frobenius"
        #[arg(long, default_value = "average21")]
        norm: String,
        /// "switching" or "unit-vector"
        #[arg(long, default_value = "switching")]
        variant: String,
        /// "auto", "tree", "exhaustive", or "local"
        #[arg(long, default_value = "auto")]
        backend: String,
    },
    /// Run one named verification and report every instance
    Verify {
        file: PathBuf,
        /// buser | lichnerowicz | cheeger | isoperimetry | ratio | semigroup | switching | product
        #[arg(long)]
        check: String,
        /// Depth for multi-way checks (buser, ratio)
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Random test fields per heat-flow time
        #[arg(long, default_value_t = 20)]
        fields: usize,
        /// Random switchings to probe invariance with
        #[arg(long, default_value_t = 20)]
        switches: usize,
    },
    /// Build a Cartesian product graph and write it to a file
    Product {
        file1: PathBuf,
        file2: PathBuf,
        /// "plain" or "chung-tetali"
        #[arg(long, default_value = "plain")]
        weight_mode: String,
        /// "same-group" or "tensor"
        #[arg(long, default_value = "same-group")]
        sig_mode: String,
        /// "unit", "two-mu", or a number
        #[arg(long, default_value = "unit")]
        measure_mode: String,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Built-in worked examples
    Demo {
        #[command(subcommand)]
        which: DemoCommand,
    },
}

#[derive(Subcommand)]
enum DemoCommand {
    /// Sweep the twisted triangle along the unit circle and emit CSV
    Triangle {
        /// Grid spacing for Re(s) over [-1, 1]
        #[arg(long, default_value_t = 0.01)]
        grid: f64,
        /// Write the CSV here instead of stdout
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The four-vertex U(2) example whose best gauge is not a tree gauge
    AppendixB {
        /// Twist radius in (0, 0.85]
        #[arg(long, default_value_t = 0.5)]
        r: f64,
    },
}

fn parse_dimension(s: &str) -> Result<DimensionParam, String> {
    if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
        return Ok(DimensionParam::Infinite);
    }
    let n: f64 = s
        .parse()
        .map_err(|_| format!("expected a positive number or \"inf\", got \"{s}\""))?;
    if n > 0.0 {
        Ok(DimensionParam::Finite(n))
    } else {
        Err("dimension parameter must be positive".into())
    }
}

fn label_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".into())
}

fn matrix_json(m: &CMatrix) -> serde_json::Value {
    let rows: Vec<Vec<Vec<f64>>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| vec![m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    json!(rows)
}

fn emit_report(report: &VerificationReport, as_json: bool) -> bool {
    if as_json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    report.pass
}

fn run(cli: Cli) -> Result<bool, VerifyError> {
    let seed = cli.seed;
    let tol = cli.tol;
    match cli.command {
        Command::Validate { file } => {
            let g = read_graph(&file)?;
            let dc = g.degree_constants();
            let (balanced, _) = graph_core::is_balanced(&g)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "vertices": g.n(),
                        "edges": g.edges().len(),
                        "dimension": g.dim(),
                        "field": format!("{:?}", g.field()).to_lowercase(),
                        "d_non": dc.d_non,
                        "d_nor": dc.d_nor,
                        "balanced": balanced,
                    })
                );
            } else {
                println!(
                    "{}: {} vertices, {} edges, d={} ({:?}), D_non={:.6}, D_nor={:.6}, {}",
                    label_of(&file),
                    g.n(),
                    g.edges().len(),
                    g.dim(),
                    g.field(),
                    dc.d_non,
                    dc.d_nor,
                    if balanced { "balanced" } else { "unbalanced" }
                );
            }
            Ok(true)
        }
        Command::Spectrum { file } => {
            let g = read_graph(&file)?;
            let spectrum = graph_spectrum(&g)?;
            if cli.json {
                println!("{}", json!({ "spectrum": spectrum }));
            } else {
                for v in spectrum {
                    println!("{v:.9}");
                }
            }
            Ok(true)
        }
        Command::Curvature { file, n } => {
            let g = read_graph(&file)?;
            let report = curvature::graph_curvature(&g, n, tol.min(1e-6))?;
            if cli.json {
                let vertices: Vec<_> = report
                    .vertices
                    .iter()
                    .map(|v| json!({ "id": g.id_of(v.vertex), "kappa": v.kappa }))
                    .collect();
                println!(
                    "{}",
                    json!({ "global": report.global, "vertices": vertices })
                );
            } else {
                for v in &report.vertices {
                    println!("{}: {:.9}", g.id_of(v.vertex), v.kappa);
                }
                println!("global: {:.9}", report.global);
            }
            Ok(true)
        }
        Command::Cheeger { file, k, mode } => {
            let g = read_graph(&file)?;
            let mode = match mode.as_str() {
                "connected" => EnumerationMode::ConnectedEnum,
                "all" => EnumerationMode::AllEnum,
                other => {
                    return Err(VerifyError::UnknownCheck(format!(
                        "enumeration mode \"{other}\" (expected \"connected\" or \"all\")"
                    )))
                }
            };
            let reports = cheeger_constants(&g, k, mode)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&reports)?);
            } else {
                for r in &reports {
                    println!("h_{} = {:.9}", r.k, r.value);
                    for part in &r.parts {
                        println!(
                            "  {{{}}}: phi={:.9} iota={:.9} boundary={:.9} measure={:.9}",
                            part.vertices.join(","),
                            part.phi,
                            part.iota,
                            part.boundary,
                            part.measure
                        );
                    }
                }
            }
            Ok(true)
        }
        Command::Frustration {
            file,
            subset,
            norm,
            variant,
            backend,
        } => {
            let g = read_graph(&file)?;
            let subset = match subset {
                Some(spec) => parse_subset(&g, &spec)?,
                None => full_subset(&g),
            };
            let norm = match norm.as_str() {
                "average21" => MatrixNorm::Average21,
                "frobenius" => MatrixNorm::Frobenius,
                other => {
                    return Err(VerifyError::UnknownCheck(format!(
                        "norm \"{other}\" (expected \"average21\" or \"frobenius\")"
                    )))
                }
            };
            let variant = match variant.as_str() {
                "switching" => FrustrationVariant::Switching,
                "unit-vector" => FrustrationVariant::UnitVector,
                other => {
                    return Err(VerifyError::UnknownCheck(format!(
                        "variant \"{other}\" (expected \"switching\" or \"unit-vector\")"
                    )))
                }
            };
            let backend = match backend.as_str() {
                "auto" => frustration_cheeger::auto_backend(&g),
                "tree" => FrustrationBackend::TreeExact,
                "exhaustive" => FrustrationBackend::ExhaustiveO1,
                "local" => FrustrationBackend::LocalOpt,
                other => {
                    return Err(VerifyError::UnknownCheck(format!(
                        "backend \"{other}\" (expected \"auto\", \"tree\", \"exhaustive\", or \"local\")"
                    )))
                }
            };
            let result = frustration_index(&g, &subset, norm, variant, backend)?;
            if cli.json {
                let witness: serde_json::Map<String, serde_json::Value> = result
                    .witness
                    .iter()
                    .map(|(id, m)| (id.clone(), matrix_json(m)))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "value": result.value,
                        "exact": result.exact,
                        "backend": format!("{:?}", result.backend),
                        "witness": witness,
                    })
                );
            } else {
                println!("frustration = {:.9}", result.value);
                println!(
                    "backend: {:?} ({})",
                    result.backend,
                    if result.exact { "exact" } else { "upper bound" }
                );
            }
            Ok(true)
        }
        Command::Verify {
            file,
            check,
            k,
            fields,
            switches,
        } => {
            let g = read_graph(&file)?;
            let label = label_of(&file);
            let report = match check.as_str() {
                "buser" => verify_buser(&g, &label, k, seed, tol)?,
                "lichnerowicz" => verify_lichnerowicz(
                    &g,
                    &label,
                    &[
                        DimensionParam::Finite(2.0),
                        DimensionParam::Finite(5.0),
                        DimensionParam::Infinite,
                    ],
                    seed,
                    tol,
                )?,
                "cheeger" => verify_cheeger(&g, &label, seed, tol)?,
                "isoperimetry" => verify_isoperimetry(&g, &label, seed, tol)?,
                "ratio" => verify_eigenvalue_ratio(&g, &label, k, seed, tol)?,
                "semigroup" => verify_semigroup(&g, &label, fields, seed, tol)?,
                "switching" => verify_switching(&g, &label, switches, seed, tol)?,
                "product" => {
                    let mut report = verify_product_square(&g, &label, seed, tol)?;
                    if g.n() * g.n() <= CONNECTED_ENUM_CAP {
                        let (square, _) = square_of(&g, &label)?;
                        let sub =
                            verify_product_cheeger(&g, &g, &square, &label, 2, seed, tol)?;
                        report.absorb("", sub);
                    }
                    report
                }
                other => return Err(VerifyError::UnknownCheck(other.to_string())),
            };
            Ok(emit_report(&report, cli.json))
        }
        Command::Product {
            file1,
            file2,
            weight_mode,
            sig_mode,
            measure_mode,
            out,
        } => {
            let g1 = read_graph(&file1)?;
            let g2 = read_graph(&file2)?;
            let weight_mode = match weight_mode.as_str() {
                "plain" => WeightMode::Plain,
                "chung-tetali" => WeightMode::ChungTetali,
                other => {
                    return Err(VerifyError::UnknownCheck(format!(
                        "weight mode \"{other}\" (expected \"plain\" or \"chung-tetali\")"
                    )))
                }
            };
            let signature_mode = match sig_mode.as_str() {
                "same-group" => SignatureMode::SameGroup,
                "tensor" => SignatureMode::Tensor,
                other => {
                    return Err(VerifyError::UnknownCheck(format!(
                        "signature mode \"{other}\" (expected \"same-group\" or \"tensor\")"
                    )))
                }
            };
            let measure_mode = match measure_mode.as_str() {
                "unit" => MeasureMode::Unit,
                "two-mu" => MeasureMode::TwoMuOneMuTwo,
                other => match other.parse::<f64>() {
                    Ok(level) if level > 0.0 => MeasureMode::Explicit(level),
                    _ => {
                        return Err(VerifyError::UnknownCheck(format!(
                            "measure mode \"{other}\" (expected \"unit\", \"two-mu\", or a positive number)"
                        )))
                    }
                },
            };
            let spec = ProductSpec {
                weight_mode,
                signature_mode,
                measure_mode,
            };
            let product = cartesian_product(&g1, &g2, spec)?;
            write_graph(&product, &out)?;
            if !cli.json {
                eprintln!(
                    "wrote {} ({} vertices, {} edges)",
                    out.display(),
                    product.n(),
                    product.edges().len()
                );
            }
            Ok(true)
        }
        Command::Demo { which } => match which {
            DemoCommand::Triangle { grid, out } => {
                let (csv, report) = demo_triangle(grid, seed)?;
                match out {
                    Some(path) => {
                        std::fs::write(&path, csv)?;
                        Ok(emit_report(&report, cli.json))
                    }
                    None => {
                        print!("{csv}");
                        eprintln!(
                            "demo-triangle: {} ({} grid points)",
                            if report.pass { "PASS" } else { "FAIL" },
                            report.instances.len() - 2
                        );
                        Ok(report.pass)
                    }
                }
            }
            DemoCommand::AppendixB { r } => {
                let report = appendix_b_check(r, seed)?;
                let margin = report
                    .instances
                    .iter()
                    .find(|i| i.id == "constant gauge beats best tree gauge")
                    .map(|i| i.slack)
                    .unwrap_or(f64::NAN);
                let pass = emit_report(&report, cli.json);
                if !cli.json {
                    println!("margin: {margin:.6}");
                }
                Ok(pass)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
