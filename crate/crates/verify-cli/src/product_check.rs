use curvature::graph_curvature;
use frustration_cheeger::{cheeger_constants, EnumerationMode, CONNECTED_ENUM_CAP};
use graph_core::SignedGraph;
use operators::DimensionParam;
use products::{cartesian_product, commuting_check, MeasureMode, ProductSpec};

use crate::error::VerifyError;
use crate::report::VerificationReport;

const CURVATURE_TOL: f64 = 1e-9;

fn constant_measure(g: &SignedGraph) -> Option<f64> {
    let first = g.measure(0);
    g.measures()
        .iter()
        .all(|&m| (m - first).abs() < 1e-12)
        .then_some(first)
}

fn dim_param(n: f64) -> DimensionParam {
    if n.is_infinite() {
        DimensionParam::Infinite
    } else {
        DimensionParam::Finite(n)
    }
}

fn doubled(n: f64) -> DimensionParam {
    if n.is_infinite() {
        DimensionParam::Infinite
    } else {
        DimensionParam::Finite(2.0 * n)
    }
}

/// The Cartesian square of `g` at the measure level of its (constant)
/// vertex measure, together with whether the factor blocks commute. When
/// they do, the square stays in the same signature group; otherwise it is
/// built with the tensor-embedded signature, for which the product curvature
/// statements hold unconditionally.
pub fn square_of(g: &SignedGraph, label: &str) -> Result<(SignedGraph, bool), VerifyError> {
    let Some(level) = constant_measure(g) else {
        return Err(VerifyError::PreconditionFailed {
            check: "product",
            detail: format!("{label} has a non-constant vertex measure; the product curvature statements compare at a fixed measure level"),
        });
    };
    let commuting = commuting_check(g, g, 1e-9);
    let spec = if commuting {
        ProductSpec {
            measure_mode: MeasureMode::Explicit(level),
            ..ProductSpec::plain_same_group()
        }
    } else {
        ProductSpec {
            measure_mode: MeasureMode::Explicit(level),
            ..ProductSpec::plain_tensor()
        }
    };
    Ok((cartesian_product(g, g, spec)?, commuting))
}

/// Curvature of Cartesian squares. For a graph with constant vertex measure
/// the square built with plain weights and the same measure level satisfies
///
///   K_{2n}(G x G) >= K_n(G)    (worst-factor bound)
///
/// and when the signature blocks commute the bound is an equality, checked
/// here two-sided. The random-walk (Chung-Tetali) square with its doubled
/// product measure keeps at least half the curvature. Factor dimensions are
/// probed at n = 2 and n = infinity.
pub fn verify_product_square(
    g: &SignedGraph,
    label: &str,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    let (square, commuting) = square_of(g, label)?;
    let ct = cartesian_product(g, g, ProductSpec::chung_tetali())?;

    let mut report = VerificationReport::new("product", seed, tol);
    for n in [2.0, f64::INFINITY] {
        let factor = graph_curvature(g, dim_param(n), CURVATURE_TOL)?.global;
        let product = graph_curvature(&square, doubled(n), CURVATURE_TOL)?.global;
        let name = if n.is_infinite() { "inf".to_string() } else { format!("{n}") };
        report.push_le(
            format!("{label}: square keeps curvature, n={name}"),
            0,
            factor,
            product,
        );
        if commuting {
            report.push_eq(
                format!("{label}: square curvature is tight, n={name}"),
                0,
                product,
                factor,
            );
        } else {
            report.push_skipped(
                format!("{label}: square curvature is tight, n={name}"),
                0,
                "non-commuting blocks",
            );
        }
        let ct_curv = graph_curvature(&ct, doubled(n), CURVATURE_TOL)?.global;
        report.push_le(
            format!("{label}: random-walk square keeps half, n={name}"),
            0,
            0.5 * factor,
            ct_curv,
        );
    }
    Ok(report)
}

/// Subadditivity of multi-way expansion across a Cartesian product:
/// h_{k l}(G1 x G2) <= h_k(G1) + h_l(G2) for k, l up to `kl_max`.
pub fn verify_product_cheeger(
    g1: &SignedGraph,
    g2: &SignedGraph,
    product: &SignedGraph,
    label: &str,
    kl_max: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    if product.n() > CONNECTED_ENUM_CAP {
        return Err(VerifyError::BackendUnsupported {
            check: "product",
            detail: format!(
                "{label} has {} vertices; expansion constants enumerate subsets up to {CONNECTED_ENUM_CAP}",
                product.n()
            ),
        });
    }
    let mut report = VerificationReport::new("product-cheeger", seed, tol);
    let h1 = cheeger_constants(g1, kl_max, EnumerationMode::ConnectedEnum)?;
    let h2 = cheeger_constants(g2, kl_max, EnumerationMode::ConnectedEnum)?;
    let hp = cheeger_constants(product, kl_max * kl_max, EnumerationMode::ConnectedEnum)?;
    for k in 1..=kl_max {
        for l in 1..=kl_max {
            report.push_le(
                format!("{label}: h_{}{} vs h_{k} + h_{l}", k, l),
                k * l,
                hp[k * l - 1].value,
                h1[k - 1].value + h2[l - 1].value,
            );
        }
    }
    Ok(report)
}
