use std::fmt::Write as _;

use curvature::{cycle_curvature_formula, graph_curvature};
use frustration_cheeger::{cheeger_constants, cheeger_tilde1, EnumerationMode};
use graph_core::standard::signed_cycle;
use num_complex::Complex64;
use operators::DimensionParam;

use crate::error::VerifyError;
use crate::report::VerificationReport;
use crate::spectrum::graph_spectrum;

const BISECTION_TOL: f64 = 1e-9;
const MATCH_TOL: f64 = 1e-6;

/// Sweeps the twisted triangle with vertex measure 2 along the unit circle,
/// s = re + i sqrt(1 - re^2), and emits one CSV row per grid point:
///
///   re_s, k_infinity, lambda_1, lambda_2, h_1, buser_rhs, cheeger_lower, cheeger_upper
///
/// `buser_rhs` is the squared spectral-gap bound 16 d_nor log(2) h_1^2 and
/// the Cheeger columns are the two-sided bounds 2 h~_1^2 / (5 d_non) and
/// 2 h~_1 built from the relaxed expansion constant. The returned report
/// compares the curvature bisection against the closed form at every point
/// and pins the discontinuity at s = 1.
pub fn demo_triangle(step: f64, seed: u64) -> Result<(String, VerificationReport), VerifyError> {
    if !(step > 0.0 && step <= 2.0) {
        return Err(VerifyError::OutOfRange(step));
    }
    let count = (2.0 / step).round().max(1.0) as usize;
    let mut csv = String::from(
        "re_s,k_infinity,lambda_1,lambda_2,h_1,buser_rhs,cheeger_lower,cheeger_upper\n",
    );
    let mut report = VerificationReport::new("demo-triangle", seed, MATCH_TOL);
    for i in 0..=count {
        let re = -1.0 + 2.0 * i as f64 / count as f64;
        let (kappa, row) = triangle_row(re)?;
        report.push_eq(format!("re={re:.6}"), 0, kappa, cycle_curvature_formula(3, s_of(re), 2.0));
        csv.push_str(&row);
    }
    let (near_one, _) = triangle_row(1.0 - 1e-4)?;
    report.push_le("jump: curvature just below s=1", 0, near_one, 0.02);
    let (at_one, _) = triangle_row(1.0)?;
    report.push_eq("jump: curvature at s=1", 0, at_one, 1.25);
    Ok((csv, report))
}

fn s_of(re: f64) -> Complex64 {
    Complex64::new(re, (1.0 - re * re).max(0.0).sqrt())
}

fn clamp(v: f64) -> f64 {
    if v.abs() < 1e-12 {
        0.0
    } else {
        v
    }
}

fn triangle_row(re: f64) -> Result<(f64, String), VerifyError> {
    let g = signed_cycle(3, s_of(re), 2.0);
    let kappa = graph_curvature(&g, DimensionParam::Infinite, BISECTION_TOL)?.global;
    let spectrum = graph_spectrum(&g)?;
    let h1 = cheeger_constants(&g, 1, EnumerationMode::ConnectedEnum)?[0].value;
    let h_tilde = cheeger_tilde1(&g)?;
    let dc = g.degree_constants();
    let buser_rhs = 16.0 * dc.d_nor * 2.0f64.ln() * h1 * h1;
    let lower = 2.0 * h_tilde * h_tilde / (5.0 * dc.d_non);
    let upper = 2.0 * h_tilde;
    let mut row = String::new();
    writeln!(
        row,
        "{:.9},{:.9},{:.9},{:.9},{:.9},{:.9},{:.9},{:.9}",
        re,
        clamp(kappa),
        clamp(spectrum[0]),
        clamp(spectrum[1]),
        clamp(h1),
        clamp(buser_rhs),
        clamp(lower),
        clamp(upper)
    )
    .expect("writing to a String cannot fail");
    Ok((kappa, row))
}
