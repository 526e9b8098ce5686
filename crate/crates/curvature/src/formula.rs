use num_complex::Complex64;

/// Closed-form curvature of the unweighted cycle C_N with constant measure
/// `mu0` and a single twist `s` on one edge, at infinite dimension parameter.
///
/// The reference values hold for measure 2; other constant measures follow
/// from the rescaling rule K(G, c*mu) = K(G, mu)/c. Triangles jump at s = 1,
/// quadrilaterals drop to zero away from s = 1, and longer cycles are flat
/// regardless of the twist.
pub fn cycle_curvature_formula(n: usize, s: Complex64, mu0: f64) -> f64 {
    assert!(n >= 3, "cycles need at least three vertices");
    assert!(mu0 > 0.0, "measure must be positive");
    let trivial = (s - Complex64::new(1.0, 0.0)).norm() < 1e-12;
    let at_measure_two = match n {
        3 => {
            if trivial {
                1.25
            } else {
                (5.0 - (17.0 + 8.0 * s.re).sqrt()) / 8.0
            }
        }
        4 => {
            if trivial {
                1.0
            } else {
                0.0
            }
        }
        _ => 0.0,
    };
    at_measure_two * 2.0 / mu0
}
