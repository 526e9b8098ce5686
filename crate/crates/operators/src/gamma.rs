use crate::error::OperatorError;
use crate::field::VectorField;
use crate::laplacian::{apply_laplacian, scalar_laplacian};
use graph_core::SignedGraph;
use num_complex::Complex64;

/// Both carre du champ fields of a pair of vector fields, evaluated from the
/// defining identities:
///
///   2 Gamma(f,h)  = Delta(f^T conj(h)) - f^T conj(lap h) - (lap f)^T conj(h)
///   2 Gamma2(f,h) = Delta(Gamma(f,h)) - Gamma(f, lap h) - Gamma(lap f, h)
///
/// where `lap` is the signed Laplacian and `Delta` the unsigned one acting on
/// scalar fields. The forms are linear in the first slot and conjugate-linear
/// in the second.
pub fn gamma_fields(
    graph: &SignedGraph,
    f: &VectorField,
    h: &VectorField,
) -> Result<(Vec<Complex64>, Vec<Complex64>), OperatorError> {
    f.check_shape(graph)?;
    h.check_shape(graph)?;
    let lap_f = apply_laplacian(graph, f, true)?;
    let lap_h = apply_laplacian(graph, h, true)?;

    let gamma = gamma_from_definition(graph, f, h, &lap_f, &lap_h);

    let d_gamma = scalar_laplacian(graph, &gamma);
    let lap_lap_f = apply_laplacian(graph, &lap_f, true)?;
    let lap_lap_h = apply_laplacian(graph, &lap_h, true)?;
    let gamma_f_laph = gamma_from_definition(graph, f, &lap_h, &lap_f, &lap_lap_h);
    let gamma_lapf_h = gamma_from_definition(graph, &lap_f, h, &lap_lap_f, &lap_h);

    let gamma_two: Vec<Complex64> = (0..graph.n())
        .map(|x| 0.5 * (d_gamma[x] - gamma_f_laph[x] - gamma_lapf_h[x]))
        .collect();
    Ok((gamma, gamma_two))
}

/// Gamma(f,h) only, from the defining identity.
pub fn gamma_field(
    graph: &SignedGraph,
    f: &VectorField,
    h: &VectorField,
) -> Result<Vec<Complex64>, OperatorError> {
    f.check_shape(graph)?;
    h.check_shape(graph)?;
    let lap_f = apply_laplacian(graph, f, true)?;
    let lap_h = apply_laplacian(graph, h, true)?;
    Ok(gamma_from_definition(graph, f, h, &lap_f, &lap_h))
}

fn gamma_from_definition(
    graph: &SignedGraph,
    f: &VectorField,
    h: &VectorField,
    lap_f: &VectorField,
    lap_h: &VectorField,
) -> Vec<Complex64> {
    let n = graph.n();
    let product: Vec<Complex64> = (0..n).map(|x| dot_conj(f.at(x), h.at(x))).collect();
    let d_product = scalar_laplacian(graph, &product);
    (0..n)
        .map(|x| {
            0.5 * (d_product[x] - dot_conj(f.at(x), lap_h.at(x)) - dot_conj(lap_f.at(x), h.at(x)))
        })
        .collect()
}

/// Gamma(f,h) through the edge-difference formula
///
///   Gamma(f,h)(x) = (1/2 mu(x)) sum_{y~x} w_xy
///                   (sigma_xy f(y) - f(x))^T conj(sigma_xy h(y) - h(x)),
///
/// equivalent to the definition; kept as an independent route for
/// cross-checks and local assembly.
pub fn gamma_pointwise(
    graph: &SignedGraph,
    f: &VectorField,
    h: &VectorField,
) -> Result<Vec<Complex64>, OperatorError> {
    f.check_shape(graph)?;
    h.check_shape(graph)?;
    let n = graph.n();
    let d = graph.dim();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut df = vec![Complex64::new(0.0, 0.0); d];
    let mut dh = vec![Complex64::new(0.0, 0.0); d];
    for x in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(y, e) in graph.neighbors(x) {
            let w = graph.edges()[e].weight;
            let sigma = graph.sigma(x, y).expect("adjacency implies an edge");
            for i in 0..d {
                let mut tf = Complex64::new(0.0, 0.0);
                let mut th = Complex64::new(0.0, 0.0);
                for j in 0..d {
                    tf += sigma[(i, j)] * f.at(y)[j];
                    th += sigma[(i, j)] * h.at(y)[j];
                }
                df[i] = tf - f.at(x)[i];
                dh[i] = th - h.at(x)[i];
            }
            acc += w * dot_conj(&df, &dh);
        }
        out[x] = acc / (2.0 * graph.measure(x));
    }
    Ok(out)
}

fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use graph_core::standard::{signed_cycle, triangle_with_twist};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_field(rng: &mut ChaCha8Rng, n: usize, d: usize) -> VectorField {
        VectorField::from_fn(n, d, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    #[test]
    fn definition_agrees_with_edge_difference_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let graph = signed_cycle(6, Complex64::from_polar(1.0, 1.1), 1.5);
        for _ in 0..5 {
            let f = random_field(&mut rng, 6, 1);
            let h = random_field(&mut rng, 6, 1);
            let via_def = gamma_field(&graph, &f, &h).unwrap();
            let via_edges = gamma_pointwise(&graph, &f, &h).unwrap();
            for x in 0..6 {
                assert_abs_diff_eq!(via_def[x].re, via_edges[x].re, epsilon = 1e-12);
                assert_abs_diff_eq!(via_def[x].im, via_edges[x].im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn gamma_is_hermitian_and_diagonally_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let graph = triangle_with_twist(Complex64::from_polar(1.0, 2.2), 2.0);
        let f = random_field(&mut rng, 3, 1);
        let h = random_field(&mut rng, 3, 1);
        let fh = gamma_field(&graph, &f, &h).unwrap();
        let hf = gamma_field(&graph, &h, &f).unwrap();
        for x in 0..3 {
            assert_abs_diff_eq!(fh[x].re, hf[x].re, epsilon = 1e-12);
            assert_abs_diff_eq!(fh[x].im, -hf[x].im, epsilon = 1e-12);
        }
        let ff = gamma_field(&graph, &f, &f).unwrap();
        for x in 0..3 {
            assert!(ff[x].im.abs() <= 1e-12);
            assert!(ff[x].re >= -1e-12);
        }
    }

    #[test]
    fn cauchy_schwarz_holds_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let graph = signed_cycle(5, Complex64::new(-1.0, 0.0), 1.0);
        for _ in 0..10 {
            let f = random_field(&mut rng, 5, 1);
            let h = random_field(&mut rng, 5, 1);
            let fh = gamma_field(&graph, &f, &h).unwrap();
            let ff = gamma_field(&graph, &f, &f).unwrap();
            let hh = gamma_field(&graph, &h, &h).unwrap();
            for x in 0..5 {
                let bound = ff[x].re.max(0.0).sqrt() * hh[x].re.max(0.0).sqrt();
                assert!(fh[x].norm() <= bound + 1e-12);
            }
        }
    }

    #[test]
    fn constant_fields_have_vanishing_gamma_and_gamma_two() {
        let graph = signed_cycle(4, Complex64::new(1.0, 0.0), 1.0);
        let c = VectorField::constant(4, &[Complex64::new(3.0, -1.0)]);
        let (gamma, gamma_two) = gamma_fields(&graph, &c, &c).unwrap();
        for x in 0..4 {
            assert_abs_diff_eq!(gamma[x].norm(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(gamma_two[x].norm(), 0.0, epsilon = 1e-12);
        }
    }
}
