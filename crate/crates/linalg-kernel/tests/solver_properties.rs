use linalg_kernel::{hermitian_eigen, is_psd, min_eigenvalue, CMatrix, HermitianMatrix};
use num_complex::Complex64;
use proptest::prelude::*;

fn hermitian_strategy(n: usize) -> impl Strategy<Value = HermitianMatrix> {
    let entries = prop::collection::vec(-5.0f64..5.0, n * n * 2);
    entries.prop_map(move |vals| {
        let mut m = CMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                let z = Complex64::new(vals[k], if i == j { 0.0 } else { vals[k + 1] });
                k += 2;
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        HermitianMatrix::new(m).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalues_sorted_and_reconstruction_tight(h in hermitian_strategy(6)) {
        let eig = hermitian_eigen(&h).unwrap();
        for k in 1..6 {
            prop_assert!(eig.eigenvalues[k] >= eig.eigenvalues[k - 1]);
        }
        let scale = h.as_matrix().max_abs().max(1.0);
        let residual = eig.reconstruct().sub(h.as_matrix()).unwrap().max_abs();
        prop_assert!(residual <= 1e-9 * scale);
    }

    #[test]
    fn trace_equals_eigenvalue_sum(h in hermitian_strategy(5)) {
        let eig = hermitian_eigen(&h).unwrap();
        let trace: f64 = (0..5).map(|i| h.as_matrix()[(i, i)].re).sum();
        let sum: f64 = eig.eigenvalues.iter().sum();
        prop_assert!((trace - sum).abs() <= 1e-10 * trace.abs().max(1.0));
    }

    #[test]
    fn gram_matrices_are_psd(h in hermitian_strategy(4)) {
        // A^H A is always PSD; feed the solver a guaranteed-PSD product.
        let g = h.as_matrix().adjoint().mul(h.as_matrix()).unwrap();
        let g = HermitianMatrix::new(g).unwrap();
        prop_assert!(is_psd(&g, 1e-9).unwrap());
        prop_assert!(min_eigenvalue(&g).unwrap() >= -1e-9);
    }

    #[test]
    fn shifting_moves_the_minimum_eigenvalue(h in hermitian_strategy(4), shift in -3.0f64..3.0) {
        let base = min_eigenvalue(&h).unwrap();
        let mut m = h.as_matrix().clone();
        for i in 0..4 {
            m[(i, i)] += Complex64::new(shift, 0.0);
        }
        let shifted = min_eigenvalue(&HermitianMatrix::new(m).unwrap()).unwrap();
        prop_assert!((shifted - (base + shift)).abs() <= 1e-9);
    }
}
