use num_complex::Complex64;

use crate::error::LinalgError;
use crate::hermitian::HermitianMatrix;
use crate::matrix::CMatrix;

/// Convergence target: off-diagonal Frobenius mass below this fraction of the
/// input Frobenius norm stops the sweep loop.
pub const JACOBI_TOL: f64 = 1e-13;

/// Sweep cap; hitting it signals pathological input.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues ascending with a matching orthonormal eigenvector matrix
/// (eigenvectors are columns).
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenDecomposition {
    /// V diag(lambda) V^H, for residual checks.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.eigenvalues.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            for i in 0..n {
                scaled[(i, j)] *= self.eigenvalues[j];
            }
        }
        scaled.mul(&self.vectors.adjoint()).expect("square factors")
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi with
/// complex plane rotations.
///
/// Each pivot (p, q) is annihilated by the unitary G that acts on the (p, q)
/// plane as [[c*phase, s*phase], [-s, c]], where phase aligns the pivot entry
/// with the real axis and (c, s) is the classical symmetric Jacobi rotation
/// for the phase-aligned 2x2 block. Convergence is quadratic once the
/// off-diagonal mass is small; matrices up to a few hundred rows converge in
/// well under the sweep cap.
pub fn hermitian_eigen(m: &HermitianMatrix) -> Result<EigenDecomposition, LinalgError> {
    let n = m.size();
    if n == 0 {
        return Err(LinalgError::Empty);
    }
    let mut a = m.as_matrix().clone();
    let mut v = CMatrix::identity(n);
    let target = JACOBI_TOL * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(LinalgError::NoConvergence {
            off_diag: off_diagonal_norm(&a),
        });
    }

    // Diagonal is real by construction of the rotations.
    let mut order: Vec<usize> = (0..n).collect();
    let raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let normalized = normalize_phases(&v);
    order.sort_by(|&i, &j| {
        raw[i]
            .partial_cmp(&raw[j])
            .unwrap()
            .then_with(|| column_lex_cmp(&normalized, i, j))
    });

    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| normalized[(i, order[j])]);
    Ok(EigenDecomposition {
        eigenvalues,
        vectors,
    })
}

/// Smallest eigenvalue.
pub fn min_eigenvalue(m: &HermitianMatrix) -> Result<f64, LinalgError> {
    Ok(hermitian_eigen(m)?.eigenvalues[0])
}

/// Positive semidefinite up to `tol`: smallest eigenvalue >= -tol.
pub fn is_psd(m: &HermitianMatrix, tol: f64) -> Result<bool, LinalgError> {
    Ok(min_eigenvalue(m)? >= -tol)
}

/// e^{tM} through the eigendecomposition; t = 0 returns the identity exactly.
pub fn hermitian_exp(m: &HermitianMatrix, t: f64) -> Result<CMatrix, LinalgError> {
    let n = m.size();
    if t == 0.0 {
        return Ok(CMatrix::identity(n));
    }
    let eig = hermitian_eigen(m)?;
    let mut scaled = eig.vectors.clone();
    for j in 0..n {
        let w = (t * eig.eigenvalues[j]).exp();
        for i in 0..n {
            scaled[(i, j)] *= w;
        }
    }
    scaled.mul(&eig.vectors.adjoint())
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let beta = a[(p, q)];
    let abs_b = beta.norm();
    if abs_b == 0.0 {
        return;
    }
    let phase = beta / abs_b;
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    let tau = (gamma - alpha) / (2.0 * abs_b);
    let sign = if tau < 0.0 { -1.0 } else { 1.0 };
    let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    let g_pp = phase * c;
    let g_pq = phase * s;

    // A <- A G (columns p and q).
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp - akq * s;
        a[(k, q)] = akp * g_pq + akq * c;
    }
    // A <- G^H A (rows p and q).
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk - aqk * s;
        a[(q, k)] = g_pq.conj() * apk + aqk * c;
    }
    // Clean the entries the rotation was built to annihilate.
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    // V <- V G.
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp - vkq * s;
        v[(k, q)] = vkp * g_pq + vkq * c;
    }
}

/// Rotates each column so its first appreciable component is real positive,
/// making eigenvectors deterministic up to the solver's arithmetic.
fn normalize_phases(v: &CMatrix) -> CMatrix {
    let n = v.rows();
    let mut out = v.clone();
    for j in 0..n {
        let col_max = (0..n).map(|i| out[(i, j)].norm()).fold(0.0, f64::max);
        if col_max == 0.0 {
            continue;
        }
        let pivot = (0..n).find(|&i| out[(i, j)].norm() > 1e-12 * col_max);
        if let Some(i0) = pivot {
            let z = out[(i0, j)];
            let phase = z.conj() / z.norm();
            for i in 0..n {
                out[(i, j)] *= phase;
            }
        }
    }
    out
}

fn column_lex_cmp(v: &CMatrix, a: usize, b: usize) -> std::cmp::Ordering {
    for i in 0..v.rows() {
        let (x, y) = (v[(i, a)], v[(i, b)]);
        match x.re.partial_cmp(&y.re).unwrap() {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
        match x.im.partial_cmp(&y.im).unwrap() {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}
