use num_complex::Complex64;

use crate::error::LinalgError;
use crate::matrix::CMatrix;

/// Construction tolerance: entries of |M - M^H| beyond this reject the input.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A square matrix guaranteed Hermitian up to rounding.
///
/// Construction symmetrizes by averaging M with its adjoint, after checking
/// the deviation is within [`HERMITIAN_TOL`]. Operator assembly upstream
/// produces matrices Hermitian up to floating point noise; anything worse
/// signals a real bug and is rejected rather than silently flattened.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: CMatrix,
}

impl HermitianMatrix {
    /// Symmetrizes `m` by averaging with its adjoint; errors if the deviation
    /// exceeds `HERMITIAN_TOL` or the matrix is not square.
    pub fn new(m: CMatrix) -> Result<Self, LinalgError> {
        Self::with_tolerance(m, HERMITIAN_TOL)
    }

    pub fn with_tolerance(m: CMatrix, tol: f64) -> Result<Self, LinalgError> {
        if !m.is_square() {
            return Err(LinalgError::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let deviation = m.hermitian_deviation();
        if deviation > tol {
            return Err(LinalgError::NotHermitian {
                deviation,
                tolerance: tol,
            });
        }
        Ok(Self::average_unchecked(m))
    }

    /// Averages with the adjoint without a deviation check. For callers that
    /// have already bounded the asymmetry themselves.
    pub fn symmetrize(m: CMatrix) -> Result<Self, LinalgError> {
        if !m.is_square() {
            return Err(LinalgError::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(Self::average_unchecked(m))
    }

    fn average_unchecked(m: CMatrix) -> Self {
        let n = m.rows();
        let mut sym = CMatrix::zeros(n, n);
        for i in 0..n {
            // Diagonal entries of a Hermitian matrix are real.
            sym[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                sym[(i, j)] = avg;
                sym[(j, i)] = avg.conj();
            }
        }
        HermitianMatrix { inner: sym }
    }

    pub fn size(&self) -> usize {
        self.inner.rows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> CMatrix {
        self.inner
    }
}
