//! Norms used to measure the distance between signature blocks.

use linalg_kernel::CMatrix;

/// Matrix norm used inside frustration objectives.
///
/// `Average21` takes the mean of the Euclidean lengths of the columns. It is
/// invariant under multiplication by a unitary matrix from the left, which is
/// what makes frustration sums independent of edge orientation. `Frobenius`
/// is the usual Hilbert-Schmidt norm. On a single column both reduce to the
/// Euclidean length, and on a square d x d matrix the column average never
/// exceeds the Frobenius norm divided by sqrt(d).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixNorm {
    Average21,
    Frobenius,
}

impl MatrixNorm {
    /// Evaluates the norm on a rectangular matrix.
    pub fn evaluate(&self, a: &CMatrix) -> f64 {
        match self {
            MatrixNorm::Average21 => {
                let cols = a.cols();
                if cols == 0 {
                    return 0.0;
                }
                let mut total = 0.0;
                for j in 0..cols {
                    let mut sq = 0.0;
                    for i in 0..a.rows() {
                        sq += a[(i, j)].norm_sqr();
                    }
                    total += sq.sqrt();
                }
                total / cols as f64
            }
            MatrixNorm::Frobenius => a.frobenius_norm(),
        }
    }
}
