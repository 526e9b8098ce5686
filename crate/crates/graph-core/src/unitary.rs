use linalg_kernel::{hermitian_eigen, CMatrix, HermitianMatrix};
use num_complex::Complex64;

use crate::error::GraphError;

/// Ingest tolerance on the max-norm of sigma^H sigma - I.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Blocks whose unitarity defect is already below this are stored verbatim
/// instead of being re-projected, which keeps serialization round-trips
/// bit-exact.
pub const PROJECTION_SKIP_TOL: f64 = 1e-14;

/// A d x d matrix constrained unitary: the connection carried by one oriented
/// edge. Construction measures the defect against [`UNITARITY_TOL`] and then
/// snaps the block to the nearest unitary (polar projection) unless it is
/// already unitary to working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryBlock {
    entries: CMatrix,
}

impl UnitaryBlock {
    pub fn new(entries: CMatrix) -> Result<Self, GraphError> {
        Self::with_tolerance(entries, UNITARITY_TOL)
    }

    pub fn with_tolerance(entries: CMatrix, tol: f64) -> Result<Self, GraphError> {
        let defect = unitarity_defect(&entries)?;
        if defect > tol {
            return Err(GraphError::NonUnitary {
                u: String::new(),
                v: String::new(),
                defect,
                tolerance: tol,
            });
        }
        let entries = if defect > PROJECTION_SKIP_TOL {
            polar_project(&entries)?
        } else {
            entries
        };
        Ok(UnitaryBlock { entries })
    }

    pub fn identity(d: usize) -> Self {
        UnitaryBlock {
            entries: CMatrix::identity(d),
        }
    }

    /// d = 1 scalar block.
    pub fn scalar(z: Complex64) -> Result<Self, GraphError> {
        UnitaryBlock::new(CMatrix::from_rows(&[vec![z]]))
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// The inverse, which for a unitary block is the conjugate transpose.
    pub fn inverse(&self) -> UnitaryBlock {
        UnitaryBlock {
            entries: self.entries.adjoint(),
        }
    }

    /// Product of two blocks; tiny accumulated drift is re-projected away.
    pub fn compose(&self, other: &UnitaryBlock) -> Result<UnitaryBlock, GraphError> {
        let product = self.entries.mul(other.entries()).map_err(GraphError::from)?;
        let defect = unitarity_defect(&product)?;
        let entries = if defect > PROJECTION_SKIP_TOL {
            polar_project(&product)?
        } else {
            product
        };
        Ok(UnitaryBlock { entries })
    }

    /// True when every entry has exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries.data().iter().all(|z| z.im == 0.0)
    }

    pub fn max_distance_to(&self, other: &UnitaryBlock) -> f64 {
        self.entries
            .sub(other.entries())
            .map(|diff| diff.max_abs())
            .unwrap_or(f64::INFINITY)
    }
}

/// Max-norm of M^H M - I; errors on non-square input.
pub fn unitarity_defect(m: &CMatrix) -> Result<f64, GraphError> {
    if !m.is_square() {
        return Err(GraphError::DimensionMismatch {
            context: "unitary block".into(),
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let gram = m.adjoint().mul(m)?;
    let d = m.rows();
    Ok(gram.sub(&CMatrix::identity(d))?.max_abs())
}

/// Nearest unitary in Frobenius distance: M (M^H M)^{-1/2}, computed through
/// the eigendecomposition of the Gram matrix. Intended for inputs already
/// close to unitary; genuinely singular input is rejected.
pub fn polar_project(m: &CMatrix) -> Result<CMatrix, GraphError> {
    let d = m.rows();
    let gram = HermitianMatrix::symmetrize(m.adjoint().mul(m)?)?;
    let eig = hermitian_eigen(&gram)?;
    if eig.eigenvalues[0] <= 1e-8 {
        return Err(GraphError::NonUnitary {
            u: String::new(),
            v: String::new(),
            defect: f64::INFINITY,
            tolerance: UNITARITY_TOL,
        });
    }
    let mut scaled = eig.vectors.clone();
    for j in 0..d {
        let w = 1.0 / eig.eigenvalues[j].sqrt();
        for i in 0..d {
            scaled[(i, j)] *= w;
        }
    }
    let inv_sqrt = scaled.mul(&eig.vectors.adjoint())?;
    Ok(m.mul(&inv_sqrt)?)
}
