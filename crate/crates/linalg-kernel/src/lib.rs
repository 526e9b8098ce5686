//! Dense complex Hermitian linear algebra.
//!
//! Everything downstream reduces to four operations on dense Hermitian
//! matrices: eigendecomposition, smallest eigenvalue, a toleranced positive
//! semidefiniteness test and the matrix exponential. The solver is a cyclic
//! Jacobi iteration with complex plane rotations, kept in native complex
//! arithmetic so eigenvalue multiplicities stay honest. Sizes are modest
//! (a few hundred rows at the very most), where Jacobi is accurate and fast
//! enough without pulling in an external LAPACK binding.

mod eigen;
mod error;
mod hermitian;
mod matrix;

pub use eigen::{
    hermitian_eigen, hermitian_exp, is_psd, min_eigenvalue, EigenDecomposition, JACOBI_MAX_SWEEPS,
    JACOBI_TOL,
};
pub use error::LinalgError;
pub use hermitian::{HermitianMatrix, HERMITIAN_TOL};
pub use matrix::CMatrix;
