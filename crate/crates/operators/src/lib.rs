//! Operators attached to a signed graph: the connection Laplacian, the two
//! carre du champ forms, and their local Hermitian matrix representations on
//! one- and two-step neighborhoods.
//!
//! Fields are stored vertex-major, so matrix and pointwise routes compose
//! without reshuffling. Local matrices follow the quadratic-form convention
//! form(f,g) = f_vec^T M conj(g_vec); matrix positive semidefiniteness on that
//! convention coincides with form positive semidefiniteness, which is what the
//! curvature computations rely on.

mod error;
mod field;
mod gamma;
mod laplacian;
mod local;

pub use error::OperatorError;
pub use field::VectorField;
pub use gamma::{gamma_field, gamma_fields, gamma_pointwise};
pub use laplacian::{apply_laplacian, scalar_laplacian, ConnectionLaplacian};
pub use local::{
    local_blocks, DimensionParam, LocalOperatorBlocks, SphereOneStats, SphereTwoStats,
};

use linalg_kernel::CMatrix;

/// Renders a matrix as CSV with "re+imi" cells, row-major, for debugging.
pub fn matrix_to_csv(m: &CMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let cells: Vec<String> = (0..m.cols())
            .map(|c| {
                let z = m[(r, c)];
                if z.im >= 0.0 {
                    format!("{}+{}i", z.re, z.im)
                } else {
                    format!("{}-{}i", z.re, -z.im)
                }
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn csv_cells_carry_signed_imaginary_parts() {
        let m = CMatrix::from_rows(&[
            vec![Complex64::new(1.0, 0.5), Complex64::new(-2.0, -0.25)],
        ]);
        assert_eq!(matrix_to_csv(&m), "1+0.5i,-2-0.25i\n");
    }
}
