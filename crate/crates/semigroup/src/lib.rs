//! Heat semigroups on signed graphs: the operators e^{t laplacian} in both
//! the signed (vector-field) and scalar flavors, their structural identities
//! (self-adjointness, commutation, the semigroup law, probability-kernel
//! behavior of the scalar version), and the pointwise inequalities that a
//! curvature lower bound forces on the semigroup.

mod cd_check;
mod contraction;
mod error;
mod heat;

pub use cd_check::{check_semigroup_cd, random_field, SemigroupCdReport, CD_CHECK_TOLERANCE};
pub use contraction::{check_ell1_contraction, Ell1Report, ELL1_TOLERANCE};
pub use error::SemigroupError;
pub use heat::{commutation_defect, heat_operator, semigroup_law_defect, HeatOperator};
