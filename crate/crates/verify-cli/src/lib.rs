//! Report-producing verification layer and corpus generators behind the
//! `graphsig` binary. Each `verify_*` function evaluates one family of
//! spectral, expansion, curvature, or heat-flow comparisons on a signed
//! graph and returns a [`report::VerificationReport`] whose slack convention
//! is uniform: nonnegative slack (up to the report tolerance) means the
//! comparison holds.

pub mod appendix;
pub mod buser;
pub mod cheeger_check;
pub mod corpus;
pub mod demo;
pub mod error;
pub mod lichnerowicz;
pub mod product_check;
pub mod ratio;
pub mod report;
pub mod semigroup_check;
pub mod spectrum;
pub mod switching_check;

pub use appendix::{appendix_b_check, appendix_graph, AppendixMatrices};
pub use buser::verify_buser;
pub use cheeger_check::{verify_cheeger, verify_isoperimetry};
pub use corpus::{main_corpus, sparse_phase_corpus, LabeledGraph};
pub use demo::demo_triangle;
pub use error::VerifyError;
pub use lichnerowicz::verify_lichnerowicz;
pub use product_check::{square_of, verify_product_cheeger, verify_product_square};
pub use ratio::{verify_dual_buser, verify_eigenvalue_ratio};
pub use report::{Instance, Params, VerificationReport};
pub use semigroup_check::verify_semigroup;
pub use spectrum::{first_nonzero, graph_spectrum};
pub use switching_check::verify_switching;

/// Seed used by every randomized check unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 42;

/// Absolute tolerance on inequality residuals.
pub const DEFAULT_SLACK_TOL: f64 = 1e-8;
