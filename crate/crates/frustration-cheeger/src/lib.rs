//! Frustration indices, expansion rates, and multi-way Cheeger constants for
//! graphs carrying orthogonal or unitary edge signatures.
//!
//! The frustration of a vertex subset measures how far the signature is from
//! being trivializable on the induced subgraph: the cheapest total defect of
//! any per-vertex switching. For one-dimensional complex signatures the
//! minimum is attained by the gauge of some spanning tree, which makes the
//! computation a finite scan; one-dimensional real signatures yield to a sign
//! brute force; higher-dimensional blocks are handled by block-coordinate
//! descent on the unitary manifold, which produces certified upper bounds.
//!
//! On top of the frustration sit the expansion rate of a subset (frustration
//! plus boundary weight over measure), the k-way Cheeger constants (minimize
//! the worst expansion over k disjoint subsets), their unit-vector
//! relaxation, and a zero-extended Frobenius ratio that dominates twice the
//! one-way constant.
//!
//! With the default `parallel` feature the subset scans fan out over a rayon
//! thread pool; disabling it yields a fully sequential build with identical
//! results.

mod cheeger;
mod error;
mod frustration;
mod grid;
mod norm;
mod subset;
mod tree;

pub use cheeger::{
    bss_nu_star, cheeger_constants, cheeger_from_scores, cheeger_tilde1, score_subsets,
    score_subsets_sequential, BssComparison, CheegerPart, CheegerReport, SubPartition,
    SubsetScore,
};
pub use error::FrustrationError;
pub use frustration::{
    assignment_cost, auto_backend, expansion_phi, frustration_index,
    frustration_index_with_starts, FrustrationBackend, FrustrationResult, FrustrationVariant,
    EXHAUSTIVE_CAP, LOCAL_OPT_GRAD_STEPS, LOCAL_OPT_MAX_SWEEPS, LOCAL_OPT_RESTARTS,
    LOCAL_OPT_STEP,
};
pub use grid::{grid_discretization_bound, grid_frustration};
pub use norm::MatrixNorm;
pub use subset::{
    boundary_measure, candidate_subsets, subset_measure, EnumerationMode, ALL_ENUM_CAP,
    CONNECTED_ENUM_CAP,
};
pub use tree::{spanning_tree_count, tree_gauge_scan, TreeGaugeScan, DEFAULT_TREE_CAP};
