//! Signed weighted graphs with vertex measures.
//!
//! A [`SignedGraph`] couples a finite simple graph with positive edge
//! weights, a positive vertex measure, and a signature: a unitary (or, over
//! the real field, orthogonal) d x d block on each oriented edge, with the
//! reverse orientation carrying the inverse. The module validates graphs at
//! construction, applies switching functions, computes cycle signatures,
//! decides balance with an explicit trivializing switching, and extracts the
//! degree constants that control all spectral estimates downstream.

mod error;
mod graph;
mod io;
pub mod standard;
mod switching;
mod unitary;

pub use error::GraphError;
pub use graph::{DegreeConstants, Edge, Field, GraphBuilder, SignedGraph};
pub use io::{parse_graph, read_graph, serialize_graph, write_graph};
pub use switching::{
    apply_switching, cycle_signature, is_balanced, SwitchingFunction, BALANCE_TOL,
};
pub use unitary::{
    polar_project, unitarity_defect, UnitaryBlock, PROJECTION_SKIP_TOL, UNITARITY_TOL,
};
