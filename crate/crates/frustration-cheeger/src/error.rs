use thiserror::Error;

/// Errors produced by frustration and Cheeger computations.
#[derive(Debug, Error)]
pub enum FrustrationError {
    #[error("the vertex subset is empty")]
    EmptySubset,
    #[error("vertex index {index} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("backend does not support block dimension {dim} over the {field} field")]
    BackendUnsupported { dim: usize, field: &'static str },
    #[error("problem size {n} exceeds the configured cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("a subpartition into {k} nonempty parts needs at least {k} of the {n} vertices")]
    TooManyParts { k: usize, n: usize },
    #[error("the induced subgraph is not connected")]
    DisconnectedSubset,
    #[error("assignment is missing a block for vertex {id}")]
    MissingAssignment { id: String },
    #[error("the grid reduction ran out of low-degree vertices on a subgraph with {remaining} vertices")]
    NotReducible { remaining: usize },
    #[error(transparent)]
    Graph(#[from] graph_core::GraphError),
    #[error(transparent)]
    Linalg(#[from] linalg_kernel::LinalgError),
}
