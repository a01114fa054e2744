use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// Verifiers do not use this type: a layout that fails verification is
/// reported through the corresponding report struct, not as an error.
/// `Error` is for inputs that violate an operation's contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not connected")]
    DisconnectedGraph,

    #[error("graph is not chordal")]
    NotChordal,

    #[error("graph is not a k-tree for the requested k: {0}")]
    NotKTree(String),

    #[error("graph contains a cycle, expected a forest")]
    NotForest,

    #[error("ordering is not a valid elimination ordering: {0}")]
    NotPeo(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid tree-partition: {0}")]
    InvalidTreePartition(String),

    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),

    #[error("vertex set is not a clique")]
    NotAClique,

    #[error("cliques do not cover the same track set")]
    NotSameCover,

    #[error("clique order is inconsistent across tracks (layout has an X-crossing)")]
    InconsistentOrder,

    #[error("colouring is not acyclic: colour pair ({0}, {1}) spans a cycle")]
    NotAcyclic(usize, usize),

    #[error("no layout with the requested structure exists")]
    NoSuchLayout,

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("instance too large for exact search: size {size} exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
