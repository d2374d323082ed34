use thiserror::Error;

use crate::graph::{Edge, Vertex};

/// Reasons an edge-list document can be rejected. Every variant is reported
/// together with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header (expected \"<n> <m> <directed|undirected>\")")]
    MalformedHeader,
    #[error("malformed edge line (expected \"<u> <v>\")")]
    MalformedEdge,
    #[error("vertex index {index} out of range for n = {n}")]
    VertexOutOfRange { index: u64, n: usize },
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} is not in the graph (n = {n})")]
    UnknownVertex { vertex: Vertex, n: usize },

    #[error("edge {0} is not in the graph")]
    UnknownEdge(Edge),

    #[error("failure set is invalid: {0}")]
    InvalidFailure(String),

    #[error("source and target coincide (vertex {0})")]
    SourceIsTarget(Vertex),

    #[error("failure set is inconsistent with the base path chain: {0}")]
    InconsistentChain(String),

    #[error("instance too large for exhaustive enumeration: n = {n} exceeds {limit}")]
    InstanceTooLarge { n: usize, limit: usize },

    #[error("subgraph edge {0} is not an edge of the graph")]
    NotSubgraph(Edge),

    #[error("target {0} appears in more than one partition")]
    OverlappingTargets(Vertex),

    #[error("structures were built with different parameters")]
    ParameterMismatch,

    #[error("path family is not converging: paths {first} and {second} meet at {meet} and split at {split}")]
    NonConverging {
        first: usize,
        second: usize,
        meet: Vertex,
        split: Vertex,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
