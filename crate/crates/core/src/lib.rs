//! Sparse subgraphs that preserve BFS distances from a set of sources under
//! up to two edge or vertex failures, together with an exhaustive verifier,
//! structural analysis of the replacement paths, and an additive spanner.

pub mod analysis;
pub mod bfs;
pub mod builder;
pub mod error;
pub mod graph;
pub mod paths;
pub mod spanner;
pub mod verify;

pub use error::{Error, ParseErrorKind, Result};
pub use graph::{
    gen_graph, parse_graph, remove_failures, serialize_graph, Dist, Edge, Element, FailureMode,
    FailureSpec, Graph, GraphModel, GraphView, Vertex, INF,
};
