//! Host graphs: the labelled, marked, directed multigraphs that programs transform.

mod canon;
mod host;
mod iso;
mod label;

use thiserror::Error;

pub use canon::{canonical_key, CanonicalKey, MAX_CANONICAL_NODES};
pub use host::{Edge, EdgeId, EdgeSpec, HostGraph, Node, NodeId, NodeSpec};
pub use iso::isomorphic;
pub use label::{write_list, Atom, Label, Mark};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown endpoint `{0}`")]
    UnknownEndpoint(String),
    #[error("mark `{mark}` is not allowed on `{item}`")]
    IllegalMark { item: String, mark: Mark },
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} would be left dangling")]
    DanglingEdge(EdgeId),
    #[error("graph has {nodes} nodes; canonical keys support at most {limit}")]
    SizeLimitExceeded { nodes: usize, limit: usize },
}
