use thiserror::Error;

use crate::graph::{Edge, Vertex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    UnknownVertex { vertex: Vertex, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge ({}, {})", .0.0, .0.1)]
    DuplicateEdge(Edge),

    #[error("edge ({}, {}) is not in the graph", .0.0, .0.1)]
    MissingEdge(Edge),

    #[error("vertex {0} is isolated")]
    IsolatedVertex(Vertex),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("postcondition violated: {0}")]
    Postcondition(String),

    #[error("connector set unusable after {attempts} samples")]
    ConnectorUnusable { attempts: usize },

    #[error("routing from {from} to {to} through the connector failed")]
    RoutingFailed { from: Vertex, to: Vertex },

    #[error("no eligible common neighbour to close path {0}")]
    ClosureFailed(usize),

    #[error("pair {0} could not be connected")]
    PairUnconnectable(usize),

    #[error("helper subgraph failed its checks after {attempts} samples")]
    HelperUnusable { attempts: usize },

    #[error("cut-dense partition did not terminate within {rounds} rounds")]
    NonTermination { rounds: usize },

    #[error("graph is not bipartite with the declared sides: edge ({}, {})", .0.0, .0.1)]
    NotBipartite(Edge),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid decomposition document: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
