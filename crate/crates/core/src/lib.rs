//! Decomposing graph edge sets into few cycles and single edges.

pub mod baseline;
pub mod check;
pub mod cut_dense;
pub mod error;
pub mod expander;
pub mod general;
pub mod generators;
pub mod graph;
pub mod io;
pub mod long_cycle;
pub mod path_decomp;
pub mod piece;
pub mod random_graph;
pub mod rng;
pub mod strategy;
pub mod telemetry;
pub mod verify;

pub use baseline::greedy_ladder;
pub use check::CheckReport;
pub use cut_dense::{decompose_cut_dense, decompose_min_degree};
pub use error::{Error, Result};
pub use general::{decompose_general, PipelineParams};
pub use generators::Family;
pub use graph::{core_with_min_degree, edge, Edge, Graph, Subgraph, Vertex};
pub use io::{parse_edge_list, write_edge_list, DecompositionDoc};
pub use piece::{Decomposition, DecompositionStats, PartialDecomposition, Piece, PieceKind};
pub use random_graph::{decompose_random, decompose_sparse, gnp};
pub use strategy::Strategy;
pub use telemetry::{RunTrace, StageRecord};
pub use verify::{verify_decomposition, verify_partial, verify_pieces, VerifyReport, Violation};
