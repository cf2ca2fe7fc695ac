//! Independent checker for decompositions.
//!
//! Shares no code with the pipelines beyond the graph type, so every
//! pipeline test routes its output through here.

use std::collections::HashSet;
use std::fmt;

use crate::graph::{edge, Edge, Graph};
use crate::piece::{Decomposition, PartialDecomposition, Piece, PieceKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MalformedPiece { index: usize, reason: String },
    EdgeNotInGraph { index: usize, edge: Edge },
    EdgeCoveredTwice { edge: Edge },
    EdgeMissing { edge: Edge },
    LeftoverNotInGraph { edge: Edge },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MalformedPiece { index, reason } => write!(f, "piece {index}: {reason}"),
            Violation::EdgeNotInGraph { index, edge } => {
                write!(f, "piece {index} uses non-edge ({}, {})", edge.0, edge.1)
            }
            Violation::EdgeCoveredTwice { edge } => {
                write!(f, "edge ({}, {}) covered more than once", edge.0, edge.1)
            }
            Violation::EdgeMissing { edge } => {
                write!(f, "edge ({}, {}) not covered", edge.0, edge.1)
            }
            Violation::LeftoverNotInGraph { edge } => {
                write!(f, "leftover ({}, {}) is not an edge", edge.0, edge.1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    pub violation: Option<Violation>,
    pub pieces_checked: usize,
}

impl VerifyReport {
    fn ok(pieces_checked: usize) -> Self {
        VerifyReport {
            valid: true,
            violation: None,
            pieces_checked,
        }
    }

    fn fail(v: Violation, pieces_checked: usize) -> Self {
        VerifyReport {
            valid: false,
            violation: Some(v),
            pieces_checked,
        }
    }
}

fn check_piece(g: &Graph, index: usize, p: &Piece) -> Result<(), Violation> {
    let vs = &p.vertices;
    let malformed = |reason: &str| Violation::MalformedPiece {
        index,
        reason: reason.to_string(),
    };
    if let Some(&v) = vs.iter().find(|&&v| v >= g.n()) {
        return Err(malformed(&format!("vertex {v} out of range")));
    }
    let distinct: HashSet<_> = vs.iter().collect();
    if distinct.len() != vs.len() {
        return Err(malformed("repeated vertex"));
    }
    match p.kind {
        PieceKind::Cycle if vs.len() < 3 => return Err(malformed("cycle with fewer than 3 vertices")),
        PieceKind::Path if vs.len() < 3 => return Err(malformed("path with fewer than 2 edges")),
        PieceKind::SingleEdge if vs.len() != 2 => return Err(malformed("single edge must have 2 vertices")),
        _ => {}
    }
    for w in vs.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Violation::EdgeNotInGraph {
                index,
                edge: edge(w[0], w[1]),
            });
        }
    }
    if p.kind == PieceKind::Cycle && !g.has_edge(vs[vs.len() - 1], vs[0]) {
        return Err(Violation::EdgeNotInGraph {
            index,
            edge: edge(vs[vs.len() - 1], vs[0]),
        });
    }
    Ok(())
}

fn check_cover(g: &Graph, pieces: &[Piece], leftover: &[Edge], exact: bool) -> VerifyReport {
    for (i, p) in pieces.iter().enumerate() {
        if let Err(v) = check_piece(g, i, p) {
            return VerifyReport::fail(v, i);
        }
    }
    let mut covered: Vec<Edge> = pieces.iter().flat_map(|p| p.edges()).collect();
    for &(u, v) in leftover {
        if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
            return VerifyReport::fail(Violation::LeftoverNotInGraph { edge: edge(u, v) }, pieces.len());
        }
        covered.push(edge(u, v));
    }
    covered.sort_unstable();
    if let Some(w) = covered.windows(2).find(|w| w[0] == w[1]) {
        return VerifyReport::fail(Violation::EdgeCoveredTwice { edge: w[0] }, pieces.len());
    }
    if exact {
        // covered is a duplicate-free subset of g's edges; compare as sorted lists
        if let Some(&e) = g.edges().iter().find(|e| covered.binary_search(e).is_err()) {
            return VerifyReport::fail(Violation::EdgeMissing { edge: e }, pieces.len());
        }
    }
    VerifyReport::ok(pieces.len())
}

/// Checks that every piece is well formed and the pieces exactly partition
/// the edges of `g`.
pub fn verify_decomposition(g: &Graph, d: &Decomposition) -> VerifyReport {
    verify_pieces(g, &d.pieces)
}

pub fn verify_pieces(g: &Graph, pieces: &[Piece]) -> VerifyReport {
    check_cover(g, pieces, &[], true)
}

/// Pieces plus leftover must exactly partition the edges of `g`.
pub fn verify_partial(g: &Graph, d: &PartialDecomposition) -> VerifyReport {
    check_cover(g, &d.pieces, &d.leftover, true)
}

/// Pieces must be well formed and pairwise edge-disjoint inside `g`, without
/// requiring full coverage.
pub fn verify_disjoint(g: &Graph, pieces: &[Piece]) -> VerifyReport {
    check_cover(g, pieces, &[], false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn k4_cycle_plus_diagonals_is_valid() {
        let g = k4();
        let d = Decomposition::new(
            &g,
            vec![Piece::cycle(vec![0, 1, 2, 3]), Piece::single(0, 2), Piece::single(1, 3)],
        );
        assert!(verify_decomposition(&g, &d).valid);
    }

    #[test]
    fn missing_edge_is_named() {
        let g = triangle();
        let d = Decomposition::new(&g, vec![Piece::single(0, 1), Piece::single(1, 2)]);
        let r = verify_decomposition(&g, &d);
        assert!(!r.valid);
        assert_eq!(r.violation, Some(Violation::EdgeMissing { edge: (0, 2) }));
    }

    #[test]
    fn double_cover_is_rejected() {
        let g = triangle();
        let d = Decomposition::new(&g, vec![Piece::cycle(vec![0, 1, 2]), Piece::single(0, 1)]);
        let r = verify_decomposition(&g, &d);
        assert_eq!(r.violation, Some(Violation::EdgeCoveredTwice { edge: (0, 1) }));
    }

    #[test]
    fn malformed_pieces() {
        let g = k4();
        let two_cycle = vec![Piece::cycle(vec![0, 1])];
        assert!(matches!(
            verify_pieces(&g, &two_cycle).violation,
            Some(Violation::MalformedPiece { .. })
        ));
        let repeat = vec![Piece::path(vec![0, 1, 0])];
        assert!(!verify_pieces(&g, &repeat).valid);
        let bad = Graph::new(4, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            verify_pieces(&bad, &[Piece::cycle(vec![0, 1, 2])]).violation,
            Some(Violation::EdgeNotInGraph { .. })
        ));
    }

    #[test]
    fn partial_requires_leftover() {
        let g = triangle();
        let mut pd = PartialDecomposition::new(3);
        pd.pieces.push(Piece::single(0, 1));
        assert!(!verify_partial(&g, &pd).valid);
        pd.leftover = vec![(1, 2), (0, 2)];
        assert!(verify_partial(&g, &pd).valid);
        assert!(verify_disjoint(&g, &pd.pieces).valid);
    }
}
