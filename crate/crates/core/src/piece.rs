//! Pieces of a decomposition and the containers that hold them.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::graph::{edge, Edge, Graph, Vertex};
use crate::telemetry::RunTrace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    Cycle,
    Path,
    #[serde(rename = "edge")]
    SingleEdge,
}

/// A cycle (closed vertex sequence), path (open sequence with at least two
/// edges) or single edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub kind: PieceKind,
    pub vertices: Vec<Vertex>,
}

impl Piece {
    pub fn cycle(vertices: Vec<Vertex>) -> Self {
        Piece {
            kind: PieceKind::Cycle,
            vertices,
        }
    }

    /// An open path; a path of one edge is normalized to a single edge.
    pub fn path(vertices: Vec<Vertex>) -> Self {
        let kind = if vertices.len() == 2 {
            PieceKind::SingleEdge
        } else {
            PieceKind::Path
        };
        Piece { kind, vertices }
    }

    pub fn single(u: Vertex, v: Vertex) -> Self {
        Piece {
            kind: PieceKind::SingleEdge,
            vertices: vec![u, v],
        }
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == PieceKind::Cycle
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        match self.kind {
            PieceKind::Cycle => self.vertices.len(),
            _ => self.vertices.len().saturating_sub(1),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Normalized edges, in traversal order.
    pub fn edges(&self) -> Vec<Edge> {
        let vs = &self.vertices;
        let mut out: Vec<Edge> = vs.windows(2).map(|w| edge(w[0], w[1])).collect();
        if self.kind == PieceKind::Cycle && vs.len() >= 2 {
            out.push(edge(vs[vs.len() - 1], vs[0]));
        }
        out
    }

    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> Piece {
        Piece {
            kind: self.kind,
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionStats {
    pub cycle_count: usize,
    pub single_edge_count: usize,
    pub path_count: usize,
    pub total_pieces: usize,
    pub pieces_per_vertex: Ratio<usize>,
}

impl DecompositionStats {
    pub fn of(pieces: &[Piece], n: usize) -> Self {
        let count = |k| pieces.iter().filter(|p| p.kind == k).count();
        let total = pieces.len();
        DecompositionStats {
            cycle_count: count(PieceKind::Cycle),
            single_edge_count: count(PieceKind::SingleEdge),
            path_count: count(PieceKind::Path),
            total_pieces: total,
            pieces_per_vertex: Ratio::new(total, n.max(1)),
        }
    }

    pub fn pieces_per_vertex_f64(&self) -> f64 {
        *self.pieces_per_vertex.numer() as f64 / *self.pieces_per_vertex.denom() as f64
    }
}

/// Pieces that exactly partition a graph's edge set.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub n: usize,
    pub pieces: Vec<Piece>,
    /// Fingerprint of the source graph.
    pub source: String,
    pub trace: RunTrace,
}

impl Decomposition {
    pub fn new(g: &Graph, pieces: Vec<Piece>) -> Self {
        Decomposition {
            n: g.n(),
            pieces,
            source: g.fingerprint(),
            trace: RunTrace::default(),
        }
    }

    pub fn with_trace(mut self, trace: RunTrace) -> Self {
        self.trace = trace;
        self
    }

    pub fn empty(g: &Graph) -> Self {
        Self::new(g, Vec::new())
    }

    pub fn stats(&self) -> DecompositionStats {
        DecompositionStats::of(&self.pieces, self.n)
    }
}

/// Pieces covering a subset of the edges, with the rest listed explicitly.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PartialDecomposition {
    pub n: usize,
    pub pieces: Vec<Piece>,
    pub leftover: Vec<Edge>,
}

impl PartialDecomposition {
    pub fn new(n: usize) -> Self {
        PartialDecomposition {
            n,
            ..Default::default()
        }
    }

    pub fn cycle_count(&self) -> usize {
        self.pieces.iter().filter(|p| p.is_cycle()).count()
    }

    /// Absorbs another partial result expressed in local ids.
    pub(crate) fn absorb_mapped(&mut self, other: PartialDecomposition, to_parent: &[Vertex]) {
        self.pieces
            .extend(other.pieces.into_iter().map(|p| p.map_vertices(|v| to_parent[v])));
        self.leftover.extend(
            other
                .leftover
                .into_iter()
                .map(|(u, v)| edge(to_parent[u], to_parent[v])),
        );
    }

    /// Converts to a full decomposition by emitting leftovers as single edges.
    pub fn into_decomposition(self, g: &Graph) -> Decomposition {
        let mut pieces = self.pieces;
        pieces.extend(self.leftover.into_iter().map(|(u, v)| Piece::single(u, v)));
        Decomposition::new(g, pieces)
    }
}

/// Removes cycles from a vertex sequence, earliest repeat first.
///
/// Scans the sequence with a stack; whenever a vertex reappears, the stack
/// segment since its previous occurrence is popped as a cycle. For `closed`
/// walks the first vertex is revisited at the end. Returns the cycles and the
/// simple sequence that remains (a single vertex for closed walks).
pub fn excise_cycles(seq: &[Vertex], closed: bool) -> (Vec<Vec<Vertex>>, Vec<Vertex>) {
    let mut stack: Vec<Vertex> = Vec::with_capacity(seq.len());
    let mut pos: HashMap<Vertex, usize> = HashMap::new();
    let mut cycles = Vec::new();
    let tail = if closed { seq.first().copied() } else { None };
    for &v in seq.iter().chain(tail.iter()) {
        if let Some(&i) = pos.get(&v) {
            if i + 1 < stack.len() {
                let seg: Vec<Vertex> = stack.drain(i..).collect();
                for w in &seg[1..] {
                    pos.remove(w);
                }
                cycles.push(seg);
                stack.push(v);
            }
        } else {
            pos.insert(v, stack.len());
            stack.push(v);
        }
    }
    (cycles, stack)
}

/// Splits an edge-distinct closed walk into simple cycles; a two-vertex
/// segment (a reused edge) degrades to a single edge.
pub fn split_closed_walk(walk: &[Vertex]) -> Vec<Piece> {
    let (cycles, _) = excise_cycles(walk, true);
    cycles
        .into_iter()
        .map(|c| {
            if c.len() == 2 {
                Piece::single(c[0], c[1])
            } else {
                Piece::cycle(c)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_edge_path_normalizes() {
        assert_eq!(Piece::path(vec![3, 1]).kind, PieceKind::SingleEdge);
        assert_eq!(Piece::path(vec![3, 1, 2]).kind, PieceKind::Path);
    }

    #[test]
    fn cycle_edges_wrap() {
        let c = Piece::cycle(vec![0, 1, 2, 3]);
        assert_eq!(c.edges(), vec![(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn figure_eight_splits_in_two() {
        // 0-1-2-0-3-4-0
        let pieces = split_closed_walk(&[0, 1, 2, 0, 3, 4]);
        assert_eq!(pieces.len(), 2);
        assert!(pieces.iter().all(Piece::is_cycle));
        let mut all: Vec<Edge> = pieces.iter().flat_map(Piece::edges).collect();
        all.sort_unstable();
        assert_eq!(all, vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]);
    }

    #[test]
    fn open_trail_leaves_simple_path() {
        // 5-0-1-2-0-6 : cycle 0-1-2 excised, path 5-0-6 remains
        let (cycles, rest) = excise_cycles(&[5, 0, 1, 2, 0, 6], false);
        assert_eq!(cycles, vec![vec![0, 1, 2]]);
        assert_eq!(rest, vec![5, 0, 6]);
    }

    #[test]
    fn stats_count_kinds() {
        let pieces = vec![Piece::cycle(vec![0, 1, 2]), Piece::single(0, 3), Piece::single(1, 3)];
        let s = DecompositionStats::of(&pieces, 4);
        assert_eq!((s.cycle_count, s.single_edge_count, s.total_pieces), (1, 2, 3));
        assert_eq!(s.pieces_per_vertex, Ratio::new(3, 4));
    }
}
