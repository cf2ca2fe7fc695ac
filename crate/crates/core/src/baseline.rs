//! The greedy ladder every pipeline is compared against.

use crate::graph::Graph;
use crate::long_cycle::strip_long_cycles;
use crate::piece::{Decomposition, Piece};

/// While more than `2n` edges remain, strips cycles of length at least
/// `m/n + 1` for the current `m`; every remaining edge is a single.
///
/// Each rung removes at least a constant fraction of the edges above `2n`
/// with cycles of length about `m/n`, which gives `O(n log n)` pieces.
pub fn greedy_ladder(g: &Graph) -> Decomposition {
    let n = g.n();
    let mut pieces = Vec::new();
    let mut rem = g.clone();
    while rem.m() > 2 * n {
        let strip = strip_long_cycles(&rem, rem.m() / n + 1);
        if strip.cycles.is_empty() {
            break;
        }
        pieces.extend(strip.cycles);
        rem = strip.residual;
    }
    pieces.extend(rem.edges().iter().map(|&(u, v)| Piece::single(u, v)));
    Decomposition::new(g, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};
    use crate::verify::verify_decomposition;

    #[test]
    fn sparse_graph_is_all_singles() {
        let g = cycle(10).unwrap();
        assert_eq!(greedy_ladder(&g).pieces.len(), 10);
    }

    #[test]
    fn complete_graph_is_valid_and_short() {
        let g = complete(41);
        let d = greedy_ladder(&g);
        assert!(verify_decomposition(&g, &d).valid);
        assert!(d.pieces.len() < g.m() / 4);
    }
}
