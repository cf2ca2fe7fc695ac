//! Splitting a graph into small parts plus stripped long cycles.

use crate::graph::{Graph, Subgraph, Vertex};
use crate::long_cycle::{rotation_witness, PosaWitness};
use crate::piece::Piece;

#[derive(Clone, Debug)]
pub struct CircumferenceSplit {
    /// Parts in local ids; together with `stripped` they partition the edges.
    pub parts: Vec<Subgraph>,
    /// Cycles longer than `t` met along the way.
    pub stripped: Vec<Piece>,
    /// Steps where the rotation closure came back larger than the bound.
    pub oversize_fallbacks: usize,
}

impl CircumferenceSplit {
    pub fn total_part_vertices(&self) -> usize {
        self.parts.iter().map(|p| p.graph.n()).sum()
    }
}

/// Star of `v` in `g`, cut into chunks of at most `t + 1` leaves.
fn star_parts(g: &Graph, v: Vertex, t: usize) -> Vec<Subgraph> {
    g.neighbors(v)
        .chunks(t + 1)
        .map(|leaves| {
            let mut to_parent = vec![v];
            to_parent.extend_from_slice(leaves);
            let graph = Graph::new(to_parent.len(), (1..to_parent.len()).map(|i| (0, i))).expect("star is simple");
            Subgraph { graph, to_parent }
        })
        .collect()
}

/// Repeatedly asks for a rotation witness with parameter `⌈t/3⌉`: a long
/// cycle is stripped, a small set `S` turns `S ∪ N(S)` into a part and the
/// rest is processed further. Once at most `t + 2` vertices carry edges they
/// form the last part.
///
/// When the closure is oversize, the longest cycle found is stripped if it
/// exceeds `t`; otherwise the star of a minimum-degree vertex is split off.
pub fn circumference_split(g: &Graph, t: usize) -> CircumferenceSplit {
    let t = t.max(1);
    let mut rem = g.clone();
    let mut out = CircumferenceSplit {
        parts: Vec::new(),
        stripped: Vec::new(),
        oversize_fallbacks: 0,
    };
    let k = t.div_ceil(3);
    loop {
        let live = rem.non_isolated();
        if live.is_empty() {
            break;
        }
        if live.len() <= t + 2 {
            out.parts.push(rem.induced_subgraph(&live).expect("in range"));
            break;
        }
        let witness = rotation_witness(&rem, k).expect("graph has edges and k >= 1");
        let removed: Vec<_> = match witness {
            PosaWitness::LongCycle(c) => {
                let e = c.edges();
                out.stripped.push(c);
                e
            }
            PosaWitness::SmallSet(s) => {
                let mut vs = s.clone();
                vs.extend(rem.external_neighborhood(&s));
                vs.sort_unstable();
                let part = rem.induced_subgraph(&vs).expect("in range");
                let e = part.graph.edges().iter().map(|&e| part.lift_edge(e)).collect();
                out.parts.push(part);
                e
            }
            PosaWitness::OversizeSet { longest_cycle, .. } => {
                out.oversize_fallbacks += 1;
                match longest_cycle {
                    Some(c) if c.len() > t => {
                        let e = c.edges();
                        out.stripped.push(c);
                        e
                    }
                    _ => {
                        let v = *live.iter().min_by_key(|&&v| (rem.degree(v), v)).expect("non-empty");
                        let parts = star_parts(&rem, v, t);
                        let e = rem.neighbors(v).iter().map(|&w| crate::graph::edge(v, w)).collect();
                        out.parts.extend(parts);
                        e
                    }
                }
            }
        };
        rem = rem.remove_edges(&removed).expect("removed edges are present");
    }
    out
}
