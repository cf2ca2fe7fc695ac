//! Edge-list text and decomposition JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::piece::{Decomposition, PartialDecomposition, Piece};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn two_ints(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| parse_err(line, "expected two integers"))?;
        tok.parse()
            .map_err(|_| parse_err(line, format!("not a non-negative integer: {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(parse_err(line, "trailing tokens"));
    }
    Ok((a, b))
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v` with
/// `u < v < n`. Blank lines and lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
    let (n, m) = two_ints(hline, header)?;
    let mut edges: Vec<Edge> = Vec::with_capacity(m);
    for (ln, l) in lines {
        let (u, v) = two_ints(ln, l)?;
        if v >= n || u >= n {
            return Err(parse_err(ln, format!("vertex out of range for n = {n}")));
        }
        if u >= v {
            return Err(parse_err(ln, "expected u < v"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            hline,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let mut sorted = edges.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(parse_err(0, format!("duplicate edge {} {}", w[0].0, w[0].1)));
    }
    Graph::new(n, edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(12 * (g.m() + 1));
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// On-disk form of a (partial) decomposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub n: usize,
    pub pieces: Vec<Piece>,
    #[serde(default)]
    pub leftover: Vec<Edge>,
}

impl From<&Decomposition> for DecompositionDoc {
    fn from(d: &Decomposition) -> Self {
        DecompositionDoc {
            n: d.n,
            pieces: d.pieces.clone(),
            leftover: Vec::new(),
        }
    }
}

impl From<&PartialDecomposition> for DecompositionDoc {
    fn from(d: &PartialDecomposition) -> Self {
        DecompositionDoc {
            n: d.n,
            pieces: d.pieces.clone(),
            leftover: d.leftover.clone(),
        }
    }
}

impl DecompositionDoc {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn into_partial(self) -> PartialDecomposition {
        PartialDecomposition {
            n: self.n,
            pieces: self.pieces,
            leftover: self.leftover,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piece::PieceKind;

    #[test]
    fn edge_list_roundtrip() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let g = parse_edge_list("# triangle\n3 3\n\n0 1\n1 2\n# mid\n0 2\n").unwrap();
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn malformed_edge_lists() {
        for bad in [
            "",
            "3",
            "3 1\n1 0\n",
            "3 1\n0 3\n",
            "3 2\n0 1\n",
            "3 2\n0 1\n0 1\n",
            "3 1\n0 x\n",
        ] {
            assert!(matches!(parse_edge_list(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn json_schema() {
        let doc = DecompositionDoc {
            n: 3,
            pieces: vec![Piece::cycle(vec![0, 1, 2])],
            leftover: vec![],
        };
        let json = doc.to_json();
        assert_eq!(
            json,
            r#"{"n":3,"pieces":[{"kind":"cycle","vertices":[0,1,2]}],"leftover":[]}"#
        );
        let back = DecompositionDoc::from_json(r#"{"n":2,"pieces":[{"kind":"edge","vertices":[0,1]}]}"#).unwrap();
        assert_eq!(back.pieces[0].kind, PieceKind::SingleEdge);
        assert!(DecompositionDoc::from_json(r#"{"n":2,"pieces":[{"kind":"loop","vertices":[0]}]}"#).is_err());
    }
}
