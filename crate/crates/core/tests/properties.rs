//! Randomised invariants of the building blocks and pipelines.

use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;

use cyclepack_core::cut_dense::{connect_pairs, internal_cap, refine_cut, short_path_collection};
use cyclepack_core::path_decomp::{decompose_with_sparse_ends, lovasz_decompose, sparse_ends};
use cyclepack_core::random_graph::{split_random, two_step_closures};
use cyclepack_core::{
    edge, gnp, parse_edge_list, verify_decomposition, verify_pieces, write_edge_list, DecompositionDoc, Edge, Graph,
    Piece, Strategy as Pipeline, Vertex,
};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, p, seed)| gnp(n, p, seed).unwrap())
}

fn edge_set(pieces: &[Piece]) -> Vec<Edge> {
    let mut all: Vec<Edge> = pieces.iter().flat_map(Piece::edges).collect();
    all.sort_unstable();
    all
}

/// Breadth-first search from `s` to `t` over edges not in `removed`.
fn reachable_within(g: &Graph, s: &[Vertex], t: &[Vertex], removed: &HashSet<Edge>, ell: usize) -> bool {
    let targets: HashSet<Vertex> = t.iter().copied().collect();
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue: VecDeque<Vertex> = s.iter().copied().collect();
    for &v in s {
        dist[v] = 0;
    }
    while let Some(v) = queue.pop_front() {
        if dist[v] == ell {
            continue;
        }
        for &w in g.neighbors(v) {
            if removed.contains(&edge(v, w)) || dist[w] != usize::MAX {
                continue;
            }
            if targets.contains(&w) {
                return true;
            }
            dist[w] = dist[v] + 1;
            queue.push_back(w);
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pipelines_produce_valid_decompositions(g in graph(40), seed in any::<u64>()) {
        let mut runs = vec![
            Pipeline::General,
            Pipeline::Sparse,
            Pipeline::Random { p: None },
            Pipeline::CutDense { d: 0.1 },
            Pipeline::Auto,
        ];
        let delta = g.min_degree();
        if g.n() >= 2 && 5 * delta >= g.n() {
            runs.push(Pipeline::MinDegree { c: delta as f64 / g.n() as f64 });
        }
        for s in runs {
            let d = s.run(&g, seed).unwrap();
            prop_assert!(verify_decomposition(&g, &d).valid, "{s}");
            prop_assert!(d.pieces.len() <= g.m());
        }
    }

    #[test]
    fn same_seed_same_output(g in graph(40), seed in any::<u64>()) {
        for s in [Pipeline::General, Pipeline::Random { p: None }, Pipeline::CutDense { d: 0.1 }] {
            let a = DecompositionDoc::from(&s.run(&g, seed).unwrap()).to_json();
            let b = DecompositionDoc::from(&s.run(&g, seed).unwrap()).to_json();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn lovasz_partitions_with_linear_count(g in graph(40)) {
        let ps = lovasz_decompose(&g);
        let pieces = ps.all_pieces();
        let live = g.non_isolated().len();
        prop_assert!(verify_pieces(&g, &pieces).valid);
        prop_assert_eq!(ps.target, live / 2);
        prop_assert!(pieces.len() <= live);
        if g.n() <= 7 {
            prop_assert!(pieces.len() <= live / 2);
        }
    }

    #[test]
    fn sparse_ends_keeps_a_partition(g in graph(50)) {
        let base = lovasz_decompose(&g);
        let ps = sparse_ends(&base);
        let h = base.paths.len();
        prop_assert!(verify_pieces(&g, &ps.all_pieces()).valid);
        let bound = (0..).find(|&k: &usize| k * k >= 2 * h).unwrap();
        prop_assert!(ps.max_multiplicity() <= bound);
        prop_assert!(ps.loose_edges.len() - base.loose_edges.len() <= 2 * h);
    }

    #[test]
    fn split_is_a_partition(g in graph(50), ratio in 0.01..1.0f64, seed in any::<u64>()) {
        let (a, b) = split_random(&g, 1.0, ratio, seed).unwrap();
        let mut all: Vec<Edge> = a.edges().iter().chain(b.edges()).copied().collect();
        all.sort_unstable();
        let mut want = g.edges().to_vec();
        want.sort_unstable();
        prop_assert_eq!(all, want);
    }

    #[test]
    fn closures_respect_caps(g in graph(50), seed in any::<u64>()) {
        let (g1, g2) = split_random(&g, 1.0, 0.4, seed).unwrap();
        let ps = decompose_with_sparse_ends(&g2);
        let out = two_step_closures(&g1, &ps);
        prop_assert!(out.middle_usage.iter().all(|&u| u <= out.middle_cap));
        // closed walks, failed paths and the rest of g1 cover g exactly once
        let mut pieces = out.closed.clone();
        pieces.extend(out.singles.iter().cloned());
        pieces.extend(ps.cycles.iter().cloned());
        pieces.extend(ps.loose_edges.iter().cloned());
        pieces.extend(out.residual.edges().iter().map(|&(a, b)| Piece::single(a, b)));
        prop_assert!(verify_pieces(&g, &pieces).valid);
        prop_assert_eq!(out.failures.len() + out.closed.iter().filter(|p| p.is_cycle()).count() >= ps.paths.len(), true);
    }

    #[test]
    fn pair_routing_is_disjoint_and_capped(
        g in graph(40),
        raw in proptest::collection::vec((any::<usize>(), any::<usize>()), 0..30),
        ell in 1usize..6,
    ) {
        let n = g.n();
        prop_assume!(n >= 2);
        let pairs: Vec<(Vertex, Vertex)> = raw.iter().map(|&(a, b)| (a % n, b % n)).filter(|(a, b)| a != b).collect();
        let mut occ = vec![0usize; n];
        for &(a, b) in &pairs {
            occ[a] += 1;
            occ[b] += 1;
        }
        let r = occ.iter().copied().max().unwrap_or(0).max(1);
        let cap = internal_cap(pairs.len(), ell).max(1);
        let routing = connect_pairs(&g, &pairs, r, ell, cap).unwrap();
        prop_assert!(routing.verify(&g, &pairs));
        prop_assert!(connect_pairs(&g, &pairs, r - 1, ell, cap).is_err() || r == 1 || pairs.is_empty());
    }

    #[test]
    fn short_paths_are_maximal(g in graph(40), split in 0.1..0.5f64, ell in 1usize..6) {
        let n = g.n();
        let k = ((n as f64 * split) as usize).max(1).min(n);
        let s: Vec<Vertex> = (0..k).collect();
        let t: Vec<Vertex> = (n - (n - k).min(k)..n).filter(|&v| v >= k).collect();
        let paths = short_path_collection(&g, &s, &t, ell).unwrap();
        let mut removed = HashSet::new();
        for p in &paths {
            prop_assert!(p.len() >= 2 && p.len() <= ell + 1);
            prop_assert!(s.contains(&p[0]) && t.contains(p.last().unwrap()));
            for w in p.windows(2) {
                prop_assert!(g.has_edge(w[0], w[1]));
                prop_assert!(removed.insert(edge(w[0], w[1])));
            }
        }
        prop_assert!(t.is_empty() || !reachable_within(&g, &s, &t, &removed, ell));
    }

    #[test]
    fn refined_cuts_meet_their_guarantees(
        a in 8usize..30,
        b in 8usize..30,
        p_in in 0.7..1.0f64,
        p_out in 0.0..0.05f64,
        swaps in 0usize..3,
        seed in any::<u64>(),
    ) {
        let n = a + b;
        let base = gnp(n, p_in, seed).unwrap();
        let cross = gnp(n, p_out, seed ^ 1).unwrap();
        let side = |v: Vertex| v < a;
        let edges = base.edges().iter().filter(|&&(u, v)| side(u) == side(v))
            .chain(cross.edges().iter().filter(|&&(u, v)| side(u) != side(v)))
            .copied();
        let g = Graph::new(n, edges).unwrap();
        let mut v1: Vec<Vertex> = (swaps..a).collect();
        v1.extend(a..a + swaps);
        let v2: Vec<Vertex> = (0..n).filter(|v| !v1.contains(v)).collect();
        let mut in1 = vec![false; n];
        for &v in &v1 {
            in1[v] = true;
        }
        let c = g.min_degree() as f64 / n as f64;
        let d = g.cut_size(&in1) as f64 / (v1.len() * v2.len()) as f64;
        prop_assume!(c > 0.0 && d <= c / 2.0);
        let (u1, u2) = refine_cut(&g, &v1, &v2, c, d).unwrap();
        prop_assert_eq!(u1.len() + u2.len(), n);
        let mut mask = vec![false; n];
        for &v in &u1 {
            mask[v] = true;
        }
        prop_assert!(u2.iter().all(|&v| !mask[v]));
        let nf = n as f64;
        prop_assert!(g.cut_size(&mask) as f64 <= d * nf * nf + 1e-9);
        for (u, inside) in [(&u1, true), (&u2, false)] {
            let k = u.len() as f64;
            let min_inner = u.iter().map(|&v| g.neighbors(v).iter().filter(|&&w| mask[w] == inside).count()).min().unwrap();
            prop_assert!(min_inner as f64 >= (c - 5.0 * d / c) * k - 1e-9);
        }
    }

    #[test]
    fn edge_lists_roundtrip(g in graph(40)) {
        let text = write_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn decomposition_documents_roundtrip(g in graph(30), seed in any::<u64>()) {
        let d = Pipeline::General.run(&g, seed).unwrap();
        let doc = DecompositionDoc::from(&d);
        let back = DecompositionDoc::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(edge_set(&back.pieces), edge_set(&d.pieces));
        prop_assert_eq!(back.to_json(), doc.to_json());
    }
}
