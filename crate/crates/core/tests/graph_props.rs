mod common;

use common::{arb_graph, on_some_path};
use detour_core::graph::{bfs_layers, block_cut_tree, format_graph, layer_slice, layer_tail, parse_graph, relevant_part};
use detour_core::{Graph, Vertex};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn components(g: &Graph, removed: Option<Vertex>) -> usize {
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for start in 0..g.n() {
        if seen[start] || Some(start) == removed {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] && Some(w) != removed {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn relevant_part_matches_enumeration(g in arb_graph(2, 8, false), s in 0usize..8, t in 0usize..8) {
        let (s, t) = (s % g.n(), t % g.n());
        prop_assume!(s != t);
        let expected = on_some_path(&g, s, t);
        match relevant_part(&g, s, t) {
            Ok(sub) => {
                let got: BTreeSet<Vertex> = sub.to_host.iter().copied().collect();
                prop_assert_eq!(got, expected);
                for &(a, b) in sub.graph.edges() {
                    prop_assert!(g.has_edge(sub.host(a), sub.host(b)));
                }
            }
            Err(_) => prop_assert!(expected.is_empty()),
        }
    }

    #[test]
    fn block_cut_tree_properties(g in arb_graph(1, 9, false)) {
        prop_assume!(g.is_connected());
        let bct = block_cut_tree(&g).unwrap();
        let base = components(&g, None);
        let cuts: Vec<Vertex> = (0..g.n()).filter(|&v| components(&g, Some(v)) > base).collect();
        prop_assert_eq!(&bct.cut_vertices, &cuts);
        // every edge lies in exactly one block
        for &(a, b) in g.edges() {
            let holders = bct.blocks.iter().filter(|bl| bl.binary_search(&a).is_ok() && bl.binary_search(&b).is_ok()).count();
            prop_assert_eq!(holders, 1);
        }
        for bl in &bct.blocks {
            let sub = g.induced(bl);
            prop_assert!(sub.graph.is_connected());
            if bl.len() > 2 {
                for v in 0..sub.graph.n() {
                    prop_assert_eq!(components(&sub.graph, Some(v)), 1);
                }
            }
        }
        // a tree: nodes = blocks + cut vertices, edges = nodes - 1
        if g.n() > 1 {
            prop_assert_eq!(bct.tree_edges.len() + 1, bct.blocks.len() + bct.cut_vertices.len());
        }
    }

    #[test]
    fn layering_respects_edges(g in arb_graph(1, 9, false), s in 0usize..9) {
        let l = bfs_layers(&g, s % g.n()).unwrap();
        prop_assert!(l.satisfies_edge_property(&g));
    }

    #[test]
    fn directed_layering_respects_arcs(g in arb_graph(1, 8, true), s in 0usize..8) {
        let l = bfs_layers(&g, s % g.n()).unwrap();
        prop_assert!(l.satisfies_edge_property(&g));
    }

    #[test]
    fn slices_and_tails_select_by_distance(g in arb_graph(2, 9, false), s in 0usize..9, u in 0usize..9) {
        let (s, u) = (s % g.n(), u % g.n());
        let l = bfs_layers(&g, s).unwrap();
        let Some(du) = l.get(u) else { return Ok(()) };
        let tail = layer_tail(&g, &l, u).unwrap();
        for x in 0..g.n() {
            let inside = x == u || l.get(x).is_some_and(|d| d > du);
            prop_assert_eq!(tail.contains(x), inside);
        }
        for v in 0..g.n() {
            match l.get(v) {
                Some(dv) if dv > du => {
                    let slice = layer_slice(&g, &l, u, v).unwrap();
                    for x in 0..g.n() {
                        let inside = x == u || x == v || l.get(x).is_some_and(|d| du < d && d < dv);
                        prop_assert_eq!(slice.contains(x), inside);
                    }
                }
                _ => prop_assert!(layer_slice(&g, &l, u, v).is_err()),
            }
        }
    }

    #[test]
    fn graph_text_round_trip(g in arb_graph(0, 12, false)) {
        let text = format_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(format_graph(&back), text);
    }

    #[test]
    fn digraph_text_round_trip(g in arb_graph(0, 8, true)) {
        prop_assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }
}

#[test]
fn parser_rejects_bad_input() {
    for bad in ["", "2 1 undirected\n0 0\n", "2 2 undirected\n0 1\n1 0\n", "2 1 sideways\n0 1\n", "2 2 undirected\n0 1\n", "2 1 undirected\n0 5\n"] {
        assert!(parse_graph(bad).is_err(), "{bad:?}");
    }
}
