#![allow(dead_code)]

use detour_core::graph::enumerate_st_paths;
use detour_core::graph::generators::{connected_gnp, gnp};
use detour_core::tetra::{gen_subdivided_k4, TetraModel};
use detour_core::{Graph, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub const PROBABILITIES: [f64; 3] = [0.2, 0.4, 0.6];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected undirected graphs on 5..=10 vertices, cycling through the edge probabilities.
pub fn undirected_corpus(count: usize, seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count).map(|i| connected_gnp(5 + i % 6, PROBABILITIES[i % 3], &mut r)).collect()
}

pub fn directed_corpus(count: usize, seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count).map(|i| gnp(5 + i % 6, PROBABILITIES[i % 3], true, &mut r)).collect()
}

/// Distinct lengths of simple `(s,t)`-paths, by enumeration.
pub fn path_lengths(g: &Graph, s: Vertex, t: Vertex) -> BTreeSet<usize> {
    enumerate_st_paths(g, s, t, 10_000_000).unwrap().iter().map(|p| p.len()).collect()
}

pub fn ordered_pairs(n: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (0..n).flat_map(move |s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
}

/// A `K4^(k)` with counts in `k..=k+2`, grown by random ears into a larger
/// 2-connected core, with pendant trees and terminals hanging off two
/// distinct core vertices (sometimes behind an extra cycle block).
pub struct PlantedHost {
    pub graph: Graph,
    pub model: TetraModel,
    pub s: Vertex,
    pub t: Vertex,
}

pub fn planted_host(k: usize, r: &mut ChaCha8Rng) -> PlantedHost {
    let counts: [usize; 6] = std::array::from_fn(|_| k + r.gen_range(0..=2));
    let (g, model) = gen_subdivided_k4(counts);
    let mut edges: BTreeSet<(Vertex, Vertex)> = g.edges().iter().copied().collect();
    let mut n = g.n();
    fn add(edges: &mut BTreeSet<(Vertex, Vertex)>, a: Vertex, b: Vertex) {
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let mut core: Vec<Vertex> = (0..n).collect();
    for _ in 0..r.gen_range(0..=4) {
        let a = *core.choose(r).unwrap();
        let b = *core.iter().filter(|&&x| x != a).collect::<Vec<_>>().choose(r).copied().unwrap();
        let inner = r.gen_range(0..=2);
        let mut prev = a;
        for _ in 0..inner {
            add(&mut edges, prev, n);
            core.push(n);
            prev = n;
            n += 1;
        }
        add(&mut edges, prev, b);
    }
    for _ in 0..r.gen_range(0..=3) {
        let a = *core.choose(r).unwrap();
        add(&mut edges, a, n);
        n += 1;
    }
    let x = *core.choose(r).unwrap();
    let y = *core.iter().filter(|&&z| z != x).collect::<Vec<_>>().choose(r).copied().unwrap();
    let mut attach = |edges: &mut BTreeSet<(Vertex, Vertex)>, anchor: Vertex, r: &mut ChaCha8Rng| -> Vertex {
        let mut cur = anchor;
        if r.gen_bool(0.5) {
            // a triangle block between the terminal stub and the core
            let (p, q) = (n, n + 1);
            add(edges, cur, p);
            add(edges, p, q);
            add(edges, q, cur);
            n += 2;
            cur = q;
        }
        for _ in 0..r.gen_range(1..=3) {
            add(edges, cur, n);
            cur = n;
            n += 1;
        }
        cur
    };
    let s = attach(&mut edges, x, r);
    let t = attach(&mut edges, y, r);
    let graph = Graph::undirected(n, edges).unwrap();
    PlantedHost { graph, model, s, t }
}

/// Simple graphs on `min_n..=max_n` vertices, each edge present independently.
pub fn arb_graph(min_n: usize, max_n: usize, directed: bool) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (min_n..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(Vertex, Vertex)> = if directed {
            ordered_pairs(n).collect()
        } else {
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
        };
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, directed, edges).unwrap()
        })
    })
}

/// Vertices lying on at least one simple `(s,t)`-path, by enumeration.
pub fn on_some_path(g: &Graph, s: Vertex, t: Vertex) -> BTreeSet<Vertex> {
    enumerate_st_paths(g, s, t, 10_000_000).unwrap().iter().flat_map(|p| p.vertices().to_vec()).collect()
}
