//! Small graph families used by tests, benchmarks and the `gen` command.

use super::{Graph, Vertex};
use rand::Rng;

pub fn path_graph(n: usize) -> Graph {
    Graph::undirected(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    Graph::undirected(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::undirected(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::undirected(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

/// `rows x cols` grid, vertex `(r, c)` has id `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::undirected(rows * cols, edges).unwrap()
}

/// Erdos-Renyi `G(n, p)`; directed graphs draw each ordered pair independently.
pub fn gnp<R: Rng>(n: usize, p: f64, directed: bool, rng: &mut R) -> Graph {
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, directed, edges).unwrap()
}

/// `G(n, p)` conditioned on connectivity: a random spanning tree is added first.
pub fn connected_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = std::collections::BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    Graph::undirected(n, edges).unwrap()
}
