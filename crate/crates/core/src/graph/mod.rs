//! Simple graphs, paths and the graph-level building blocks used by every solver.

mod blocks;
mod enumerate;
pub mod generators;
mod io;
mod layers;

pub use blocks::{block_cut_tree, relevant_part, BlockCutTree};
pub use enumerate::{enumerate_st_paths, shortest_path};
pub use io::{format_graph, parse_graph};
pub use layers::{bfs_layers, layer_slice, layer_tail, LayerMap};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub type Vertex = usize;

/// Immutable simple graph on the vertex set `0..n`.
///
/// Adjacency lists are sorted so every traversal is deterministic. For
/// undirected graphs `edges` holds each edge once as `(min, max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range ids.
    pub fn new(n: usize, directed: bool, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u}, {v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            let e = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate edge ({}, {})", w[0].0, w[0].1)));
        }
        for &(u, v) in &list {
            out_adj[u].push(v);
            in_adj[v].push(u);
            if !directed {
                out_adj[v].push(u);
                in_adj[u].push(v);
            }
        }
        for a in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            a.sort_unstable();
        }
        Ok(Graph { directed, out_adj, in_adj, edges: list })
    }

    pub fn undirected(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        Self::new(n, false, edges)
    }

    pub fn directed(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        Self::new(n, true, edges)
    }

    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Out-neighbors (all neighbors when undirected), sorted.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::input(format!("vertex {v} out of range 0..{}", self.n())))
        }
    }

    /// Subgraph induced by `vertices`. Local ids follow the sorted order of host ids.
    pub fn induced(&self, vertices: &[Vertex]) -> Subgraph {
        let mut to_host: Vec<Vertex> = vertices.to_vec();
        to_host.sort_unstable();
        to_host.dedup();
        let mut from_host = vec![None; self.n()];
        for (i, &v) in to_host.iter().enumerate() {
            from_host[v] = Some(i);
        }
        let edges = self.edges.iter().filter_map(|&(u, v)| Some((from_host[u]?, from_host[v]?)));
        let graph = Graph::new(to_host.len(), self.directed, edges).expect("induced subgraph of a simple graph is simple");
        Subgraph { graph, to_host, from_host }
    }

    /// True iff every vertex is reachable from vertex 0 ignoring edge directions.
    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in self.out_adj[u].iter().chain(self.in_adj[u].iter()) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

/// A subgraph together with its id translation tables.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// `to_host[local] = host`.
    pub to_host: Vec<Vertex>,
    /// `from_host[host] = Some(local)` for retained vertices.
    pub from_host: Vec<Option<Vertex>>,
}

impl Subgraph {
    pub fn local(&self, host: Vertex) -> Option<Vertex> {
        self.from_host.get(host).copied().flatten()
    }

    pub fn host(&self, local: Vertex) -> Vertex {
        self.to_host[local]
    }

    pub fn contains(&self, host: Vertex) -> bool {
        self.local(host).is_some()
    }

    pub fn lift_path(&self, p: &Path) -> Path {
        Path::new(p.vertices().iter().map(|&v| self.to_host[v]).collect())
    }

    pub fn lower_path(&self, p: &Path) -> Option<Path> {
        p.vertices().iter().map(|&v| self.local(v)).collect::<Option<Vec<_>>>().map(Path::new)
    }
}

/// A self-avoiding walk, stored as its vertex sequence. Length counts edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    /// Panics on an empty sequence; a path always has at least one vertex.
    pub fn new(vertices: Vec<Vertex>) -> Self {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        Path { vertices }
    }

    pub fn single(v: Vertex) -> Self {
        Path { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.vertices.clone();
        v.reverse();
        Path { vertices: v }
    }

    /// Joins `self` and `other`, which must share the junction vertex.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.last() != other.first() {
            return Err(Error::Consistency(format!(
                "cannot join path ending at {} with path starting at {}",
                self.last(),
                other.first()
            )));
        }
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices[1..]);
        Ok(Path { vertices: v })
    }

    /// Checks distinctness and adjacency (respecting direction) in `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = vec![false; g.n()];
        for &v in &self.vertices {
            g.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Consistency(format!("path revisits vertex {v}")));
            }
        }
        for w in self.vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::Consistency(format!("path uses non-edge ({}, {})", w[0], w[1])));
            }
        }
        Ok(())
    }

    /// Validates and additionally checks the endpoints.
    pub fn validate_st(&self, g: &Graph, s: Vertex, t: Vertex) -> Result<()> {
        self.validate(g)?;
        if self.first() != s || self.last() != t {
            return Err(Error::Consistency(format!(
                "path runs {}..{} instead of {s}..{t}",
                self.first(),
                self.last()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_bad_ids() {
        assert!(Graph::undirected(3, [(0, 0)]).is_err());
        assert!(Graph::undirected(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::undirected(3, [(0, 3)]).is_err());
        assert!(Graph::directed(3, [(0, 1), (1, 0)]).is_ok());
        assert!(Graph::directed(3, [(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn undirected_adjacency_is_symmetric() {
        let g = Graph::undirected(4, [(2, 0), (1, 2), (3, 1)]).unwrap();
        for u in 0..4 {
            for &v in g.neighbors(u) {
                assert!(g.neighbors(v).contains(&u));
            }
        }
        assert_eq!(g.edges(), &[(0, 2), (1, 2), (1, 3)]);
    }

    #[test]
    fn path_validation() {
        let g = Graph::directed(3, [(0, 1), (1, 2)]).unwrap();
        assert!(Path::new(vec![0, 1, 2]).validate(&g).is_ok());
        assert!(Path::new(vec![2, 1, 0]).validate(&g).is_err());
        assert!(Path::new(vec![0, 1, 0]).validate(&g).is_err());
        assert_eq!(Path::single(1).len(), 0);
    }

    #[test]
    fn induced_keeps_translation() {
        let g = Graph::undirected(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let sub = g.induced(&[3, 1, 2]);
        assert_eq!(sub.to_host, vec![1, 2, 3]);
        assert_eq!(sub.graph.m(), 2);
        assert_eq!(sub.local(2), Some(1));
        assert_eq!(sub.local(0), None);
        let p = sub.lift_path(&Path::new(vec![0, 1, 2]));
        assert_eq!(p.vertices(), &[1, 2, 3]);
    }
}
