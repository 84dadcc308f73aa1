use super::{Graph, Subgraph, Vertex};
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// BFS distances from a fixed source. Unreachable vertices have no entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerMap {
    source: Vertex,
    dist: Vec<Option<usize>>,
}

impl LayerMap {
    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn get(&self, v: Vertex) -> Option<usize> {
        self.dist.get(v).copied().flatten()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.get(v).is_some()
    }

    /// Deepest non-empty layer.
    pub fn depth(&self) -> usize {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Vertices with `d(x) == i`, ascending.
    pub fn layer(&self, i: usize) -> Vec<Vertex> {
        (0..self.dist.len()).filter(|&v| self.dist[v] == Some(i)).collect()
    }

    /// Checks the layering property on every edge of `g`: `|d(u) - d(v)| <= 1`
    /// for undirected edges, and for arcs `u -> v` with `u` reached, `v` is
    /// reached with `d(v) <= d(u) + 1`.
    pub fn satisfies_edge_property(&self, g: &Graph) -> bool {
        g.edges().iter().all(|&(u, v)| match (self.get(u), self.get(v)) {
            (Some(a), Some(b)) if g.is_directed() => b <= a + 1,
            (Some(a), Some(b)) => a.abs_diff(b) <= 1,
            (Some(_), None) => false,
            (None, Some(_)) => g.is_directed(),
            (None, None) => true,
        })
    }

    fn require(&self, v: Vertex) -> Result<usize> {
        self.get(v).ok_or_else(|| Error::input(format!("vertex {v} is unreachable from {}", self.source)))
    }
}

/// Shortest-path distances from `s` along (out-)edges.
pub fn bfs_layers(g: &Graph, s: Vertex) -> Result<LayerMap> {
    g.check_vertex(s)?;
    let mut dist = vec![None; g.n()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(LayerMap { source: s, dist })
}

/// The slice `G[u,v]`: induced on `u`, `v` and every `x` with `d(u) < d(x) < d(v)`.
pub fn layer_slice(g: &Graph, layers: &LayerMap, u: Vertex, v: Vertex) -> Result<Subgraph> {
    let du = layers.require(u)?;
    let dv = layers.require(v)?;
    if du >= dv {
        return Err(Error::input(format!("slice needs d({u}) < d({v}), got {du} >= {dv}")));
    }
    let mut keep = vec![u, v];
    keep.extend((0..g.n()).filter(|&x| matches!(layers.get(x), Some(d) if du < d && d < dv)));
    Ok(g.induced(&keep))
}

/// The tail `G[u,inf)`: induced on `u` and every `x` with `d(x) > d(u)`.
pub fn layer_tail(g: &Graph, layers: &LayerMap, u: Vertex) -> Result<Subgraph> {
    let du = layers.require(u)?;
    let mut keep = vec![u];
    keep.extend((0..g.n()).filter(|&x| matches!(layers.get(x), Some(d) if d > du)));
    Ok(g.induced(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{cycle, path_graph};

    #[test]
    fn path_distances() {
        let g = path_graph(4);
        let l = bfs_layers(&g, 0).unwrap();
        assert_eq!((0..4).map(|v| l.get(v)).collect::<Vec<_>>(), vec![Some(0), Some(1), Some(2), Some(3)]);
        assert!(l.satisfies_edge_property(&g));
    }

    #[test]
    fn triangle_and_unreachable() {
        let g = Graph::undirected(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let l = bfs_layers(&g, 0).unwrap();
        assert_eq!(l.get(1), Some(1));
        assert_eq!(l.get(2), Some(1));
        assert_eq!(l.get(3), None);
        assert!(bfs_layers(&g, 9).is_err());
    }

    #[test]
    fn slices_and_tails_on_a_path() {
        let g = path_graph(4);
        let l = bfs_layers(&g, 0).unwrap();
        let s = layer_slice(&g, &l, 1, 3).unwrap();
        assert_eq!(s.to_host, vec![1, 2, 3]);
        assert_eq!(s.graph.m(), 2);
        let t = layer_tail(&g, &l, 2).unwrap();
        assert_eq!(t.to_host, vec![2, 3]);
        assert_eq!(layer_tail(&g, &l, 0).unwrap().graph, g);
        assert!(layer_slice(&g, &l, 3, 1).is_err());
        assert!(layer_slice(&g, &l, 2, 2).is_err());
    }

    #[test]
    fn slice_drops_same_layer_neighbours_of_endpoints() {
        // s=0; layer1 = {1,2}; layer2 = {3,4}; layer3 = {5}
        // 3-4 is an edge inside layer 2, 1-2 an edge inside layer 1.
        let g = Graph::undirected(6, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 5)]).unwrap();
        let l = bfs_layers(&g, 0).unwrap();
        let s = layer_slice(&g, &l, 1, 5).unwrap();
        assert_eq!(s.to_host, vec![1, 3, 4, 5]);
        // 1-2 is dropped with vertex 2; the in-layer edge 3-4 survives.
        assert!(s.graph.has_edge(s.local(3).unwrap(), s.local(4).unwrap()));
        assert_eq!(s.graph.m(), 4);
    }

    #[test]
    fn antipodal_tail_of_c6_is_a_single_vertex() {
        let g = cycle(6);
        let l = bfs_layers(&g, 0).unwrap();
        let t = layer_tail(&g, &l, 3).unwrap();
        assert_eq!(t.to_host, vec![3]);
        assert_eq!(t.graph.m(), 0);
    }

    #[test]
    fn directed_layers() {
        let g = Graph::directed(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let l = bfs_layers(&g, 1).unwrap();
        assert_eq!(l.get(0), Some(2));
        assert!(l.satisfies_edge_property(&g));
    }
}
