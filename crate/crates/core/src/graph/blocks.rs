use super::{Graph, Subgraph, Vertex};
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Blocks (maximal biconnected components) and cut vertices of a connected graph.
///
/// Tree nodes are the blocks (indexed `0..blocks.len()`) and the cut vertices;
/// `tree_edges` lists every `(block index, cut vertex)` incidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: Vec<Vertex>,
    pub tree_edges: Vec<(usize, Vertex)>,
}

impl BlockCutTree {
    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    /// Indices of blocks containing `v`.
    pub fn blocks_of(&self, v: Vertex) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.blocks[b].binary_search(&v).is_ok()).collect()
    }

    fn node_count(&self) -> usize {
        self.blocks.len() + self.cut_vertices.len()
    }

    fn cut_node(&self, v: Vertex) -> usize {
        self.blocks.len() + self.cut_vertices.binary_search(&v).expect("cut vertex")
    }

    /// Tree node for a vertex: its cut node if it is a cut vertex, else its unique block.
    fn node_of(&self, v: Vertex) -> Option<usize> {
        if self.is_cut_vertex(v) {
            Some(self.cut_node(v))
        } else {
            self.blocks_of(v).first().copied()
        }
    }

    fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(b, c) in &self.tree_edges {
            let cn = self.cut_node(c);
            adj[b].push(cn);
            adj[cn].push(b);
        }
        adj
    }

    /// Block indices along the tree path between the nodes of `a` and `b`.
    pub fn blocks_between(&self, a: Vertex, b: Vertex) -> Option<Vec<usize>> {
        let (from, to) = (self.node_of(a)?, self.node_of(b)?);
        let adj = self.tree_adjacency();
        let mut parent = vec![usize::MAX; adj.len()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[to] == usize::MAX {
            return None;
        }
        let mut nodes = vec![to];
        let mut x = to;
        while x != from {
            x = parent[x];
            nodes.push(x);
        }
        nodes.reverse();
        Some(nodes.into_iter().filter(|&x| x < self.blocks.len()).collect())
    }

    /// True iff the tree is a path whose first block contains `s` and last contains `t`.
    pub fn is_path_between(&self, s: Vertex, t: Vertex) -> bool {
        let adj = self.tree_adjacency();
        if adj.iter().any(|a| a.len() > 2) {
            return false;
        }
        match self.blocks_between(s, t) {
            Some(p) => p.len() == self.blocks.len(),
            None => false,
        }
    }
}

/// Hopcroft-Tarjan block decomposition. Requires an undirected connected graph.
pub fn block_cut_tree(g: &Graph) -> Result<BlockCutTree> {
    if g.is_directed() {
        return Err(Error::input("block-cut tree needs an undirected graph"));
    }
    if !g.is_connected() {
        return Err(Error::input("block-cut tree needs a connected graph"));
    }
    let n = g.n();
    if n == 0 {
        return Ok(BlockCutTree { blocks: vec![], cut_vertices: vec![], tree_edges: vec![] });
    }
    if n == 1 {
        return Ok(BlockCutTree { blocks: vec![vec![0]], cut_vertices: vec![], tree_edges: vec![] });
    }
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    let mut timer = 0;
    let root = 0;
    let mut root_children = 0;
    disc[root] = timer;
    low[root] = timer;
    timer += 1;
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, UNSEEN, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, p) = (top.0, top.1);
        if top.2 < g.neighbors(v).len() {
            let w = g.neighbors(v)[top.2];
            top.2 += 1;
            if disc[w] == UNSEEN {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                edge_stack.push((v, w));
                stack.push((w, v, 0));
            } else if w != p && disc[w] < disc[v] {
                low[v] = low[v].min(disc[w]);
                edge_stack.push((v, w));
            }
        } else {
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut verts = Vec::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        verts.push(a);
                        verts.push(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    verts.sort_unstable();
                    verts.dedup();
                    blocks.push(verts);
                    if u == root {
                        root_children += 1;
                    } else {
                        is_cut[u] = true;
                    }
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[root] = true;
    }
    blocks.sort();
    let cut_vertices: Vec<Vertex> = (0..n).filter(|&v| is_cut[v]).collect();
    let mut tree_edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            if is_cut[v] {
                tree_edges.push((i, v));
            }
        }
    }
    Ok(BlockCutTree { blocks, cut_vertices, tree_edges })
}

/// The subgraph induced by all vertices lying on some `(s,t)`-path.
///
/// Computed as the union of the blocks on the block-cut tree path between `s`
/// and `t` inside the component of `s`.
pub fn relevant_part(g: &Graph, s: Vertex, t: Vertex) -> Result<Subgraph> {
    if g.is_directed() {
        return Err(Error::input("relevant part needs an undirected graph"));
    }
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::input("relevant part needs s != t"));
    }
    let layers = super::bfs_layers(g, s)?;
    if !layers.contains(t) {
        return Err(Error::input(format!("{t} is not reachable from {s}")));
    }
    let comp: Vec<Vertex> = (0..g.n()).filter(|&v| layers.contains(v)).collect();
    let sub = g.induced(&comp);
    let bct = block_cut_tree(&sub.graph)?;
    let (ls, lt) = (sub.local(s).unwrap(), sub.local(t).unwrap());
    let path = bct
        .blocks_between(ls, lt)
        .ok_or_else(|| Error::Consistency("block-cut tree is disconnected".into()))?;
    let mut keep: Vec<Vertex> = path.iter().flat_map(|&b| bct.blocks[b].iter().map(|&v| sub.host(v))).collect();
    keep.sort_unstable();
    keep.dedup();
    Ok(g.induced(&keep))
}
