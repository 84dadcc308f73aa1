//! Tree decompositions: validation, construction and bounds on treewidth.

mod exact;
mod heuristic;
mod lower_bound;
mod td_format;

pub use exact::{exact_treewidth_small, DEFAULT_EXACT_BUDGET};
pub use heuristic::{from_elimination_order, heuristic_decomposition, Strategy};
pub use lower_bound::treewidth_lower_bound;
pub use td_format::{format_td, parse_td};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A tree whose nodes carry bags of host vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated; the tree shape is checked lazily by
    /// [`validate_decomposition`].
    pub fn new(mut bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one (0 for a decomposition of the empty graph).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Errors unless the node structure is a tree.
    pub fn check_tree(&self) -> Result<()> {
        let n = self.bags.len();
        if n == 0 {
            return Err(Error::Structural("decomposition has no nodes".into()));
        }
        if self.edges.iter().any(|&(a, b)| a >= n || b >= n || a == b) {
            return Err(Error::Structural("tree edge references an invalid node".into()));
        }
        if self.edges.len() != n - 1 {
            return Err(Error::Structural(format!("{} nodes need {} tree edges, found {}", n, n - 1, self.edges.len())));
        }
        if count_reached(&self.adjacency(), 0, |_| true) != n {
            return Err(Error::Structural("decomposition tree is disconnected".into()));
        }
        Ok(())
    }
}

fn count_reached(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> usize {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

/// Outcome of checking the three decomposition conditions, each with a
/// counterexample on failure.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidityReport {
    /// A vertex contained in no bag.
    pub uncovered_vertex: Option<Vertex>,
    /// An edge whose endpoints never share a bag.
    pub uncovered_edge: Option<(Vertex, Vertex)>,
    /// A vertex whose bags do not form a connected subtree.
    pub disconnected_vertex: Option<Vertex>,
}

impl ValidityReport {
    pub fn vertices_covered(&self) -> bool {
        self.uncovered_vertex.is_none()
    }

    pub fn edges_covered(&self) -> bool {
        self.uncovered_edge.is_none()
    }

    pub fn subtrees_connected(&self) -> bool {
        self.disconnected_vertex.is_none()
    }

    pub fn is_valid(&self) -> bool {
        self.vertices_covered() && self.edges_covered() && self.subtrees_connected()
    }
}

/// Checks vertex coverage, edge coverage and the connected-subtree condition.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<ValidityReport> {
    td.check_tree()?;
    let n = g.n();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(Error::Structural(format!("bag {i} contains vertex {v} outside 0..{n}")));
            }
            holders[v].push(i);
        }
    }
    let mut report = ValidityReport {
        uncovered_vertex: (0..n).find(|&v| holders[v].is_empty()),
        ..Default::default()
    };
    report.uncovered_edge = g.edges().iter().copied().find(|&(u, v)| {
        !holders[u].iter().any(|&b| td.bags[b].binary_search(&v).is_ok())
    });
    let adj = td.adjacency();
    report.disconnected_vertex = (0..n).find(|&v| {
        let hs = &holders[v];
        !hs.is_empty() && count_reached(&adj, hs[0], |x| td.bags[x].binary_search(&v).is_ok()) != hs.len()
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::path_graph;

    #[test]
    fn single_bag_is_valid() {
        let g = path_graph(5);
        let td = TreeDecomposition::new(vec![(0..5).collect()], vec![]);
        assert!(validate_decomposition(&g, &td).unwrap().is_valid());
        assert_eq!(td.width(), 4);
    }

    #[test]
    fn chained_path_bags() {
        let g = path_graph(5);
        let bags: Vec<Vec<usize>> = (0..4).map(|i| vec![i, i + 1]).collect();
        let td = TreeDecomposition::new(bags.clone(), (0..3).map(|i| (i, i + 1)).collect());
        assert!(validate_decomposition(&g, &td).unwrap().is_valid());
        assert_eq!(td.width(), 1);

        // drop the bag {1,2}: reconnect {0,1} to {2,3}
        let td = TreeDecomposition::new(vec![bags[0].clone(), bags[2].clone(), bags[3].clone()], vec![(0, 1), (1, 2)]);
        let r = validate_decomposition(&g, &td).unwrap();
        assert_eq!(r.uncovered_edge, Some((1, 2)));
        assert!(r.vertices_covered());
    }

    #[test]
    fn detects_uncovered_vertex_and_broken_subtree() {
        let g = path_graph(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1]], vec![(0, 1)]);
        assert_eq!(validate_decomposition(&g, &td).unwrap().uncovered_vertex, Some(2));
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![0]], vec![(0, 1), (1, 2)]);
        assert_eq!(validate_decomposition(&g, &td).unwrap().disconnected_vertex, Some(0));
    }

    #[test]
    fn non_tree_is_structural_error() {
        let g = path_graph(3);
        let cyc = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![0, 2]], vec![(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(validate_decomposition(&g, &cyc), Err(Error::Structural(_))));
        let forest = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![]);
        assert!(matches!(validate_decomposition(&g, &forest), Err(Error::Structural(_))));
    }
}
