use crate::graph::{Graph, Vertex};
use std::collections::BTreeSet;

/// MMD+ lower bound (min-d contraction): the largest minimum degree seen while
/// repeatedly contracting a minimum-degree vertex into its minimum-degree
/// neighbour. Minimum degree bounds treewidth from below and treewidth is
/// minor-monotone, so the result never exceeds the true treewidth.
pub fn treewidth_lower_bound(g: &Graph) -> usize {
    let n = g.n();
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive: BTreeSet<Vertex> = (0..n).collect();
    let mut lb = 0;
    while alive.len() >= 2 {
        let v = *alive.iter().min_by_key(|&&v| (adj[v].len(), v)).unwrap();
        lb = lb.max(adj[v].len());
        let nb: Vec<Vertex> = std::mem::take(&mut adj[v]).into_iter().collect();
        alive.remove(&v);
        for &w in &nb {
            adj[w].remove(&v);
        }
        if let Some(&u) = nb.iter().min_by_key(|&&u| (adj[u].len(), u)) {
            for &w in &nb {
                if w != u {
                    adj[u].insert(w);
                    adj[w].insert(u);
                }
            }
        }
    }
    lb
}
