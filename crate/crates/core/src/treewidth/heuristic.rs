use super::TreeDecomposition;
use crate::graph::{Graph, Vertex};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    MinFill,
    MinDegree,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min-fill" => Ok(Strategy::MinFill),
            "min-degree" => Ok(Strategy::MinDegree),
            other => Err(format!("unknown strategy '{other}' (expected min-fill or min-degree)")),
        }
    }
}

fn fill_in(adj: &[BTreeSet<Vertex>], v: Vertex) -> usize {
    let nb: Vec<Vertex> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Greedy elimination ordering; ties go to the lowest vertex id.
pub fn heuristic_decomposition(g: &Graph, strategy: Strategy) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive: BTreeSet<Vertex> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    while !alive.is_empty() {
        let v = *alive
            .iter()
            .min_by_key(|&&v| match strategy {
                Strategy::MinDegree => (adj[v].len(), 0, v),
                Strategy::MinFill => (fill_in(&adj, v), adj[v].len(), v),
            })
            .unwrap();
        eliminate(&mut adj, v);
        alive.remove(&v);
        order.push(v);
    }
    from_elimination_order(g, &order)
}

fn eliminate(adj: &mut [BTreeSet<Vertex>], v: Vertex) {
    let nb: Vec<Vertex> = std::mem::take(&mut adj[v]).into_iter().collect();
    for &a in &nb {
        adj[a].remove(&v);
        for &b in &nb {
            if a != b {
                adj[a].insert(b);
            }
        }
    }
}

/// Decomposition induced by an elimination order: node `i` holds the `i`-th
/// eliminated vertex together with its neighbours at elimination time, and
/// hangs below the node of the earliest-eliminated of those neighbours.
pub fn from_elimination_order(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n, "elimination order must list every vertex once");
    if n == 0 {
        return TreeDecomposition::new(vec![vec![]], vec![]);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n - 1);
    for (i, &v) in order.iter().enumerate() {
        let mut bag: Vec<Vertex> = adj[v].iter().copied().collect();
        let parent = bag.iter().map(|&w| pos[w]).min();
        eliminate(&mut adj, v);
        bag.push(v);
        bags.push(bag);
        match parent {
            Some(p) => edges.push((i, p)),
            None if i + 1 < n => edges.push((i, i + 1)),
            None => {}
        }
    }
    TreeDecomposition::new(bags, edges)
}
