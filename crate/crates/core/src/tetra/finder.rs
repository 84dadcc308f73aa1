use super::{TetraModel, K4_EDGES};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Vertex};
use std::collections::VecDeque;

/// Search steps allowed by default before giving up.
pub const DEFAULT_SEARCH_BUDGET: u64 = 2_000_000;

/// Steps spent on one choice of branch vertices before moving on.
const TUPLE_BUDGET: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FindOutcome {
    pub model: Option<TetraModel>,
    /// The budget ran out; a missing model proves nothing.
    pub inconclusive: bool,
    pub steps: u64,
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    budget: u64,
    steps: u64,
    tuple_limit: u64,
    blocked: Vec<bool>,
    branch: [Vertex; 4],
    paths: Vec<Path>,
}

enum Stop {
    Budget,
}

impl Search<'_> {
    fn tick(&mut self) -> std::result::Result<(), Stop> {
        self.steps += 1;
        if self.steps > self.budget.min(self.tuple_limit) {
            Err(Stop::Budget)
        } else {
            Ok(())
        }
    }

    /// Distances to `to` through unblocked vertices.
    fn distances_to(&self, to: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.g.n()];
        dist[to] = 0;
        let mut queue = VecDeque::from([to]);
        while let Some(x) = queue.pop_front() {
            for &y in self.g.neighbors(x) {
                if dist[y] == usize::MAX && !self.blocked[y] {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Cheap necessary conditions for completing paths `e..6`: every
    /// remaining pair is still connected through free vertices, and every
    /// branch vertex keeps a free neighbor per path it still needs.
    fn viable(&self, e: usize) -> bool {
        // with k = 0 a path may be a single edge between branch vertices
        for (i, &b) in self.branch.iter().enumerate().filter(|_| self.k >= 1) {
            let needed = (e..6).filter(|&f| K4_EDGES[f].0 == i || K4_EDGES[f].1 == i).count();
            let free = self.g.neighbors(b).iter().filter(|&&x| !self.blocked[x]).count();
            if free < needed {
                return false;
            }
        }
        (e..6).all(|f| {
            let (a, b) = (self.branch[K4_EDGES[f].0], self.branch[K4_EDGES[f].1]);
            let dist = self.distances_to(b);
            self.g.neighbors(a).iter().any(|&x| dist[x] != usize::MAX && (x == b || !self.blocked[x]))
        })
    }

    /// Carves realizing paths `e..6` one at a time, shortest lengths first.
    fn carve(&mut self, e: usize) -> std::result::Result<bool, Stop> {
        if e == 6 {
            return Ok(true);
        }
        if !self.viable(e) {
            return Ok(false);
        }
        let (a, b) = (self.branch[K4_EDGES[e].0], self.branch[K4_EDGES[e].1]);
        let dist = self.distances_to(b);
        let free = self.blocked.iter().filter(|&&x| !x).count();
        for len in self.k + 1..=free + 1 {
            let mut seq = vec![a];
            if self.extend(e, b, len, &dist, &mut seq)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn extend(&mut self, e: usize, b: Vertex, len: usize, dist: &[usize], seq: &mut Vec<Vertex>) -> std::result::Result<bool, Stop> {
        self.tick()?;
        let x = *seq.last().unwrap();
        let left = len + 1 - seq.len();
        if left == 1 {
            if !self.g.has_edge(x, b) {
                return Ok(false);
            }
            seq.push(b);
            self.paths.push(Path::new(seq.clone()));
            seq.pop();
            if self.carve(e + 1)? {
                return Ok(true);
            }
            self.paths.pop();
            return Ok(false);
        }
        for i in 0..self.g.neighbors(x).len() {
            let y = self.g.neighbors(x)[i];
            if self.blocked[y] || dist[y] == usize::MAX || dist[y] > left - 1 {
                continue;
            }
            self.blocked[y] = true;
            seq.push(y);
            let found = self.extend(e, b, len, dist, seq)?;
            seq.pop();
            self.blocked[y] = false;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Backtracking search for a `K4^(k)` subgraph: four branch vertices, then
/// six internally disjoint paths of length at least `k + 1`, each carved with
/// increasing length. Each choice of branch vertices gets a bounded share of
/// the budget. A miss is only conclusive when `inconclusive` is false.
pub fn find_k4_subdivision(g: &Graph, k: usize, budget: u64) -> Result<FindOutcome> {
    if g.is_directed() {
        return Err(Error::input("tetrahedron search needs an undirected graph"));
    }
    let cand: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) >= 3).collect();
    let mut search =
        Search { g, k, budget, steps: 0, tuple_limit: 0, blocked: vec![false; g.n()], branch: [0; 4], paths: Vec::new() };
    let mut truncated = false;
    let c = cand.len();
    for i in 0..c {
        for j in i + 1..c {
            for l in j + 1..c {
                for m in l + 1..c {
                    let branch = [cand[i], cand[j], cand[l], cand[m]];
                    // with k >= 1 every path leaves a branch vertex through a non-branch neighbor
                    if k >= 1 && branch.iter().any(|&b| g.neighbors(b).iter().filter(|x| !branch.contains(x)).count() < 3) {
                        continue;
                    }
                    search.branch = branch;
                    search.tuple_limit = search.steps + TUPLE_BUDGET;
                    search.paths.clear();
                    for &b in &branch {
                        search.blocked[b] = true;
                    }
                    let found = search.carve(0);
                    for &b in &branch {
                        search.blocked[b] = false;
                    }
                    match found {
                        Ok(true) => {
                            let paths: [Path; 6] = std::mem::take(&mut search.paths).try_into().expect("six paths");
                            let model = TetraModel { branch, paths };
                            model.validate(g, Some(k))?;
                            return Ok(FindOutcome { model: Some(model), inconclusive: false, steps: search.steps });
                        }
                        Ok(false) => {}
                        Err(Stop::Budget) if search.steps <= budget => truncated = true,
                        Err(Stop::Budget) => return Ok(FindOutcome { model: None, inconclusive: true, steps: budget }),
                    }
                }
            }
        }
    }
    Ok(FindOutcome { model: None, inconclusive: truncated, steps: search.steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, grid, path_graph, star};
    use crate::tetra::gen_subdivided_k4;

    #[test]
    fn finds_planted_model() {
        let (g, _) = gen_subdivided_k4([2; 6]);
        let out = find_k4_subdivision(&g, 2, DEFAULT_SEARCH_BUDGET).unwrap();
        out.model.unwrap().validate(&g, Some(2)).unwrap();
        assert!(find_k4_subdivision(&g, 3, DEFAULT_SEARCH_BUDGET).unwrap().model.is_none());
    }

    #[test]
    fn trees_are_conclusive_misses() {
        for g in [star(5), path_graph(6), Graph::undirected(7, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6)]).unwrap()] {
            let out = find_k4_subdivision(&g, 1, DEFAULT_SEARCH_BUDGET).unwrap();
            assert!(out.model.is_none() && !out.inconclusive);
        }
    }

    #[test]
    fn grid_contains_a_model() {
        let g = grid(6, 6);
        let out = find_k4_subdivision(&g, 1, DEFAULT_SEARCH_BUDGET).unwrap();
        out.model.unwrap().validate(&g, Some(1)).unwrap();
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let out = find_k4_subdivision(&grid(6, 6), 1, 3).unwrap();
        assert!(out.model.is_none() && out.inconclusive);
        assert!(find_k4_subdivision(&complete(4), 0, 100).unwrap().model.is_some());
        let out = find_k4_subdivision(&complete(5), 1, 3).unwrap();
        assert!(out.model.is_none() && !out.inconclusive);
    }
}
