use super::{DetourInstance, Problem};
use crate::error::{Error, Result};
use crate::graph::{shortest_path, Graph, Path, Vertex};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// `None` exactly when the instance is a no-instance.
    pub path: Option<Path>,
    pub decision_calls: u64,
}

/// Builds a witness from yes/no answers alone.
///
/// `decide(g, s, t, k)` must answer `problem` on `(g, s, t, k)` exactly; it is
/// called on graphs that contain extra vertices past `inst.graph.n()`.
/// A fresh shortest `(s,t)`-path is planted, then every original edge whose
/// deletion keeps a yes-instance is deleted. What survives apart from the
/// planted path is a single detour. Uses at most `|E| + 1` decisions.
///
/// For [`Problem::ExactDetour`] the same procedure is applied; the survivor is
/// always validated, and any disagreement surfaces as [`Error::Consistency`].
pub fn search_to_decision<F>(inst: &DetourInstance, problem: Problem, mut decide: F) -> Result<SearchOutcome>
where
    F: FnMut(&Graph, Vertex, Vertex, usize) -> Result<bool>,
{
    let DetourInstance { graph: g, s, t, k } = inst;
    let (s, t, k) = (*s, *t, *k);
    let mut calls = 0u64;
    let mut ask = |h: &Graph| {
        calls += 1;
        decide(h, s, t, k)
    };
    if !ask(g)? {
        return Ok(SearchOutcome { path: None, decision_calls: calls });
    }
    let short = shortest_path(g, s, t).ok_or_else(|| Error::Consistency("decider accepted an unreachable target".into()))?;
    let d = short.len();
    if k == 0 {
        return Ok(SearchOutcome { path: Some(short), decision_calls: calls });
    }

    // Plant s -> p_1 -> ... -> p_{d-1} -> t on new vertices. With d = 1 the
    // graph is simple, so the existing edge st plays that role.
    let n = g.n();
    let planted: Vec<Vertex> = std::iter::once(s).chain(n..n + d - 1).chain(std::iter::once(t)).collect();
    let planted_edges: Vec<(Vertex, Vertex)> = planted.windows(2).map(|w| (w[0], w[1])).collect();
    let key = |(u, v): (Vertex, Vertex)| if g.is_directed() || u < v { (u, v) } else { (v, u) };
    let protected: BTreeSet<(Vertex, Vertex)> = planted_edges.iter().map(|&e| key(e)).collect();
    let mut kept: BTreeSet<(Vertex, Vertex)> = g.edges().iter().copied().collect();
    if d > 1 {
        kept.extend(protected.iter().copied());
    }
    let total = n + d - 1;
    for &e in g.edges() {
        if protected.contains(&e) {
            continue;
        }
        kept.remove(&e);
        let h = Graph::new(total, g.is_directed(), kept.iter().copied())?;
        if !ask(&h)? {
            kept.insert(e);
        }
    }
    let survivor: Vec<(Vertex, Vertex)> = kept.into_iter().filter(|e| !protected.contains(e)).collect();
    let path = trace_survivor(g, s, t, &survivor)?;
    if !problem.accepts(path.len(), d, k) {
        return Err(Error::Consistency(format!("surviving path has length {}, target {}", path.len(), d + k)));
    }
    Ok(SearchOutcome { path: Some(path), decision_calls: calls })
}

/// Follows the surviving edges from `s`; they must form exactly one `(s,t)`-path.
fn trace_survivor(g: &Graph, s: Vertex, t: Vertex, edges: &[(Vertex, Vertex)]) -> Result<Path> {
    let h = Graph::new(g.n(), g.is_directed(), edges.iter().copied())?;
    let mut seq = vec![s];
    let mut prev = None;
    let mut cur = s;
    while cur != t {
        let next: Vec<Vertex> = h.neighbors(cur).iter().copied().filter(|&w| Some(w) != prev).collect();
        let [w] = next[..] else {
            return Err(Error::Consistency(format!("surviving edges branch or stop at vertex {cur}")));
        };
        if seq.contains(&w) {
            return Err(Error::Consistency("surviving edges contain a cycle".into()));
        }
        seq.push(w);
        prev = Some(cur);
        cur = w;
    }
    let path = Path::new(seq);
    if path.len() != edges.len() {
        return Err(Error::Consistency(format!("{} surviving edges lie off the path", edges.len() - path.len())));
    }
    path.validate_st(g, s, t)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detour::longest_detour_decision;
    use crate::graph::generators::cycle;

    fn run(g: Graph, s: Vertex, t: Vertex, k: usize) -> SearchOutcome {
        let inst = DetourInstance::new(g, s, t, k).unwrap();
        search_to_decision(&inst, Problem::LongestDetour, longest_detour_decision).unwrap()
    }

    #[test]
    fn six_cycle_adjacent_terminals() {
        let out = run(cycle(6), 0, 1, 4);
        assert_eq!(out.path.unwrap().vertices(), &[0, 5, 4, 3, 2, 1]);
        assert!(out.decision_calls <= 7);
    }

    #[test]
    fn no_instance_stops_after_one_call() {
        let out = run(cycle(6), 0, 1, 5);
        assert_eq!(out, SearchOutcome { path: None, decision_calls: 1 });
    }

    #[test]
    fn long_route_beats_the_chord() {
        // edge 0-1 plus the route 0-2-3-4-5-1
        let g = Graph::undirected(6, [(0, 1), (0, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
        let out = run(g, 0, 1, 4);
        assert_eq!(out.path.unwrap().vertices(), &[0, 2, 3, 4, 5, 1]);
    }

    #[test]
    fn planted_path_for_distant_terminals() {
        let g = cycle(8);
        let out = run(g.clone(), 0, 3, 2);
        let p = out.path.unwrap();
        p.validate_st(&g, 0, 3).unwrap();
        assert_eq!(p.len(), 5);
        assert!(out.decision_calls <= g.m() as u64 + 1);
    }

    #[test]
    fn lying_decider_is_caught() {
        let inst = DetourInstance::new(cycle(4), 0, 1, 1).unwrap();
        let err = search_to_decision(&inst, Problem::LongestDetour, |_, _, _, _| Ok(true)).unwrap_err();
        assert!(matches!(err, Error::Consistency(_)));
    }
}
