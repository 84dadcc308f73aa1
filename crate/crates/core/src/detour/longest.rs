use super::search::search_to_decision;
use super::{Branch, DetourInstance, Gate, Problem, SolveResult, SolveStats};
use crate::error::{Error, Result};
use crate::graph::{bfs_layers, relevant_part, shortest_path, Graph, Path, Vertex};
use crate::path_dp::longest_st_path;
use crate::tetra::{build_detour_via_k4, find_k4_subdivision, DEFAULT_SEARCH_BUDGET};
use crate::treewidth::{heuristic_decomposition, treewidth_lower_bound, Strategy};
use std::time::Instant;

/// Treewidth threshold above which the relevant part is guaranteed to hold a
/// detour of length `k`.
pub fn detour_enforcing_bound(k: usize) -> usize {
    32 * k + 2
}

/// Witness construction for the large-treewidth branch, which is otherwise
/// decision-only.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Construct {
    #[default]
    None,
    /// Edge-deletion search driven by the exact DP decider.
    SearchToDecision,
    /// Look for a subdivided tetrahedron and reroute through it; falls back
    /// to search-to-decision when none is found within the budget.
    Tetra,
}

#[derive(Debug, Clone, Default)]
pub struct LongestDetourConfig {
    /// Replaces `32k + 2` in the gate. Values below it make a D3b answer unsound.
    pub gate_override: Option<usize>,
    pub construct: Construct,
    pub strategy: Strategy,
}

/// Exact Longest Detour decision by tree-decomposition DP, with no gate.
/// Works on any undirected graph; this is the decider fed to the
/// search-to-decision construction.
pub fn longest_detour_decision(g: &Graph, s: Vertex, t: Vertex, k: usize) -> Result<bool> {
    Ok(longest_path_in_relevant_part(g, s, t, Strategy::default())?.is_some_and(|(p, d, _)| p.len() >= d + k))
}

/// Longest `(s,t)`-path, distance and decomposition width; `None` if unreachable.
fn longest_path_in_relevant_part(
    g: &Graph,
    s: Vertex,
    t: Vertex,
    strategy: Strategy,
) -> Result<Option<(Path, usize, usize)>> {
    let Some(short) = shortest_path(g, s, t) else {
        return Ok(None);
    };
    let rel = relevant_part(g, s, t)?;
    let td = heuristic_decomposition(&rel.graph, strategy);
    let (ls, lt) = (rel.local(s).unwrap(), rel.local(t).unwrap());
    let long = longest_st_path(&rel.graph, &td, ls, lt)?
        .ok_or_else(|| Error::Consistency("DP found no path in a connected relevant part".into()))?;
    Ok(Some((rel.lift_path(&long), short.len(), td.width())))
}

pub fn solve_longest_detour(inst: &DetourInstance, cfg: &LongestDetourConfig) -> Result<SolveResult> {
    let start = Instant::now();
    let DetourInstance { graph: g, s, t, k } = inst;
    let (s, t, k) = (*s, *t, *k);
    if g.is_directed() {
        return Err(Error::input("Longest Detour is only supported on undirected graphs"));
    }
    let mut stats = SolveStats { gate_override: cfg.gate_override.is_some(), ..Default::default() };
    let mut result = SolveResult { problem: Problem::LongestDetour, answer: false, k, distance: None, witness: None, stats: SolveStats::default() };
    let layers = bfs_layers(g, s)?;
    let Some(d) = layers.get(t) else {
        stats.branch = Some(Branch::Unreachable);
        stats.diagnostic = Some(format!("{t} is not reachable from {s}"));
        return Ok(finish(result, stats, start));
    };
    result.distance = Some(d);
    if k == 0 {
        stats.branch = Some(Branch::Trivial);
        result.answer = true;
        result.witness = shortest_path(g, s, t);
        return Ok(finish(result, stats, start));
    }

    let rel = relevant_part(g, s, t)?;
    let threshold = cfg.gate_override.unwrap_or_else(|| detour_enforcing_bound(k));
    stats.threshold = Some(threshold);
    let lower = treewidth_lower_bound(&rel.graph);
    stats.tw_lower = Some(lower);
    if lower > threshold {
        stats.branch = Some(Branch::D3b);
        stats.gate = Some(Gate::Large);
        result.answer = true;
        result.witness = match cfg.construct {
            Construct::None => None,
            Construct::SearchToDecision => Some(construct_by_search(inst, &mut stats)?),
            Construct::Tetra => {
                let found = find_k4_subdivision(&rel.graph, k, DEFAULT_SEARCH_BUDGET)?;
                match found.model {
                    Some(model) => {
                        let (ls, lt) = (rel.local(s).unwrap(), rel.local(t).unwrap());
                        Some(rel.lift_path(&build_detour_via_k4(&rel.graph, ls, lt, &model, k)?))
                    }
                    None => {
                        stats.diagnostic = Some("no subdivided tetrahedron found; used search-to-decision".into());
                        Some(construct_by_search(inst, &mut stats)?)
                    }
                }
            }
        };
        return Ok(finish(result, stats, start));
    }

    let td = heuristic_decomposition(&rel.graph, cfg.strategy);
    stats.tw_upper = Some(td.width());
    stats.gate = Some(if td.width() <= threshold { Gate::Resolved } else { Gate::Inconclusive });
    stats.branch = Some(Branch::D3a);
    let (ls, lt) = (rel.local(s).unwrap(), rel.local(t).unwrap());
    let long = longest_st_path(&rel.graph, &td, ls, lt)?
        .ok_or_else(|| Error::Consistency("DP found no path in a connected relevant part".into()))?;
    if long.len() >= d + k {
        result.answer = true;
        result.witness = Some(rel.lift_path(&long));
    }
    Ok(finish(result, stats, start))
}

fn construct_by_search(inst: &DetourInstance, stats: &mut SolveStats) -> Result<Path> {
    let out = search_to_decision(inst, Problem::LongestDetour, longest_detour_decision)?;
    stats.decision_calls = Some(out.decision_calls);
    out.path.ok_or_else(|| Error::Consistency("large treewidth branch fired but the decider rejects".into()))
}

fn finish(mut result: SolveResult, mut stats: SolveStats, start: Instant) -> SolveResult {
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    result.stats = stats;
    result
}
