use super::{Branch, DetourInstance, Problem, SolveResult, SolveStats};
use crate::error::{Error, Result};
use crate::exact_path::{exact_path_query, Method, OracleConfig};
use crate::graph::{bfs_layers, layer_slice, layer_tail, Graph, LayerMap, Path, Vertex};
use std::collections::BTreeMap;
use std::time::Instant;

/// How an entry of the table was obtained; enough to rebuild a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// A direct `(x,t)`-path found in `G[x,inf)`.
    Tail(Path),
    /// An `(x,y)`-path in `G[x,y]` followed by a witness for `T[y]` of length `rest`.
    Via { head: Path, y: Vertex, rest: usize },
}

/// `T[x]` for every `x` with `d(x) <= d(t)`: lengths of `(x,t)`-paths in
/// `G[x,inf)` inside the window `[d(t)-d(x), d(t)-d(x)+k]`.
#[derive(Debug, Clone)]
pub struct DetourTable {
    layers: LayerMap,
    target: Vertex,
    k: usize,
    entries: Vec<Option<BTreeMap<usize, Provenance>>>,
}

impl DetourTable {
    pub fn layers(&self) -> &LayerMap {
        &self.layers
    }

    /// `(lo, hi)` inclusive, or `None` if `x` has no entry.
    pub fn window(&self, x: Vertex) -> Option<(usize, usize)> {
        let dt = self.layers.get(self.target)?;
        let dx = self.layers.get(x).filter(|&dx| dx <= dt)?;
        Some((dt - dx, dt - dx + self.k))
    }

    pub fn lengths(&self, x: Vertex) -> Option<Vec<usize>> {
        self.entries.get(x)?.as_ref().map(|m| m.keys().copied().collect())
    }

    pub fn contains(&self, x: Vertex, len: usize) -> bool {
        self.entries.get(x).and_then(Option::as_ref).is_some_and(|m| m.contains_key(&len))
    }

    /// An `(x,t)`-path of length `len` in `G[x,inf)`, rebuilt from provenance.
    pub fn witness(&self, x: Vertex, len: usize) -> Result<Option<Path>> {
        let Some(first) = self.entries.get(x).and_then(Option::as_ref).and_then(|m| m.get(&len)) else {
            return Ok(None);
        };
        let mut entry = first;
        let mut acc: Option<Path> = None;
        loop {
            let piece = match entry {
                Provenance::Tail(p) => p,
                Provenance::Via { head, .. } => head,
            };
            acc = Some(match acc {
                None => piece.clone(),
                Some(a) => a.concat(piece)?,
            });
            match entry {
                Provenance::Tail(_) => break,
                Provenance::Via { y, rest, .. } => {
                    entry = self.entries[*y]
                        .as_ref()
                        .and_then(|m| m.get(rest))
                        .ok_or_else(|| Error::Consistency(format!("dangling table reference to T[{y}] = {rest}")))?;
                }
            }
        }
        Ok(acc)
    }
}

struct Oracle<'a> {
    cfg: &'a OracleConfig,
    stats: &'a mut SolveStats,
}

impl Oracle<'_> {
    fn ask(&mut self, g: &Graph, s: Vertex, t: Vertex, len: usize) -> Result<Option<Path>> {
        let stream = self.stats.oracle_calls;
        self.stats.oracle_calls += 1;
        self.stats.max_query_len = self.stats.max_query_len.max(len);
        let out = exact_path_query(g, s, t, len, self.cfg, stream)?;
        if let Method::ColorCoding { trials_run, .. } = out.method {
            self.stats.trials += trials_run;
            self.stats.randomized_queries += 1;
        }
        Ok(out.path)
    }
}

/// Fills the layered table for `(G, s, t, k)` and returns it with the query
/// statistics. Layer distances are taken once from `s` in the whole graph.
pub fn exact_detour_table(inst: &DetourInstance, cfg: &OracleConfig) -> Result<(DetourTable, SolveStats)> {
    cfg.validate()?;
    let DetourInstance { graph: g, s, t, k } = inst;
    let (s, t, k) = (*s, *t, *k);
    let layers = bfs_layers(g, s)?;
    let dt = layers.get(t).ok_or_else(|| Error::input(format!("{t} is not reachable from {s}")))?;
    let mut stats = SolveStats { seed: Some(cfg.seed), ..Default::default() };
    // A yes-answer only needs the queries along one path's hop chain, at most
    // d(t) + 1 <= n of them, so splitting delta over n(n+1) is conservative.
    let budget = (g.n() * (g.n() + 1)) as u64;
    stats.query_budget = Some(budget);
    let per_query = OracleConfig { delta: cfg.delta / budget as f64, ..cfg.clone() };
    let mut oracle = Oracle { cfg: &per_query, stats: &mut stats };

    let mut entries: Vec<Option<BTreeMap<usize, Provenance>>> = (0..g.n())
        .map(|v| layers.get(v).filter(|&d| d <= dt).map(|_| BTreeMap::new()))
        .collect();
    let by_layer: Vec<Vec<Vertex>> = (0..=dt).map(|i| layers.layer(i)).collect();

    // last k+1 layers: ask G[x,inf) directly
    for dx in dt.saturating_sub(k)..=dt {
        for &x in &by_layer[dx] {
            let tail = layer_tail(g, &layers, x)?;
            let Some(lt) = tail.local(t) else { continue };
            let lx = tail.local(x).unwrap();
            for len in dt - dx..=dt - dx + k {
                if let Some(p) = oracle.ask(&tail.graph, lx, lt, len)? {
                    entries[x].as_mut().unwrap().insert(len, Provenance::Tail(tail.lift_path(&p)));
                }
            }
        }
    }

    // earlier layers: combine a short hop to y with T[y]
    for dx in (0..dt.saturating_sub(k)).rev() {
        let (lo, hi) = (dt - dx, dt - dx + k);
        for &x in &by_layer[dx] {
            let mut found = BTreeMap::new();
            for dy in dx + 1..=dx + k + 1 {
                for &y in &by_layer[dy] {
                    let Some(ty) = entries[y].as_ref().filter(|m| !m.is_empty()) else { continue };
                    let rest_min = *ty.keys().next().unwrap();
                    let rest: Vec<usize> = ty.keys().copied().collect();
                    if rest_min > hi {
                        continue;
                    }
                    let slice = layer_slice(g, &layers, x, y)?;
                    let (lx, ly) = (slice.local(x).unwrap(), slice.local(y).unwrap());
                    for hop in dy - dx..=hi - rest_min {
                        let Some(p) = oracle.ask(&slice.graph, lx, ly, hop)? else { continue };
                        let head = slice.lift_path(&p);
                        for &r in &rest {
                            let len = hop + r;
                            if (lo..=hi).contains(&len) {
                                found.entry(len).or_insert_with(|| Provenance::Via { head: head.clone(), y, rest: r });
                            }
                        }
                    }
                }
            }
            entries[x] = Some(found);
        }
    }
    let table = DetourTable { layers, target: t, k, entries };
    Ok((table, stats))
}

/// Decides Exact Detour with the layered table; works for both orientations.
pub fn solve_exact_detour(inst: &DetourInstance, cfg: &OracleConfig) -> Result<SolveResult> {
    let start = Instant::now();
    cfg.validate()?;
    let DetourInstance { graph: g, s, t, k } = inst;
    let (s, t, k) = (*s, *t, *k);
    let mut result = SolveResult { problem: Problem::ExactDetour, answer: false, k, distance: None, witness: None, stats: SolveStats::default() };
    let Some(dt) = bfs_layers(g, s)?.get(t) else {
        result.stats = SolveStats {
            seed: Some(cfg.seed),
            branch: Some(Branch::Unreachable),
            diagnostic: Some(format!("{t} is not reachable from {s}")),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            ..Default::default()
        };
        return Ok(result);
    };
    let (table, mut stats) = exact_detour_table(inst, cfg)?;
    result.distance = Some(dt);
    if let Some(w) = table.witness(s, dt + k)? {
        w.validate_st(g, s, t)?;
        if w.len() != dt + k {
            return Err(Error::Consistency(format!("table witness has length {}, expected {}", w.len(), dt + k)));
        }
        result.answer = true;
        result.witness = Some(w);
    }
    stats.branch = Some(Branch::Layered);
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    result.stats = stats;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detour::query_parameter_audit;
    use crate::graph::generators::{cycle, path_graph};

    fn solve(g: Graph, s: Vertex, t: Vertex, k: usize) -> SolveResult {
        let inst = DetourInstance::new(g.clone(), s, t, k).unwrap();
        let r = solve_exact_detour(&inst, &OracleConfig::deterministic()).unwrap();
        r.check_witness(&g, s, t).unwrap();
        assert!(query_parameter_audit(&r.stats) <= 2 * k + 1);
        r
    }

    #[test]
    fn six_cycle_lengths() {
        let answers: Vec<bool> = (0..=5).map(|k| solve(cycle(6), 0, 1, k).answer).collect();
        assert_eq!(answers, vec![true, false, false, false, true, false]);
    }

    #[test]
    fn directed_square_with_chord() {
        let g = Graph::directed(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let r = solve(g, 0, 3, 2);
        assert!(r.answer);
        assert_eq!(r.witness.unwrap().vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn unique_path() {
        for k in 1..4 {
            assert!(!solve(path_graph(5), 0, 4, k).answer);
        }
        assert!(solve(path_graph(5), 0, 4, 0).answer);
    }

    #[test]
    fn unreachable_target() {
        let g = Graph::directed(3, [(1, 0), (0, 2)]).unwrap();
        let r = solve(g, 0, 1, 0);
        assert!(!r.answer);
        assert_eq!(r.stats.branch, Some(Branch::Unreachable));
    }

    #[test]
    fn windows_and_table_contents() {
        // 0-1-2-3 with the detour 0-4-5-6-3 next to it
        let g = Graph::undirected(7, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        let inst = DetourInstance::new(g, 0, 3, 1).unwrap();
        let (table, _) = exact_detour_table(&inst, &OracleConfig::deterministic()).unwrap();
        assert_eq!(table.window(0), Some((3, 4)));
        assert_eq!(table.lengths(0), Some(vec![3, 4]));
        assert_eq!(table.window(6), Some((0, 1)));
        assert_eq!(table.lengths(6), Some(vec![]));
        assert_eq!(table.lengths(5), Some(vec![2]));
        assert_eq!(table.witness(0, 4).unwrap().unwrap().vertices(), &[0, 4, 5, 6, 3]);
    }
}
