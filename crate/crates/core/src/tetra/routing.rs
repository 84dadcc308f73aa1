use super::{detour_in_k4, TetraModel};
use crate::error::{Error, Result};
use crate::graph::{block_cut_tree, bfs_layers, relevant_part, shortest_path, Graph, Path, Vertex};
use std::collections::VecDeque;

/// `P_s` from `s` to `u`, `P_t` from `v` to `t`; vertex-disjoint and meeting
/// the model only in `u` and `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Routing {
    pub ps: Path,
    pub u: Vertex,
    pub v: Vertex,
    pub pt: Path,
}

/// Unit-capacity residual network.
struct Flow {
    head: Vec<usize>,
    cap: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn arc(&mut self, a: usize, b: usize) {
        self.adj[a].push(self.head.len());
        self.head.push(b);
        self.cap.push(1);
        self.adj[b].push(self.head.len());
        self.head.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, src: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.adj[x] {
                let y = self.head[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut y = sink;
        while y != src {
            let a = via[y];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            y = self.head[a ^ 1];
        }
        true
    }

    /// Forward arcs out of `x` that carry flow.
    fn used(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[x].iter().filter(move |&&a| a % 2 == 0 && self.cap[a] == 0).map(move |&a| self.head[a])
    }
}

/// Two vertex-disjoint paths inside `block` from `a` and from `b` into
/// `targets`, each cut at its first target vertex.
fn two_disjoint_paths(g: &Graph, block: &[Vertex], a: Vertex, b: Vertex, is_target: &[bool]) -> Result<(Path, Path)> {
    let sub = g.induced(block);
    let n = sub.graph.n();
    // x_in = 2x, x_out = 2x+1, then source and sink
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut net = Flow::new(2 * n + 2);
    for x in 0..n {
        net.arc(2 * x, 2 * x + 1);
        if is_target[sub.host(x)] {
            net.arc(2 * x + 1, sink);
        }
        for &y in sub.graph.neighbors(x) {
            net.arc(2 * x + 1, 2 * y);
        }
    }
    let (la, lb) = (sub.local(a).unwrap(), sub.local(b).unwrap());
    net.arc(src, 2 * la);
    net.arc(src, 2 * lb);
    if !(net.augment(src, sink) && net.augment(src, sink)) {
        return Err(Error::Consistency("block holding the model lacks two disjoint paths into it".into()));
    }
    let walk = |start: Vertex| -> Result<Path> {
        let mut seq = vec![sub.host(start)];
        let mut x = start;
        while !is_target[sub.host(x)] {
            let next = net
                .used(2 * x + 1)
                .find(|&y| y != sink)
                .ok_or_else(|| Error::Consistency("flow path ends outside the model".into()))?;
            x = next / 2;
            seq.push(sub.host(x));
        }
        Ok(Path::new(seq))
    };
    Ok((walk(la)?, walk(lb)?))
}

/// Routes `s` and `t` into the model: follow the block-cut tree to the block
/// `C` holding the model, enter it at the cut vertices `s'` and `t'` bounding
/// it, then reach the model by two disjoint paths inside `C`.
pub fn route_through_model(g: &Graph, s: Vertex, t: Vertex, model: &TetraModel) -> Result<Routing> {
    if g.is_directed() {
        return Err(Error::input("routing needs an undirected graph"));
    }
    model.validate(g, None)?;
    let rel = relevant_part(g, s, t)?;
    let mv = model.vertices();
    if mv.iter().any(|&x| !rel.contains(x)) {
        return Err(Error::Precondition("model is not inside the relevant part of (s,t)".into()));
    }
    let layers = bfs_layers(g, s)?;
    let comp: Vec<Vertex> = (0..g.n()).filter(|&x| layers.contains(x)).collect();
    let sub = g.induced(&comp);
    let bct = block_cut_tree(&sub.graph)?;
    let (ls, lt) = (sub.local(s).unwrap(), sub.local(t).unwrap());
    let chain = bct.blocks_between(ls, lt).ok_or_else(|| Error::Consistency("block-cut tree is disconnected".into()))?;
    let host_block = |b: usize| -> Vec<Vertex> { bct.blocks[b].iter().map(|&x| sub.host(x)).collect() };
    let blocks: Vec<Vec<Vertex>> = chain.iter().map(|&b| host_block(b)).collect();
    let c = blocks
        .iter()
        .position(|blk| mv.iter().all(|x| blk.binary_search(x).is_ok()))
        .ok_or_else(|| Error::Precondition("model does not lie in one block between s and t".into()))?;
    let shared = |a: &[Vertex], b: &[Vertex]| a.iter().copied().find(|x| b.binary_search(x).is_ok());
    let s1 = if c == 0 { s } else { shared(&blocks[c - 1], &blocks[c]).unwrap() };
    let t1 = if c + 1 == blocks.len() { t } else { shared(&blocks[c], &blocks[c + 1]).unwrap() };
    let to_s1 = shortest_path(g, s, s1).unwrap();
    let to_t = shortest_path(g, t1, t).unwrap();

    let mut is_target = vec![false; g.n()];
    for &x in &mv {
        is_target[x] = true;
    }
    let (qs, qt) = two_disjoint_paths(g, &blocks[c], s1, t1, &is_target)?;
    let ps = to_s1.concat(&qs)?;
    let pt = qt.reversed().concat(&to_t)?;
    let routing = Routing { u: ps.last(), v: pt.first(), ps, pt };
    check_routing(g, s, t, &routing, &is_target)?;
    Ok(routing)
}

fn check_routing(g: &Graph, s: Vertex, t: Vertex, r: &Routing, in_model: &[bool]) -> Result<()> {
    r.ps.validate_st(g, s, r.u)?;
    r.pt.validate_st(g, r.v, t)?;
    let broken = |msg: &str| Err(Error::Consistency(format!("routing: {msg}")));
    if r.u == r.v {
        return broken("u = v");
    }
    if r.ps.vertices().iter().any(|x| r.pt.contains(*x)) {
        return broken("P_s and P_t intersect");
    }
    let inner = |p: &Path, keep: Vertex| p.vertices().iter().any(|&x| x != keep && in_model[x]);
    if inner(&r.ps, r.u) || inner(&r.pt, r.v) {
        return broken("a stub meets the model twice");
    }
    Ok(())
}

/// `P_s`, then a longest `(u,v)`-path in the model, then `P_t`. For a
/// `K4^(k)` model the result has length at least `d(s,t) + k`.
pub fn build_detour_via_k4(g: &Graph, s: Vertex, t: Vertex, model: &TetraModel, k: usize) -> Result<Path> {
    model.validate(g, Some(k))?;
    let r = route_through_model(g, s, t, model)?;
    let (q, _) = detour_in_k4(model, r.u, r.v)?;
    let p = r.ps.concat(&q)?.concat(&r.pt)?;
    p.validate_st(g, s, t)?;
    let d = shortest_path(g, s, t).unwrap().len();
    if p.len() < d + k {
        return Err(Error::Consistency(format!("rerouted path has length {} < {}", p.len(), d + k)));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tetra::gen_subdivided_k4;

    fn with_extra(g: &Graph, extra: usize, edges: &[(Vertex, Vertex)]) -> Graph {
        let mut es = g.edges().to_vec();
        es.extend_from_slice(edges);
        Graph::undirected(g.n() + extra, es).unwrap()
    }

    #[test]
    fn terminals_on_branch_vertices() {
        let (g, m) = gen_subdivided_k4([1; 6]);
        let r = route_through_model(&g, 0, 1, &m).unwrap();
        assert_eq!(r, Routing { ps: Path::single(0), u: 0, v: 1, pt: Path::single(1) });
        let p = build_detour_via_k4(&g, 0, 1, &m, 1).unwrap();
        assert_eq!(p, detour_in_k4(&m, 0, 1).unwrap().0);
    }

    #[test]
    fn pendant_terminals() {
        let (g, m) = gen_subdivided_k4([1; 6]);
        let (s, x, t) = (g.n(), g.n() + 1, g.n() + 2);
        let h = with_extra(&g, 3, &[(s, x), (x, 0), (t, 1)]);
        let r = route_through_model(&h, s, t, &m).unwrap();
        assert_eq!(r.ps.vertices(), &[s, x, 0]);
        assert_eq!(r.pt.vertices(), &[1, t]);
        let p = build_detour_via_k4(&h, s, t, &m, 1).unwrap();
        assert!(p.len() > 5);
    }

    #[test]
    fn terminals_enter_through_a_chord_block() {
        // s attaches to two model vertices, so s itself sits in the model's block
        let (g, m) = gen_subdivided_k4([2; 6]);
        let (s, t) = (g.n(), g.n() + 1);
        let a = m.paths[0].vertices()[1];
        let b = m.paths[5].vertices()[1];
        let h = with_extra(&g, 2, &[(s, a), (s, b), (t, 3)]);
        let r = route_through_model(&h, s, t, &m).unwrap();
        assert_eq!(r.ps.len(), 1);
        let p = build_detour_via_k4(&h, s, t, &m, 2).unwrap();
        p.validate_st(&h, s, t).unwrap();
    }

    #[test]
    fn model_outside_relevant_part() {
        let (g, m) = gen_subdivided_k4([1; 6]);
        let (s, t) = (g.n(), g.n() + 1);
        let h = with_extra(&g, 2, &[(s, t), (t, 0)]);
        assert!(matches!(route_through_model(&h, s, t, &m), Err(Error::Precondition(_))));
    }
}
