//! Longest `(s,t)`-path by dynamic programming over a nice tree decomposition.
//!
//! A partial solution below a node is a set of introduced edges forming
//! vertex-disjoint path fragments. Forgotten vertices have degree 0 or 2
//! (degree 1 only for `s` and `t`), so every fragment end is either a bag
//! vertex or a forgotten terminal. The state records, per bag vertex, its degree
//! and, for degree-1 vertices, the opposite end of its fragment.

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Vertex};
use crate::treewidth::{validate_decomposition, TreeDecomposition};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Edge(Vertex, Vertex),
    Join(usize, usize),
}

#[derive(Debug, Clone)]
struct NiceNode {
    bag: Vec<Vertex>,
    kind: Kind,
    /// Single child for introduce / forget / edge nodes.
    child: Option<usize>,
}

/// Nice decomposition with an empty root; children always precede parents.
struct NiceTd {
    nodes: Vec<NiceNode>,
}

impl NiceTd {
    fn push(&mut self, bag: Vec<Vertex>, kind: Kind, child: Option<usize>) -> usize {
        self.nodes.push(NiceNode { bag, kind, child });
        self.nodes.len() - 1
    }

    /// Forgets `v` from the bag of `node`, introducing its remaining bag edges first.
    fn forget(&mut self, g: &Graph, mut node: usize, v: Vertex) -> usize {
        let bag = self.nodes[node].bag.clone();
        for &w in &bag {
            if w != v && g.has_edge(v, w) {
                node = self.push(bag.clone(), Kind::Edge(v, w), Some(node));
            }
        }
        let smaller: Vec<Vertex> = bag.into_iter().filter(|&x| x != v).collect();
        self.push(smaller, Kind::Forget(v), Some(node))
    }

    fn introduce(&mut self, node: usize, v: Vertex) -> usize {
        let mut bag = self.nodes[node].bag.clone();
        let pos = bag.binary_search(&v).unwrap_err();
        bag.insert(pos, v);
        self.push(bag, Kind::Introduce(v), Some(node))
    }

    /// Turns the bag of `node` into `target` by forgets followed by introduces.
    fn adapt(&mut self, g: &Graph, mut node: usize, target: &[Vertex]) -> usize {
        let current = self.nodes[node].bag.clone();
        for &v in &current {
            if target.binary_search(&v).is_err() {
                node = self.forget(g, node, v);
            }
        }
        for &v in target {
            if current.binary_search(&v).is_err() {
                node = self.introduce(node, v);
            }
        }
        node
    }

    fn build(g: &Graph, td: &TreeDecomposition) -> NiceTd {
        let adj = td.adjacency();
        let k = td.node_count();
        // orient the tree from node 0 and list nodes children-first
        let mut parent = vec![usize::MAX; k];
        let mut order = Vec::with_capacity(k);
        let mut stack = vec![0];
        parent[0] = 0;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut children = vec![Vec::new(); k];
        for &x in &order[1..] {
            children[parent[x]].push(x);
        }
        let mut nice = NiceTd { nodes: Vec::new() };
        let mut top = vec![usize::MAX; k];
        for &x in order.iter().rev() {
            let bag = &td.bags()[x];
            let mut adapted: Vec<usize> = children[x].iter().map(|&c| nice.adapt(g, top[c], bag)).collect();
            if adapted.is_empty() {
                let leaf = nice.push(Vec::new(), Kind::Leaf, None);
                adapted.push(nice.adapt(g, leaf, bag));
            }
            let mut acc = adapted[0];
            for &other in &adapted[1..] {
                acc = nice.push(bag.clone(), Kind::Join(acc, other), None);
            }
            top[x] = acc;
        }
        nice.adapt(g, top[0], &[]);
        nice
    }
}

// Per-position codes in a DP state.
const DEG0: u8 = 0;
const DEG2: u8 = 1;
const TO_S: u8 = 250;
const TO_T: u8 = 251;
const BAG_BASE: u8 = 2;

fn to_pos(p: usize) -> u8 {
    BAG_BASE + p as u8
}

fn degree(code: u8) -> u8 {
    match code {
        DEG0 => 0,
        DEG2 => 2,
        _ => 1,
    }
}

/// State: one code per bag position plus a trailing "s-t path closed" flag.
type State = Vec<u8>;

#[derive(Debug, Clone, Copy)]
enum Back {
    Leaf,
    One(u32, bool),
    Two(u32, u32),
}

#[derive(Default)]
struct Table {
    states: Vec<(State, u32, Back)>,
    index: HashMap<State, usize>,
}

impl Table {
    fn offer(&mut self, state: State, value: u32, back: Back) {
        match self.index.get(&state) {
            Some(&i) => {
                if value > self.states[i].1 {
                    self.states[i].1 = value;
                    self.states[i].2 = back;
                }
            }
            None => {
                self.index.insert(state.clone(), self.states.len());
                self.states.push((state, value, back));
            }
        }
    }
}

struct Solver {
    s: Vertex,
    t: Vertex,
}

impl Solver {
    fn cap(&self, v: Vertex) -> u8 {
        if v == self.s || v == self.t {
            1
        } else {
            2
        }
    }

    fn introduce(&self, state: &State, pos: usize) -> State {
        let b = state.len() - 1;
        let mut out = Vec::with_capacity(state.len() + 1);
        for (i, &c) in state[..b].iter().enumerate() {
            if i == pos {
                out.push(DEG0);
            }
            out.push(if (BAG_BASE..TO_S).contains(&c) && (c - BAG_BASE) as usize >= pos { c + 1 } else { c });
        }
        if pos == b {
            out.push(DEG0);
        }
        out.push(state[b]);
        out
    }

    fn forget(&self, state: &State, pos: usize, v: Vertex) -> Option<State> {
        let b = state.len() - 1;
        let mut st = state.clone();
        let code = st[pos];
        let terminal = v == self.s || v == self.t;
        if terminal {
            if degree(code) != 1 {
                return None;
            }
            let mine = if v == self.s { TO_S } else { TO_T };
            match code {
                TO_S | TO_T => st[b] = 1,
                p => st[(p - BAG_BASE) as usize] = mine,
            }
        } else if degree(code) == 1 {
            return None;
        }
        st.remove(pos);
        for c in st[..b - 1].iter_mut() {
            if (BAG_BASE..TO_S).contains(c) && (*c - BAG_BASE) as usize > pos {
                *c -= 1;
            }
        }
        Some(st)
    }

    fn take_edge(&self, state: &State, i: usize, j: usize, u: Vertex, v: Vertex) -> Option<State> {
        let b = state.len() - 1;
        if state[b] == 1 {
            return None;
        }
        let (cu, cv) = (state[i], state[j]);
        let (du, dv) = (degree(cu), degree(cv));
        if du >= self.cap(u) || dv >= self.cap(v) {
            return None;
        }
        let mut st = state.clone();
        match (du, dv) {
            (0, 0) => {
                st[i] = to_pos(j);
                st[j] = to_pos(i);
            }
            (1, 0) => {
                st[i] = DEG2;
                st[j] = cu;
                if cu < TO_S {
                    st[(cu - BAG_BASE) as usize] = to_pos(j);
                }
            }
            (0, 1) => {
                st[j] = DEG2;
                st[i] = cv;
                if cv < TO_S {
                    st[(cv - BAG_BASE) as usize] = to_pos(i);
                }
            }
            (1, 1) => {
                if cu == to_pos(j) {
                    return None;
                }
                st[i] = DEG2;
                st[j] = DEG2;
                match (cu, cv) {
                    (TO_S, TO_T) | (TO_T, TO_S) => st[b] = 1,
                    _ => {
                        if cu < TO_S {
                            st[(cu - BAG_BASE) as usize] = cv;
                        }
                        if cv < TO_S {
                            st[(cv - BAG_BASE) as usize] = cu;
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        Some(st)
    }

    /// Union of two partial solutions over the same bag, rejecting degree
    /// overflow and cycles.
    fn join(&self, bag: &[Vertex], l: &State, r: &State) -> Option<State> {
        let b = bag.len();
        if l[b] == 1 && r[b] == 1 {
            return None;
        }
        // fragment graph on positions plus two terminal nodes
        let (node_s, node_t) = (b, b + 1);
        let mut links: Vec<Vec<usize>> = vec![Vec::new(); b + 2];
        let mut out = vec![DEG0; b + 1];
        for p in 0..b {
            let total = degree(l[p]) + degree(r[p]);
            if total > self.cap(bag[p]) {
                return None;
            }
            out[p] = match total {
                0 => DEG0,
                2 => DEG2,
                _ => DEG0, // fixed below from the fragment graph
            };
        }
        for side in [l, r] {
            for p in 0..b {
                let c = side[p];
                if degree(c) != 1 {
                    continue;
                }
                let q = match c {
                    TO_S => node_s,
                    TO_T => node_t,
                    c => (c - BAG_BASE) as usize,
                };
                if q == node_s || q == node_t || p < q {
                    links[p].push(q);
                    links[q].push(p);
                }
            }
        }
        let mut done = l[b] == 1 || r[b] == 1;
        let mut visited = vec![false; b + 2];
        for start in 0..b + 2 {
            if visited[start] || links[start].len() != 1 {
                continue;
            }
            let (mut prev, mut cur) = (usize::MAX, start);
            visited[start] = true;
            while let Some(x) = links[cur].iter().copied().find(|&x| x != prev) {
                if visited[x] {
                    return None;
                }
                visited[x] = true;
                prev = cur;
                cur = x;
            }
            let end = cur;
            let code_of = |x: usize| -> u8 {
                if x == node_s {
                    TO_S
                } else if x == node_t {
                    TO_T
                } else {
                    to_pos(x)
                }
            };
            if start < b {
                out[start] = code_of(end);
            }
            if end < b {
                out[end] = code_of(start);
            }
            if (start == node_s && end == node_t) || (start == node_t && end == node_s) {
                done = true;
            }
        }
        // anything linked but unvisited lies on a cycle
        if (0..b + 2).any(|x| !links[x].is_empty() && !visited[x]) {
            return None;
        }
        out[b] = done as u8;
        Some(out)
    }
}

/// Longest `(s,t)`-path in `g`, computed over `td`. Returns `None` when `t`
/// is unreachable from `s`. Runtime is exponential in the width of `td` only.
pub fn longest_st_path(g: &Graph, td: &TreeDecomposition, s: Vertex, t: Vertex) -> Result<Option<Path>> {
    if g.is_directed() {
        return Err(Error::input("longest path DP needs an undirected graph"));
    }
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::input("longest path needs s != t"));
    }
    let report = validate_decomposition(g, td)?;
    if !report.is_valid() {
        return Err(Error::Structural(format!("invalid tree decomposition: {report:?}")));
    }
    if td.width() + 1 >= (TO_S - BAG_BASE) as usize {
        return Err(Error::Resource(format!("decomposition width {} is too large for the path DP", td.width())));
    }
    let nice = NiceTd::build(g, td);
    let solver = Solver { s, t };
    let mut tables: Vec<Table> = Vec::with_capacity(nice.nodes.len());
    for node in &nice.nodes {
        let mut table = Table::default();
        match node.kind {
            Kind::Leaf => table.offer(vec![0], 0, Back::Leaf),
            Kind::Introduce(v) => {
                let pos = node.bag.binary_search(&v).unwrap();
                for (i, (st, val, _)) in tables[node.child.unwrap()].states.iter().enumerate() {
                    table.offer(solver.introduce(st, pos), *val, Back::One(i as u32, false));
                }
            }
            Kind::Forget(v) => {
                let child = &tables[node.child.unwrap()];
                let pos = nice.nodes[node.child.unwrap()].bag.binary_search(&v).unwrap();
                for (i, (st, val, _)) in child.states.iter().enumerate() {
                    if let Some(ns) = solver.forget(st, pos, v) {
                        table.offer(ns, *val, Back::One(i as u32, false));
                    }
                }
            }
            Kind::Edge(u, v) => {
                let (i, j) = (node.bag.binary_search(&u).unwrap(), node.bag.binary_search(&v).unwrap());
                for (k, (st, val, _)) in tables[node.child.unwrap()].states.iter().enumerate() {
                    table.offer(st.clone(), *val, Back::One(k as u32, false));
                    if let Some(ns) = solver.take_edge(st, i, j, u, v) {
                        table.offer(ns, val + 1, Back::One(k as u32, true));
                    }
                }
            }
            Kind::Join(a, b) => {
                for (i, (ls, lv, _)) in tables[a].states.iter().enumerate() {
                    for (j, (rs, rv, _)) in tables[b].states.iter().enumerate() {
                        if let Some(ns) = solver.join(&node.bag, ls, rs) {
                            table.offer(ns, lv + rv, Back::Two(i as u32, j as u32));
                        }
                    }
                }
            }
        }
        tables.push(table);
    }
    let root = nice.nodes.len() - 1;
    let Some(&best) = tables[root].index.get(&vec![1u8]) else {
        return Ok(None);
    };
    let edges = reconstruct(&nice, &tables, root, best);
    let path = assemble(g, &edges, s, t)?;
    if path.len() as u32 != tables[root].states[best].1 {
        return Err(Error::Consistency("reconstructed path length differs from the DP optimum".into()));
    }
    Ok(Some(path))
}

fn reconstruct(nice: &NiceTd, tables: &[Table], root: usize, state: usize) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    let mut stack = vec![(root, state)];
    while let Some((node, idx)) = stack.pop() {
        match (tables[node].states[idx].2, nice.nodes[node].kind) {
            (Back::Leaf, _) => {}
            (Back::One(c, took), kind) => {
                if took {
                    if let Kind::Edge(u, v) = kind {
                        edges.push((u, v));
                    }
                }
                stack.push((nice.nodes[node].child.unwrap(), c as usize));
            }
            (Back::Two(i, j), Kind::Join(a, b)) => {
                stack.push((a, i as usize));
                stack.push((b, j as usize));
            }
            (Back::Two(..), _) => unreachable!("join backpointer on a non-join node"),
        }
    }
    edges
}

fn assemble(g: &Graph, edges: &[(Vertex, Vertex)], s: Vertex, t: Vertex) -> Result<Path> {
    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut seq = vec![s];
    let mut prev = usize::MAX;
    let mut cur = s;
    while cur != t {
        let next = adj
            .get(&cur)
            .and_then(|nb| nb.iter().copied().find(|&x| x != prev))
            .ok_or_else(|| Error::Consistency("DP edge set does not connect s to t".into()))?;
        prev = cur;
        cur = next;
        seq.push(cur);
        if seq.len() > edges.len() + 1 {
            return Err(Error::Consistency("DP edge set contains a cycle".into()));
        }
    }
    let path = Path::new(seq);
    if path.len() != edges.len() {
        return Err(Error::Consistency("DP edge set is not a single path".into()));
    }
    path.validate_st(g, s, t)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, cycle, grid, path_graph};
    use crate::treewidth::{heuristic_decomposition, Strategy};

    fn longest(g: &Graph, s: Vertex, t: Vertex) -> Option<usize> {
        let td = heuristic_decomposition(g, Strategy::MinFill);
        longest_st_path(g, &td, s, t).unwrap().map(|p| {
            p.validate_st(g, s, t).unwrap();
            p.len()
        })
    }

    #[test]
    fn cycle_long_arc() {
        assert_eq!(longest(&cycle(6), 0, 1), Some(5));
    }

    #[test]
    fn k4_hamiltonian() {
        assert_eq!(longest(&complete(4), 0, 3), Some(3));
    }

    #[test]
    fn unreachable_target() {
        let g = Graph::undirected(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(longest(&g, 0, 3), None);
    }

    #[test]
    fn grid_corner_to_corner() {
        // 3x3 grid corners: Hamiltonian path exists between opposite corners.
        assert_eq!(longest(&grid(3, 3), 0, 8), Some(8));
        assert_eq!(longest(&path_graph(5), 0, 4), Some(4));
    }

    #[test]
    fn single_bag_decomposition_works() {
        let g = cycle(5);
        let td = TreeDecomposition::new(vec![(0..5).collect()], vec![]);
        assert_eq!(longest_st_path(&g, &td, 0, 2).unwrap().unwrap().len(), 3);
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = cycle(4);
        let td = heuristic_decomposition(&g, Strategy::MinFill);
        assert!(longest_st_path(&g, &td, 1, 1).is_err());
        let bad = TreeDecomposition::new(vec![vec![0, 1], vec![2, 3]], vec![(0, 1)]);
        assert!(matches!(longest_st_path(&g, &bad, 0, 1), Err(Error::Structural(_))));
    }
}
