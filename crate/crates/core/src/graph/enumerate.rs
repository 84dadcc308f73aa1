use super::{Graph, Path, Vertex};
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Every simple `(s,t)`-path, by exhaustive DFS, in lexicographic order of
/// vertex sequences. Fails with [`Error::CountLimit`] once more than
/// `max_count` paths exist.
pub fn enumerate_st_paths(g: &Graph, s: Vertex, t: Vertex, max_count: usize) -> Result<Vec<Path>> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    let mut seq = vec![s];
    on_path[s] = true;
    dfs(g, t, max_count, &mut on_path, &mut seq, &mut out)?;
    Ok(out)
}

fn dfs(
    g: &Graph,
    t: Vertex,
    max_count: usize,
    on_path: &mut [bool],
    seq: &mut Vec<Vertex>,
    out: &mut Vec<Path>,
) -> Result<()> {
    let v = *seq.last().unwrap();
    if v == t {
        if out.len() == max_count {
            return Err(Error::CountLimit { limit: max_count });
        }
        out.push(Path::new(seq.clone()));
        return Ok(());
    }
    for &w in g.neighbors(v) {
        if !on_path[w] {
            on_path[w] = true;
            seq.push(w);
            dfs(g, t, max_count, on_path, seq, out)?;
            seq.pop();
            on_path[w] = false;
        }
    }
    Ok(())
}

/// A BFS shortest `(s,t)`-path; ties go to the smallest predecessor id.
pub fn shortest_path(g: &Graph, s: Vertex, t: Vertex) -> Option<Path> {
    if s >= g.n() || t >= g.n() {
        return None;
    }
    let mut parent = vec![usize::MAX; g.n()];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            break;
        }
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    if parent[t] == usize::MAX {
        return None;
    }
    let mut seq = vec![t];
    let mut x = t;
    while x != s {
        x = parent[x];
        seq.push(x);
    }
    seq.reverse();
    Some(Path::new(seq))
}
