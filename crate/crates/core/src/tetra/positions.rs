use super::{TetraModel, K4_EDGES};
use crate::error::{Error, Result};
use crate::graph::{enumerate_st_paths, shortest_path, Graph, Path, Vertex};
use serde::{Deserialize, Serialize};

/// How two vertices sit on the realizing paths of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// Same realizing path.
    A,
    /// Two paths sharing a branch vertex.
    B,
    /// Two disjoint paths.
    C,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionCase {
    pub case: Case,
    /// Indices (into [`K4_EDGES`]) of the paths carrying `u` and `v`.
    pub carriers: (usize, usize),
    /// Host vertices playing `b1..b4` after normalization: in case a `u` lies
    /// between `b1` and `v` on the `b1b2` path; in case b `u` is on `b1b2` and
    /// `v` on `b1b3`; in case c `u` is on `b1b2` and `v` on `b3b4`.
    pub labels: [Vertex; 4],
    /// `u` or `v` is a branch vertex.
    pub degenerate: bool,
}

/// Realizing paths that can be taken to carry `x`: the one holding it in its
/// interior, or all three at a branch vertex.
fn carriers_of(model: &TetraModel, x: Vertex) -> Vec<usize> {
    if let Some(i) = model.branch.iter().position(|&b| b == x) {
        return K4_EDGES.iter().enumerate().filter(|(_, &(a, b))| a == i || b == i).map(|(e, _)| e).collect();
    }
    (0..6).filter(|&e| model.paths[e].contains(x)).collect()
}

fn case_of(eu: usize, ev: usize) -> Case {
    let (a, b) = (K4_EDGES[eu], K4_EDGES[ev]);
    if eu == ev {
        Case::A
    } else if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
        Case::B
    } else {
        Case::C
    }
}

fn position(p: &Path, x: Vertex) -> usize {
    p.vertices().iter().position(|&y| y == x).expect("carrier contains the vertex")
}

/// Case of `(u, v)` and a relabeling of the branch vertices into the
/// normalized position. A branch vertex is put on whichever incident path
/// gives the earliest case.
pub fn classify_positions(model: &TetraModel, u: Vertex, v: Vertex) -> Result<PositionCase> {
    if u == v {
        return Err(Error::input("classification needs u != v"));
    }
    let (cu, cv) = (carriers_of(model, u), carriers_of(model, v));
    if cu.is_empty() || cv.is_empty() {
        return Err(Error::input(format!("{} is not a model vertex", if cu.is_empty() { u } else { v })));
    }
    let (case, eu, ev) = cu
        .iter()
        .flat_map(|&eu| cv.iter().map(move |&ev| (case_of(eu, ev), eu, ev)))
        .min()
        .unwrap();
    let b = model.branch;
    let (iu, ju) = K4_EDGES[eu];
    let (iv, jv) = K4_EDGES[ev];
    let order: [usize; 4] = match case {
        Case::A => {
            let p = &model.paths[eu];
            let (x, y) = if position(p, u) < position(p, v) { (iu, ju) } else { (ju, iu) };
            let rest: Vec<usize> = (0..4).filter(|&z| z != x && z != y).collect();
            [x, y, rest[0], rest[1]]
        }
        Case::B => {
            let shared = if iu == iv || iu == jv { iu } else { ju };
            let y = if iu == shared { ju } else { iu };
            let z = if iv == shared { jv } else { iv };
            let w = (0..4).find(|&q| q != shared && q != y && q != z).unwrap();
            [shared, y, z, w]
        }
        Case::C => [iu, ju, iv, jv],
    };
    Ok(PositionCase {
        case,
        carriers: (eu, ev),
        labels: order.map(|i| b[i]),
        degenerate: b.contains(&u) || b.contains(&v),
    })
}

fn model_graph(model: &TetraModel) -> Result<Graph> {
    let n = model.vertices().last().map_or(0, |&x| x + 1);
    model.graph(n)
}

fn check_pair(model: &TetraModel, u: Vertex, v: Vertex) -> Result<()> {
    if u == v {
        return Err(Error::input("need u != v"));
    }
    let vs = model.vertices();
    for x in [u, v] {
        if vs.binary_search(&x).is_err() {
            return Err(Error::input(format!("{x} is not a model vertex")));
        }
    }
    Ok(())
}

/// Every simple `(u,v)`-path inside the model, lexicographically ordered.
pub fn enumerate_uv_paths(model: &TetraModel, u: Vertex, v: Vertex) -> Result<Vec<Path>> {
    check_pair(model, u, v)?;
    enumerate_st_paths(&model_graph(model)?, u, v, 1 << 16)
}

/// Labels (1..=4, after normalization) of the branch vertices that `p` passes
/// through strictly between its endpoints.
pub fn branch_sequence(case: &PositionCase, p: &Path) -> Vec<usize> {
    let vs = p.vertices();
    vs[1..vs.len() - 1]
        .iter()
        .filter_map(|x| case.labels.iter().position(|b| b == x).map(|i| i + 1))
        .collect()
}

/// A longest `(u,v)`-path in the model, and `d_M(u,v)`. For a `K4^(k)` its
/// length is at least `d_M(u,v) + k`.
pub fn detour_in_k4(model: &TetraModel, u: Vertex, v: Vertex) -> Result<(Path, usize)> {
    check_pair(model, u, v)?;
    let g = model_graph(model)?;
    let d = shortest_path(&g, u, v).ok_or_else(|| Error::Structural("model is disconnected".into()))?.len();
    let mut best: Option<Path> = None;
    for p in enumerate_st_paths(&g, u, v, 1 << 16)? {
        if best.as_ref().is_none_or(|b| p.len() > b.len()) {
            best = Some(p);
        }
    }
    Ok((best.expect("connected model has a path"), d))
}
