//! Subdivided tetrahedra (`K4^(k)`): generation, position cases of two
//! vertices, rerouting inside the model, routing terminals into it, a
//! small-scale finder and the LP dual certificates behind the rerouting bound.

mod certificate;
mod finder;
mod positions;
mod routing;

pub use certificate::{
    builtin_certificate, case_system, fourier_motzkin_feasible, verify_certificate, CertRow, DualCertificate, Family,
    LinearSystem, VerificationReport,
};
pub use finder::{find_k4_subdivision, FindOutcome, DEFAULT_SEARCH_BUDGET};
pub use positions::{branch_sequence, classify_positions, detour_in_k4, enumerate_uv_paths, Case, PositionCase};
pub use routing::{build_detour_via_k4, route_through_model, Routing};

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Vertex};

/// Branch index pairs of the six realizing paths, in storage order.
pub const K4_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into [`K4_EDGES`] of the branch pair `{i, j}`.
pub fn edge_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    K4_EDGES.iter().position(|&e| e == (a, b)).expect("distinct branch indices below 4")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TetraModel {
    pub branch: [Vertex; 4],
    /// `paths[e]` runs from `branch[K4_EDGES[e].0]` to `branch[K4_EDGES[e].1]`.
    pub paths: [Path; 6],
}

impl TetraModel {
    /// Largest `k` for which this is a `K4^(k)`: shortest realizing path minus one.
    pub fn k_floor(&self) -> usize {
        self.paths.iter().map(|p| p.len()).min().unwrap_or(0).saturating_sub(1)
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.paths.iter().flat_map(|p| p.vertices().iter().copied()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut es: Vec<(Vertex, Vertex)> = self
            .paths
            .iter()
            .flat_map(|p| p.vertices().windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .collect();
        es.sort_unstable();
        es
    }

    /// The union of the realizing paths, on the host's vertex ids.
    pub fn graph(&self, host_n: usize) -> Result<Graph> {
        Graph::undirected(host_n, self.edges())
    }

    /// Checks the model inside `g`: endpoints, internal disjointness, branch
    /// degrees, and with `k` the length floor `k + 1` on every path.
    pub fn validate(&self, g: &Graph, k: Option<usize>) -> Result<()> {
        let bad = |msg: String| Err(Error::Structural(msg));
        let mut b = self.branch;
        b.sort_unstable();
        if b.windows(2).any(|w| w[0] == w[1]) {
            return bad("branch vertices are not distinct".into());
        }
        let mut owner = vec![None; g.n()];
        for (e, p) in self.paths.iter().enumerate() {
            let (i, j) = K4_EDGES[e];
            p.validate(g)?;
            if p.first() != self.branch[i] || p.last() != self.branch[j] {
                return bad(format!("path {e} does not join branch vertices {i} and {j}"));
            }
            if p.is_empty() {
                return bad(format!("path {e} is empty"));
            }
            for &x in &p.vertices()[1..p.vertices().len() - 1] {
                if self.branch.contains(&x) {
                    return bad(format!("path {e} passes through branch vertex {x}"));
                }
                if let Some(other) = owner[x].replace(e) {
                    return bad(format!("paths {other} and {e} share vertex {x}"));
                }
            }
            if let Some(k) = k {
                if p.len() < k + 1 {
                    return bad(format!("path {e} has length {} < {}", p.len(), k + 1));
                }
            }
        }
        let es = self.edges();
        if es.windows(2).any(|w| w[0] == w[1]) {
            return bad("two realizing paths share an edge".into());
        }
        for &x in &self.branch {
            let deg = es.iter().filter(|&&(a, c)| a == x || c == x).count();
            if deg != 3 {
                return bad(format!("branch vertex {x} has degree {deg} in the model"));
            }
        }
        Ok(())
    }
}

/// `K4` with edge `K4_EDGES[e]` subdivided `counts[e]` times. Branch vertices
/// are `0..4`; subdivision vertices follow in edge order.
pub fn gen_subdivided_k4(counts: [usize; 6]) -> (Graph, TetraModel) {
    let mut next = 4;
    let mut edges = Vec::new();
    let paths = K4_EDGES.map(|(i, j)| {
        let mut seq = vec![i];
        seq.extend(next..next + counts[edge_index(i, j)]);
        next += counts[edge_index(i, j)];
        seq.push(j);
        edges.extend(seq.windows(2).map(|w| (w[0], w[1])));
        Path::new(seq)
    });
    let g = Graph::undirected(next, edges).expect("generated edges are simple");
    (g, TetraModel { branch: [0, 1, 2, 3], paths })
}
