//! Solvers for the Longest Detour and Exact Detour problems.
//!
//! Given a graph `G`, terminals `s != t` and an offset `k`, Longest Detour asks
//! for an `(s,t)`-path of length at least `dist(s,t) + k`; Exact Detour asks for
//! one of length exactly `dist(s,t) + k`.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`] – simple graphs, BFS layering, layer-induced subgraphs, block-cut
//!   trees, the relevant part of an `(s,t)` instance and a brute-force path
//!   enumerator used as a test oracle.
//! * [`treewidth`] – tree decompositions: validation, elimination heuristics,
//!   an exact subset DP for small graphs and the MMD+ lower bound.
//! * [`path_dp`] – longest `(s,t)`-path by dynamic programming over a nice tree
//!   decomposition.
//! * [`exact_path`] – the exact-length path oracle (color coding with a
//!   deterministic fallback).
//! * [`detour`] – the win/win Longest Detour solver, the layered Exact Detour
//!   reduction and the search-to-decision construction.
//! * [`tetra`] – subdivided tetrahedra: generation, case classification,
//!   rerouting, routing terminals into a model, a witness finder and the
//!   dual-certificate checker.

pub mod detour;
pub mod error;
pub mod exact_path;
pub mod graph;
pub mod path_dp;
pub mod tetra;
pub mod treewidth;

pub use detour::{
    detour_enforcing_bound, query_parameter_audit, search_to_decision, solve_exact_detour,
    solve_longest_detour, Branch, DetourInstance, LongestDetourConfig, Problem, SolveResult,
    SolveStats,
};
pub use error::{Error, Result};
pub use exact_path::{exact_path, exact_path_decide, OracleConfig};
pub use graph::{Graph, LayerMap, Path, Subgraph, Vertex};
pub use treewidth::TreeDecomposition;
