//! Fixed inputs shared by the benchmarks.

use detour_core::graph::generators::{cycle, grid};
use detour_core::tetra::gen_subdivided_k4;
use detour_core::{DetourInstance, Graph};

/// Corner-to-corner instance on an `r x c` grid.
pub fn grid_instance(rows: usize, cols: usize, k: usize) -> DetourInstance {
    DetourInstance::new(grid(rows, cols), 0, rows * cols - 1, k).unwrap()
}

/// Neighbouring terminals on an `n`-cycle, so the only detour has length `n - 1`.
pub fn cycle_instance(n: usize) -> DetourInstance {
    DetourInstance::new(cycle(n), 0, 1, n - 2).unwrap()
}

/// A uniformly subdivided tetrahedron with terminals at two branch vertices.
pub fn tetra_instance(k: usize) -> (Graph, DetourInstance) {
    let (g, m) = gen_subdivided_k4([k; 6]);
    let inst = DetourInstance::new(g.clone(), m.branch[0], m.branch[1], k).unwrap();
    (g, inst)
}
