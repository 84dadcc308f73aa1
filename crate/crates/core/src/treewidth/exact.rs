use super::{from_elimination_order, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex limit for the exponential subset DP.
pub const DEFAULT_EXACT_BUDGET: usize = 16;
const HARD_LIMIT: usize = 24;

/// Optimal decomposition by dynamic programming over vertex subsets.
///
/// `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)` where `Q(S, v)` is the
/// set of vertices outside `S + v` reachable from `v` through `S`; the
/// minimizing choices give an optimal elimination order.
pub fn exact_treewidth_small(g: &Graph, budget: usize) -> Result<TreeDecomposition> {
    let n = g.n();
    if n > budget.min(HARD_LIMIT) {
        return Err(Error::Resource(format!(
            "exact treewidth on {n} vertices exceeds the budget of {}",
            budget.min(HARD_LIMIT)
        )));
    }
    if n == 0 {
        return Ok(TreeDecomposition::new(vec![vec![]], vec![]));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    // tw[S] + 1, so that the empty set maps to 0 (treewidth -1).
    let mut tw = vec![u8::MAX; size];
    let mut best = vec![0u8; size];
    tw[0] = 0;
    for set in 1..size as u32 {
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = set & !(1 << v);
            let q = q_size(&adj, rest, v, full) as u8;
            let cand = tw[rest as usize].max(q + 1);
            if cand < tw[set as usize] {
                tw[set as usize] = cand;
                best[set as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = best[set as usize] as usize;
        order.push(v);
        set &= !(1 << v);
    }
    order.reverse();
    Ok(from_elimination_order(g, &order))
}

fn q_size(adj: &[u32], inside: u32, v: usize, full: u32) -> u32 {
    let mut comp = 1u32 << v;
    let mut frontier = comp;
    while frontier != 0 {
        let mut next = 0;
        let mut bits = frontier;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[x] & inside;
        }
        frontier = next & !comp;
        comp |= next;
    }
    let mut nb = 0;
    let mut bits = comp;
    while bits != 0 {
        let x = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        nb |= adj[x];
    }
    (nb & full & !comp & !inside).count_ones()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, cycle, grid, star};
    use crate::treewidth::validate_decomposition;

    fn tw(g: &Graph) -> usize {
        let td = exact_treewidth_small(g, DEFAULT_EXACT_BUDGET).unwrap();
        assert!(validate_decomposition(g, &td).unwrap().is_valid());
        td.width()
    }

    #[test]
    fn known_values() {
        assert_eq!(tw(&grid(3, 3)), 3);
        assert_eq!(tw(&complete(4)), 3);
        assert_eq!(tw(&star(5)), 1);
        assert_eq!(tw(&cycle(7)), 2);
        assert_eq!(tw(&grid(2, 6)), 2);
        assert_eq!(tw(&grid(4, 4)), 4);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(exact_treewidth_small(&grid(3, 3), 8), Err(Error::Resource(_))));
    }
}
