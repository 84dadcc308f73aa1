mod common;

use common::arb_graph;
use detour_core::graph::enumerate_st_paths;
use detour_core::path_dp::longest_st_path;
use detour_core::treewidth::{
    exact_treewidth_small, format_td, heuristic_decomposition, parse_td, treewidth_lower_bound, validate_decomposition,
    Strategy, DEFAULT_EXACT_BUDGET,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bounds_sandwich_the_exact_width(g in arb_graph(1, 9, false)) {
        let lb = treewidth_lower_bound(&g);
        let exact = exact_treewidth_small(&g, DEFAULT_EXACT_BUDGET).unwrap();
        prop_assert!(validate_decomposition(&g, &exact).unwrap().is_valid());
        prop_assert!(lb <= exact.width(), "lb {} > tw {}", lb, exact.width());
        for strategy in [Strategy::MinFill, Strategy::MinDegree] {
            let td = heuristic_decomposition(&g, strategy);
            prop_assert!(validate_decomposition(&g, &td).unwrap().is_valid());
            prop_assert!(exact.width() <= td.width());
        }
    }

    #[test]
    fn td_text_round_trip(g in arb_graph(1, 10, false)) {
        let td = heuristic_decomposition(&g, Strategy::MinFill);
        let text = format_td(&td, g.n());
        let (back, n) = parse_td(&text).unwrap();
        prop_assert_eq!(n, g.n());
        prop_assert_eq!(&back, &td);
        prop_assert_eq!(format_td(&back, n), text);
    }

    #[test]
    fn longest_path_dp_matches_enumeration(g in arb_graph(2, 9, false), s in 0usize..9, t in 0usize..9) {
        let (s, t) = (s % g.n(), t % g.n());
        prop_assume!(s != t);
        let best = enumerate_st_paths(&g, s, t, 10_000_000).unwrap().iter().map(|p| p.len()).max();
        for td in [heuristic_decomposition(&g, Strategy::MinFill), exact_treewidth_small(&g, DEFAULT_EXACT_BUDGET).unwrap()] {
            let got = longest_st_path(&g, &td, s, t).unwrap();
            prop_assert_eq!(got.as_ref().map(|p| p.len()), best);
            if let Some(p) = got {
                prop_assert!(p.validate_st(&g, s, t).is_ok());
            }
        }
    }
}

#[test]
fn broken_decompositions_are_reported() {
    let g = detour_core::graph::generators::cycle(5);
    let td = heuristic_decomposition(&g, Strategy::MinFill);
    let text = format_td(&td, 5);
    // drop vertex 1 (1-based) from every bag
    let stripped: String = text
        .lines()
        .map(|l| {
            if l.starts_with("b ") {
                let mut toks: Vec<&str> = l.split_whitespace().collect();
                let keep: Vec<&str> = toks.drain(2..).filter(|&v| v != "1").collect();
                format!("{} {}\n", toks.join(" "), keep.join(" "))
            } else {
                format!("{l}\n")
            }
        })
        .collect();
    let (broken, _) = parse_td(&stripped).unwrap();
    let report = validate_decomposition(&g, &broken).unwrap();
    assert_eq!(report.uncovered_vertex, Some(0));
    assert!(!report.is_valid());
}
