mod common;

use common::{oracle_dist, radius_of};
use kcenter_core::io::{parse_graph, write_graph};
use kcenter_core::{build_graph, format_decimal, solve_exact, solve_fpa, DecimalLength, FpaOptions};
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize, u64)>)> {
    (1usize..9).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        let count = pairs.len();
        (
            Just(n),
            proptest::sample::subsequence(pairs, 0..=count),
            proptest::collection::vec(1u64..5000, count),
        )
            .prop_map(|(n, chosen, lens)| {
                let edges = chosen
                    .into_iter()
                    .zip(lens)
                    .map(|((u, v), l)| (u, v, l))
                    .collect();
                (n, edges)
            })
    })
}

proptest! {
    #[test]
    fn decimal_rendering_roundtrips(value in 0u64..10_000_000, digits in 0u32..7) {
        let unit = 10u64.pow(digits);
        let text = format_decimal(value, unit);
        let parsed: DecimalLength = text.parse().unwrap();
        prop_assert_eq!(parsed.scaled_to(digits), Some(value));
    }

    #[test]
    fn graph_text_roundtrips((n, edges) in small_graph()) {
        // lengths in thousandths
        let lens: Vec<(usize, usize, DecimalLength)> = edges
            .iter()
            .map(|&(u, v, l)| (u, v, format_decimal(l, 1000).parse().unwrap()))
            .collect();
        let g = build_graph(n, &lens).unwrap();
        let back = parse_graph(&write_graph(&g, None)).unwrap();
        prop_assert_eq!(back.graph, g);
    }

    #[test]
    fn fpa_is_feasible_and_within_ratio((n, edges) in small_graph(), k in 1u64..4) {
        let g = kcenter_core::Graph::from_scaled(n, edges, 1).unwrap();
        let parts = g.component_count() as u64;
        prop_assume!(parts <= k);
        let s = solve_fpa(&g, k, &FpaOptions::default()).unwrap();
        let dist = oracle_dist(&g);
        prop_assert!(s.centers.len() as u64 <= k);
        prop_assert_eq!(radius_of(&dist, &s.centers), s.cost);
        let opt = solve_exact(&g, k).unwrap().cost;
        prop_assert!(2 * s.cost <= 3 * opt);
    }
}
