mod common;

use common::oracle_dist;
use kcenter_core::lab::{
    certify_hub_hierarchy, embed_doubling, gen_cubic_instance, gen_grid, reduce_dominating_set,
    Norm, PointMetric, METRIC_UNIT,
};
use kcenter_core::spc::local_sparsity;
use kcenter_core::{all_pairs, compute_spc, solve_exact, Graph};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit_square(seed: u64, n: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Vec<i64>> = Vec::new();
    while pts.len() < n {
        let p = vec![
            rng.gen_range(0..=METRIC_UNIT as i64),
            rng.gen_range(0..=METRIC_UNIT as i64),
        ];
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

#[test]
fn embedding_sandwich_holds_exactly() {
    let eps = Ratio::new(1, 5);
    for seed in 0..10 {
        for norm in [Norm::LInf, Norm::L1, Norm::L2] {
            let m = PointMetric::from_coordinates(&unit_square(seed, 10), norm, None).unwrap();
            let e = embed_doubling(&m, eps).unwrap();
            e.hierarchy.verify_nets(&m).unwrap();
            let dist = oracle_dist(&e.graph);
            for u in 0..m.n() {
                for v in (u + 1)..m.n() {
                    let dx = u128::from(m.dist(u, v)) * 1000;
                    let dg = u128::from(dist[u][v].unwrap());
                    assert!(dx <= dg);
                    // (1 + 1/5) dx, plus one unit per rounded edge
                    assert!(5 * dg <= 6 * dx + 5 * m.n() as u128);
                }
            }
        }
    }
}

#[test]
fn hub_hierarchy_certifies() {
    for seed in 0..10 {
        let m = PointMetric::from_coordinates(&unit_square(seed, 10), Norm::LInf, None).unwrap();
        let e = embed_doubling(&m, Ratio::new(1, 5)).unwrap();
        let report = certify_hub_hierarchy(&e.graph, &e.hierarchy).unwrap();
        assert!(report.passed(), "seed {seed}: {:?}", report.violations);
        assert_eq!(report.unbanded, 0);
        assert!(report.within_bounds());
    }
}

#[test]
fn two_points_are_exact() {
    let m = PointMetric::from_matrix(&[vec![0, 7], vec![7, 0]], 1).unwrap();
    let e = embed_doubling(&m, Ratio::new(1, 2)).unwrap();
    assert_eq!(e.hierarchy.top, 1);
    assert_eq!(all_pairs(&e.graph).dist(0, 1), 7000);
}

#[test]
fn cubic_balls_are_small() {
    for seed in 0..20 {
        let g = gen_cubic_instance(20, seed).unwrap();
        let o = all_pairs(&g);
        let everything: Vec<usize> = (0..g.n()).collect();
        assert!(local_sparsity(&o, &everything, 1) <= 10);
        assert!(compute_spc(&o, 1).sparsity <= 10);
    }
}

#[test]
fn reduction_matches_domination() {
    let triangle = Graph::unit_lengths(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let (g, k) = reduce_dominating_set(&triangle, 1);
    assert_eq!(solve_exact(&g, k).unwrap().cost, 1);
    let c5 = Graph::unit_lengths(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    let (g, k) = reduce_dominating_set(&c5, 1);
    assert_eq!(solve_exact(&g, k).unwrap().cost, 2);
    for seed in 0..30 {
        let g = common::random_graph(seed, 2, 12, 9);
        let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        for k in 1..=3 {
            let (h, k) = reduce_dominating_set(&g, k);
            let cost = solve_exact(&h, k).unwrap().cost;
            let dominated = kcenter_oracles::has_dominating_set(g.n(), &edges, k as usize);
            assert_eq!(cost <= 1, dominated, "seed {seed} k {k}");
            if !dominated {
                assert!(cost >= 2);
            }
        }
    }
}

#[test]
fn grids() {
    let g = gen_grid(2, 2).unwrap();
    assert_eq!(g.m(), 4);
    assert!(g.is_connected());
}
