#![allow(dead_code)]

use kcenter_core::lab::gen_random_connected;
use kcenter_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn edge_list(g: &Graph) -> Vec<(usize, usize, u64)> {
    g.edges().iter().map(|e| (e.u, e.v, e.len)).collect()
}

pub fn oracle_dist(g: &Graph) -> Vec<Vec<Option<u64>>> {
    kcenter_oracles::floyd_warshall(g.n(), &edge_list(g))
}

/// Connected graph with `lo..=hi` vertices and a random number of edges.
pub fn random_graph(seed: u64, lo: usize, hi: usize, max_len: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(lo..=hi);
    let max_m = n * (n - 1) / 2;
    let m = rng.gen_range((n - 1)..=max_m.min(2 * n));
    gen_random_connected(n, m, max_len, seed).unwrap()
}

pub fn radius_of(dist: &[Vec<Option<u64>>], centers: &[usize]) -> u64 {
    (0..dist.len())
        .map(|v| centers.iter().filter_map(|&c| dist[c][v]).min().unwrap())
        .max()
        .unwrap()
}
