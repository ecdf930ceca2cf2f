//! Shortest path covers.
//!
//! For a scale `r`, the hubs must hit the canonical shortest path of every
//! pair at distance in `(r, 2r]`. The cover is built greedily and its local
//! sparsity (max hubs in any ball of radius `2r`) is measured, not assumed.

use serde::Serialize;

use crate::distance::DistanceOracle;
use crate::graph::{Dist, INF};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortestPathCover {
    /// Scale `r`, in the oracle's units.
    pub scale: Dist,
    /// Hub vertices, ascending.
    pub hubs: Vec<usize>,
    /// Number of vertex pairs whose distance lies in `(r, 2r]`.
    pub covered_paths: usize,
    /// `max_v |B_v(2r) ∩ hubs|`.
    pub sparsity: usize,
}

#[inline]
fn in_band(d: Dist, r: Dist) -> bool {
    d != INF && d > r && d <= r.saturating_mul(2)
}

fn band_pairs(oracle: &DistanceOracle, r: Dist) -> impl Iterator<Item = (usize, usize)> + '_ {
    let n = oracle.n();
    (0..n).flat_map(move |u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(move |&(u, v)| in_band(oracle.dist(u, v), r))
}

/// Vertex sets (ascending) of the canonical paths of all pairs with distance
/// in `(r, 2r]`, deduplicated and sorted.
pub fn scale_paths(oracle: &DistanceOracle, r: Dist) -> Vec<Vec<usize>> {
    let mut paths: Vec<Vec<usize>> = band_pairs(oracle, r)
        .map(|(u, v)| {
            let mut p = oracle
                .canonical_path(u, v)
                .expect("pairs in the band are connected");
            p.sort_unstable();
            p
        })
        .collect();
    paths.sort();
    paths.dedup();
    paths
}

/// `max_v |B_v(2r) ∩ hubs|`; zero for an empty hub set.
pub fn local_sparsity(oracle: &DistanceOracle, hubs: &[usize], r: Dist) -> usize {
    let reach = r.saturating_mul(2);
    (0..oracle.n())
        .map(|v| hubs.iter().filter(|&&h| oracle.dist(v, h) <= reach).count())
        .max()
        .unwrap_or(0)
}

/// Greedy hitting set for [`scale_paths`]: repeatedly take the vertex lying
/// on the most unhit paths, lowest id on ties.
pub fn compute_spc(oracle: &DistanceOracle, r: Dist) -> ShortestPathCover {
    let covered_paths = band_pairs(oracle, r).count();
    let paths = scale_paths(oracle, r);
    let n = oracle.n();
    let mut alive = vec![true; paths.len()];
    let mut remaining = paths.len();
    let mut hubs = Vec::new();
    while remaining > 0 {
        let mut count = vec![0usize; n];
        for (p, _) in paths.iter().zip(&alive).filter(|(_, &a)| a) {
            for &v in p {
                count[v] += 1;
            }
        }
        let best = (0..n)
            .max_by_key(|&v| (count[v], std::cmp::Reverse(v)))
            .expect("n >= 1");
        hubs.push(best);
        for (p, a) in paths.iter().zip(alive.iter_mut()) {
            if *a && p.binary_search(&best).is_ok() {
                *a = false;
                remaining -= 1;
            }
        }
    }
    hubs.sort_unstable();
    let sparsity = local_sparsity(oracle, &hubs, r);
    ShortestPathCover {
        scale: r,
        hubs,
        covered_paths,
        sparsity,
    }
}

/// Whether `hubs` hits every canonical path at scale `r`.
pub fn is_valid_cover(oracle: &DistanceOracle, r: Dist, hubs: &[usize]) -> bool {
    band_pairs(oracle, r).all(|(u, v)| {
        oracle
            .canonical_path(u, v)
            .expect("pairs in the band are connected")
            .iter()
            .any(|x| hubs.contains(x))
    })
}

impl ShortestPathCover {
    pub fn is_valid(&self, oracle: &DistanceOracle) -> bool {
        is_valid_cover(oracle, self.scale, &self.hubs)
            && self.sparsity == local_sparsity(oracle, &self.hubs, self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::all_pairs;
    use crate::graph::Graph;

    #[test]
    fn single_edge_band() {
        // one edge of length 1.0 with scale 0.6, in tenths
        let g = Graph::from_scaled(2, [(0, 1, 10)], 10).unwrap();
        let o = all_pairs(&g);
        assert_eq!(scale_paths(&o, 6), vec![vec![0, 1]]);
        assert!(scale_paths(&o, 20).is_empty());
    }

    #[test]
    fn path_of_three_at_unit_scale() {
        let g = Graph::unit_lengths(3, &[(0, 1), (1, 2)]).unwrap();
        let o = all_pairs(&g);
        assert_eq!(scale_paths(&o, 1), vec![vec![0, 1, 2]]);
        let spc = compute_spc(&o, 1);
        assert_eq!(spc.hubs, vec![0]);
        assert_eq!(spc.covered_paths, 1);
        assert!(spc.is_valid(&o));
    }

    #[test]
    fn empty_band_gives_empty_cover() {
        let g = Graph::unit_lengths(2, &[(0, 1)]).unwrap();
        let o = all_pairs(&g);
        let spc = compute_spc(&o, 5);
        assert!(spc.hubs.is_empty());
        assert_eq!(spc.sparsity, 0);
        assert_eq!(spc.covered_paths, 0);
    }

    #[test]
    fn zero_scale_has_no_paths() {
        let g = Graph::unit_lengths(3, &[(0, 1), (1, 2)]).unwrap();
        let o = all_pairs(&g);
        assert!(compute_spc(&o, 0).hubs.is_empty());
    }

    #[test]
    fn sparsity_counts() {
        let g = Graph::unit_lengths(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let o = all_pairs(&g);
        assert_eq!(local_sparsity(&o, &[], 1), 0);
        assert_eq!(local_sparsity(&o, &[2], 0), 1);
        assert_eq!(local_sparsity(&o, &[0, 3], 1), 2);
        assert_eq!(local_sparsity(&o, &[0, 3], 0), 1);
    }

    #[test]
    fn invalid_cover_detected() {
        let g = Graph::unit_lengths(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let o = all_pairs(&g);
        // band (1,2]: pairs (0,2) and (1,3)
        assert!(!is_valid_cover(&o, 1, &[0]));
        assert!(is_valid_cover(&o, 1, &[1]));
        assert!(is_valid_cover(&o, 1, &[0, 3]));
    }
}
