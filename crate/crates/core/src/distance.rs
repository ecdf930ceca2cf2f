//! All-pairs distances and canonical shortest paths.
//!
//! Shortest paths are made unique without perturbing lengths: between `u` and
//! `v` the canonical path is the minimum-length path whose vertex sequence,
//! read from `min(u, v)` to `max(u, v)`, is lexicographically smallest.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::graph::{Dist, Graph, INF};

const NO_HOP: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("vertices {u} and {v} are in different components")]
    Disconnected { u: usize, v: usize },
}

#[derive(Debug, Clone)]
pub struct DistanceOracle {
    n: usize,
    unit: u64,
    dist: Vec<Dist>,
    // next_hop[a * n + b]: smallest-id neighbour of `a` on a shortest a→b path
    next_hop: Vec<u32>,
}

/// Exact all-pairs distances (one Dijkstra per source) plus the next-hop
/// table that defines canonical paths.
pub fn all_pairs(graph: &Graph) -> DistanceOracle {
    let n = graph.n();
    let mut dist = vec![INF; n * n];
    let mut heap = BinaryHeap::new();
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        heap.push(Reverse((0, s)));
        while let Some(Reverse((d, x))) = heap.pop() {
            if d > row[x] {
                continue;
            }
            for &(y, len) in graph.neighbors(x) {
                let nd = d + len;
                if nd < row[y] {
                    row[y] = nd;
                    heap.push(Reverse((nd, y)));
                }
            }
        }
    }
    let mut next_hop = vec![NO_HOP; n * n];
    for a in 0..n {
        for b in 0..n {
            let dab = dist[a * n + b];
            if a == b || dab == INF {
                continue;
            }
            // neighbours are sorted by id, so the first match is the smallest
            for &(y, len) in graph.neighbors(a) {
                if len + dist[y * n + b] == dab {
                    next_hop[a * n + b] = y as u32;
                    break;
                }
            }
        }
    }
    DistanceOracle {
        n,
        unit: graph.unit(),
        dist,
        next_hop,
    }
}

impl DistanceOracle {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Denominator of the stored distances (see [`Graph::unit`]).
    pub fn unit(&self) -> u64 {
        self.unit
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> Dist {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Dist] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn connected(&self, u: usize, v: usize) -> bool {
        self.dist(u, v) != INF
    }

    /// The same metric with every distance doubled, so that half of any
    /// original distance is an integer. Canonical paths are unchanged.
    pub fn doubled(&self) -> Self {
        Self {
            n: self.n,
            unit: self.unit * 2,
            dist: self
                .dist
                .iter()
                .map(|&d| if d == INF { INF } else { d * 2 })
                .collect(),
            next_hop: self.next_hop.clone(),
        }
    }

    /// The canonical shortest path from `u` to `v`, starting at `u`.
    pub fn canonical_path(&self, u: usize, v: usize) -> Result<Vec<usize>, DistanceError> {
        if !self.connected(u, v) {
            return Err(DistanceError::Disconnected { u, v });
        }
        let (a, b) = (u.min(v), u.max(v));
        let mut path = vec![a];
        let mut x = a;
        while x != b {
            x = self.next_hop[x * self.n + b] as usize;
            path.push(x);
        }
        if u > v {
            path.reverse();
        }
        Ok(path)
    }

    /// Closed ball `{w : dist(v, w) <= r}`, ascending.
    pub fn ball(&self, v: usize, r: Dist) -> Vec<usize> {
        (0..self.n).filter(|&w| self.dist(v, w) <= r).collect()
    }

    /// `min_{s in set} dist(v, s)`, or [`INF`] for an empty set.
    pub fn dist_to_set(&self, v: usize, set: &[usize]) -> Dist {
        set.iter().map(|&s| self.dist(v, s)).min().unwrap_or(INF)
    }

    /// Covering radius of a center set: the largest distance from any vertex
    /// to its nearest center ([`INF`] if some vertex is unreachable).
    pub fn covering_radius(&self, centers: &[usize]) -> Dist {
        (0..self.n)
            .map(|v| self.dist_to_set(v, centers))
            .max()
            .unwrap_or(0)
    }

    /// Sorted distinct finite distances, including zero.
    pub fn distinct_distances(&self) -> Vec<Dist> {
        let mut all: Vec<Dist> = self.dist.iter().copied().filter(|&d| d != INF).collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_concatenates() {
        let g = Graph::unit_lengths(3, &[(0, 1), (1, 2)]).unwrap();
        let o = all_pairs(&g);
        assert_eq!(o.dist(0, 2), 2);
        assert_eq!(o.canonical_path(0, 2).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn isolated_vertices_are_infinite() {
        let g = Graph::from_scaled(2, [], 1).unwrap();
        let o = all_pairs(&g);
        assert_eq!(o.dist(0, 1), INF);
        assert_eq!(
            o.canonical_path(0, 1),
            Err(DistanceError::Disconnected { u: 0, v: 1 })
        );
        assert_eq!(o.distinct_distances(), vec![0]);
    }

    #[test]
    fn cycle_tie_breaks_lexicographically() {
        let g = Graph::unit_lengths(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let o = all_pairs(&g);
        assert_eq!(o.canonical_path(0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(o.canonical_path(2, 0).unwrap(), vec![2, 1, 0]);
        assert_eq!(o.canonical_path(1, 3).unwrap(), vec![1, 0, 3]);
    }

    #[test]
    fn triangle_distances() {
        let g = Graph::unit_lengths(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let o = all_pairs(&g);
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(o.dist(u, v), u64::from(u != v));
            }
        }
    }

    #[test]
    fn balls() {
        let star = Graph::unit_lengths(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let o = all_pairs(&star);
        assert_eq!(o.ball(3, 0), vec![3]);
        assert_eq!(o.ball(0, 1), vec![0, 1, 2, 3, 4]);
        assert_eq!(o.ball(3, 1), vec![0, 3]);
        assert_eq!(o.covering_radius(&[0]), 1);
        assert_eq!(o.covering_radius(&[1]), 2);
    }

    #[test]
    fn doubling_keeps_paths() {
        let g = Graph::unit_lengths(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let o = all_pairs(&g).doubled();
        assert_eq!(o.dist(0, 2), 4);
        assert_eq!(o.unit(), 2);
        assert_eq!(o.canonical_path(0, 2).unwrap(), vec![0, 1, 2]);
    }
}
