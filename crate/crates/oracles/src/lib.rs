//! Brute-force reference implementations.
//!
//! Everything here works on raw vertex counts, edge lists and distance
//! matrices so that it shares no code path with `kcenter-core`. The functions
//! are exponential and only meant for instances with a dozen or so vertices.

/// Shortest-path distances by relaxation to a fixpoint (Floyd–Warshall).
/// `None` marks disconnected pairs.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize, u64)]) -> Vec<Vec<Option<u64>>> {
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for &(u, v, w) in edges {
        let cur = d[u][v];
        if cur.map_or(true, |c| w < c) {
            d[u][v] = Some(w);
            d[v][u] = Some(w);
        }
    }
    for m in 0..n {
        for i in 0..n {
            let Some(im) = d[i][m] else { continue };
            for j in 0..n {
                let Some(mj) = d[m][j] else { continue };
                let cand = im + mj;
                if d[i][j].map_or(true, |c| cand < c) {
                    d[i][j] = Some(cand);
                }
            }
        }
    }
    d
}

/// Minimum total weight of a subcollection of `sets` (given as bitmasks)
/// whose union contains `target`, found by enumerating every subcollection.
pub fn min_set_cover_weight(sets: &[(u64, u64)], target: u64) -> Option<u64> {
    assert!(sets.len() <= 20, "brute force over 2^{} subcollections", sets.len());
    let mut best: Option<u64> = None;
    for pick in 0u64..(1u64 << sets.len()) {
        let mut union = 0u64;
        let mut weight = 0u64;
        for (j, &(mask, w)) in sets.iter().enumerate() {
            if pick >> j & 1 == 1 {
                union |= mask;
                weight += w;
            }
        }
        if union & target == target && best.map_or(true, |b| weight < b) {
            best = Some(weight);
        }
    }
    best
}

fn closed_neighbourhoods(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
    assert!(n <= 63);
    let mut nb: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    for &(u, v) in edges {
        nb[u] |= 1 << v;
        nb[v] |= 1 << u;
    }
    nb
}

/// Whether `set` dominates every vertex of the graph.
pub fn is_dominating_set(n: usize, edges: &[(usize, usize)], set: &[usize]) -> bool {
    let nb = closed_neighbourhoods(n, edges);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    set.iter().fold(0u64, |acc, &v| acc | nb[v]) == full
}

/// Size of a minimum dominating set, by enumerating all vertex subsets.
pub fn min_dominating_set_size(n: usize, edges: &[(usize, usize)]) -> usize {
    let nb = closed_neighbourhoods(n, edges);
    let full = (1u64 << n) - 1;
    let mut best = n;
    for s in 0u64..(1u64 << n) {
        let size = s.count_ones() as usize;
        if size >= best {
            continue;
        }
        let mut dom = 0u64;
        for (v, &mask) in nb.iter().enumerate() {
            if s >> v & 1 == 1 {
                dom |= mask;
            }
        }
        if dom == full {
            best = size;
        }
    }
    best
}

/// Whether a dominating set of at most `k` vertices exists.
pub fn has_dominating_set(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    min_dominating_set_size(n, edges) <= k
}

fn radius(dist: &[Vec<Option<u64>>], centers: &[usize]) -> Option<u64> {
    let mut worst = 0u64;
    for row_v in 0..dist.len() {
        let near = centers.iter().filter_map(|&c| dist[c][row_v]).min()?;
        worst = worst.max(near);
    }
    Some(worst)
}

fn for_each_subset_of_size(n: usize, size: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if left == 0 {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < left {
                break;
            }
            cur.push(v);
            rec(v + 1, n, left - 1, cur, f);
            cur.pop();
        }
    }
    rec(0, n, size, &mut Vec::new(), &mut f);
}

/// Optimal k-Center cost over all center sets of size `min(k, n)`.
/// `None` when no center set reaches every vertex.
pub fn kcenter_cost(dist: &[Vec<Option<u64>>], k: usize) -> Option<u64> {
    let n = dist.len();
    let mut best: Option<u64> = None;
    for_each_subset_of_size(n, k.min(n), |c| {
        if let Some(r) = radius(dist, c) {
            if best.map_or(true, |b| r < b) {
                best = Some(r);
            }
        }
    });
    best
}

/// Optimal weighted k-Center cost over every center set whose weight is at
/// most `budget`.
pub fn weighted_kcenter_cost(
    dist: &[Vec<Option<u64>>],
    weights: &[u64],
    budget: u64,
) -> Option<u64> {
    let n = dist.len();
    assert!(n <= 20);
    let mut best: Option<u64> = None;
    for s in 1u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let w: u64 = members.iter().map(|&v| weights[v]).sum();
        if w > budget {
            continue;
        }
        if let Some(r) = radius(dist, &members) {
            if best.map_or(true, |b| r < b) {
                best = Some(r);
            }
        }
    }
    best
}

/// Minimum hitting set size for a family of vertex sets over `n` vertices.
pub fn min_hitting_set_size(n: usize, family: &[Vec<usize>]) -> usize {
    assert!(n <= 24);
    let masks: Vec<u32> = family
        .iter()
        .map(|s| s.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    let mut best = n;
    for s in 0u32..(1u32 << n) {
        let size = s.count_ones() as usize;
        if size < best && masks.iter().all(|&m| m & s != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_distances() {
        let d = floyd_warshall(3, &[(0, 1, 1), (1, 2, 2)]);
        assert_eq!(d[0][2], Some(3));
    }

    #[test]
    fn five_cycle_needs_two_dominators() {
        let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        assert_eq!(min_dominating_set_size(5, &c5), 2);
    }

    #[test]
    fn four_cycle_two_centers() {
        let d = floyd_warshall(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        assert_eq!(kcenter_cost(&d, 2), Some(1));
        assert_eq!(kcenter_cost(&d, 1), Some(2));
    }
}
