//! Clusters of vertices far from every hub.
//!
//! Given a valid cover for scale `r`, the vertices at distance more than `r`
//! from all hubs split into clusters of diameter at most `r` that are pairwise
//! more than `2r` apart. Everything else is within `r` of a hub.

use serde::Serialize;
use thiserror::Error;

use crate::distance::DistanceOracle;
use crate::graph::Dist;
use crate::spc::ShortestPathCover;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("cluster vertices {u} and {w} are {dist} apart, more than the scale {r}")]
    DiameterExceeded { u: usize, w: usize, dist: Dist, r: Dist },
    #[error("vertices {u} and {w} of different clusters are only {dist} apart (scale {r})")]
    ClustersTooClose { u: usize, w: usize, dist: Dist, r: Dist },
    #[error("non-cluster vertex {v} is farther than the scale {r} from every hub")]
    StrayVertex { v: usize, r: Dist },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ClusterSet {
    /// Disjoint clusters, each ascending, ordered by smallest member.
    pub clusters: Vec<Vec<usize>>,
    /// Vertices within the scale of some hub, ascending.
    pub non_cluster: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Group the far-from-hub vertices by the relation "distance at most r"
/// and verify the cluster structure before returning it. A violation means
/// the cover was not valid for its scale.
pub fn compute_clusters(
    oracle: &DistanceOracle,
    spc: &ShortestPathCover,
) -> Result<ClusterSet, ClusterError> {
    let r = spc.scale;
    let n = oracle.n();
    let (far, non_cluster): (Vec<usize>, Vec<usize>) =
        (0..n).partition(|&v| oracle.dist_to_set(v, &spc.hubs) > r);

    let mut parent: Vec<usize> = (0..n).collect();
    for (i, &u) in far.iter().enumerate() {
        for &w in &far[i + 1..] {
            if oracle.dist(u, w) <= r {
                let (a, b) = (find(&mut parent, u), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for &v in &far {
        let root = find(&mut parent, v);
        if slot[root] == usize::MAX {
            slot[root] = clusters.len();
            clusters.push(Vec::new());
        }
        clusters[slot[root]].push(v);
    }
    let set = ClusterSet {
        clusters,
        non_cluster,
    };
    verify_clusters(oracle, &spc.hubs, r, &set)?;
    Ok(set)
}

/// Exhaustively re-check the cluster properties for scale `r`.
pub fn verify_clusters(
    oracle: &DistanceOracle,
    hubs: &[usize],
    r: Dist,
    set: &ClusterSet,
) -> Result<(), ClusterError> {
    for &v in &set.non_cluster {
        if oracle.dist_to_set(v, hubs) > r {
            return Err(ClusterError::StrayVertex { v, r });
        }
    }
    for cluster in &set.clusters {
        for &u in cluster {
            if oracle.dist_to_set(u, hubs) <= r {
                return Err(ClusterError::StrayVertex { v: u, r });
            }
            for &w in cluster {
                let d = oracle.dist(u, w);
                if d > r {
                    return Err(ClusterError::DiameterExceeded { u, w, dist: d, r });
                }
            }
        }
    }
    let two_r = r.saturating_mul(2);
    for (i, a) in set.clusters.iter().enumerate() {
        for b in &set.clusters[i + 1..] {
            for &u in a {
                for &w in b {
                    let d = oracle.dist(u, w);
                    if d <= two_r {
                        return Err(ClusterError::ClustersTooClose { u, w, dist: d, r });
                    }
                }
            }
        }
    }
    Ok(())
}

impl ClusterSet {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// All cluster vertices, ascending.
    pub fn cluster_vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.clusters.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::all_pairs;
    use crate::graph::Graph;
    use crate::spc::compute_spc;

    #[test]
    fn everything_near_a_hub() {
        let g = Graph::unit_lengths(3, &[(0, 1), (1, 2)]).unwrap();
        let o = all_pairs(&g);
        let spc = ShortestPathCover {
            scale: 1,
            hubs: vec![1],
            covered_paths: 1,
            sparsity: 1,
        };
        let c = compute_clusters(&o, &spc).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.non_cluster, vec![0, 1, 2]);
    }

    #[test]
    fn star_at_small_scale_is_all_singletons() {
        // unit spokes in tenths, scale 0.4
        let g = Graph::from_scaled(5, (1..5).map(|l| (0, l, 10)), 10).unwrap();
        let o = all_pairs(&g);
        let spc = compute_spc(&o, 4);
        assert!(spc.hubs.is_empty());
        let c = compute_clusters(&o, &spc).unwrap();
        assert_eq!(c.clusters, (0..5).map(|v| vec![v]).collect::<Vec<_>>());
        assert!(c.non_cluster.is_empty());
    }

    #[test]
    fn invalid_cover_is_rejected() {
        // path 0-1-2-3, scale 1: pairs (0,2),(1,3) in band; hub {0} misses (1,3)
        let g = Graph::unit_lengths(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let o = all_pairs(&g);
        let bogus = ShortestPathCover {
            scale: 1,
            hubs: vec![0],
            covered_paths: 2,
            sparsity: 1,
        };
        // hub {0} misses the path of (1,3) but its far vertices {2,3} still
        // form a legal cluster; with no hubs at all, 0..3 chain into one
        // cluster of diameter 3
        assert!(compute_clusters(&o, &bogus).is_ok());
        let empty = ShortestPathCover {
            scale: 1,
            hubs: vec![],
            covered_paths: 2,
            sparsity: 0,
        };
        assert!(matches!(
            compute_clusters(&o, &empty),
            Err(ClusterError::DiameterExceeded { .. })
        ));
    }

    #[test]
    fn two_clumps_separate() {
        // two unit triangles joined by a long edge
        let g = Graph::from_scaled(
            6,
            [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1), (2, 3, 10)],
            1,
        )
        .unwrap();
        let o = all_pairs(&g);
        let spc = compute_spc(&o, 1);
        assert!(spc.hubs.is_empty());
        let c = compute_clusters(&o, &spc).unwrap();
        assert_eq!(c.clusters, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }
}
