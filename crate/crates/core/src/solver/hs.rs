use super::fpa::{check_budget, Budget};
use super::{Algorithm, Solution, SolveError};
use crate::distance::all_pairs;
use crate::graph::Graph;

/// Threshold 2-approximation. For each candidate radius ascending, the
/// lowest-id uncovered vertex repeatedly becomes a center and removes
/// everything within twice the radius; the first radius needing at most `k`
/// centers wins.
pub fn solve_hs(graph: &Graph, k: u64) -> Result<Solution, SolveError> {
    check_budget(graph, Budget::Count(k))?;
    let oracle = all_pairs(graph);
    let n = graph.n();
    for radius in oracle.distinct_distances() {
        let reach = radius * 2;
        let mut covered = vec![false; n];
        let mut centers = Vec::new();
        for v in 0..n {
            if covered[v] {
                continue;
            }
            centers.push(v);
            if centers.len() as u64 > k {
                break;
            }
            for (w, &d) in oracle.row(v).iter().enumerate() {
                if d <= reach {
                    covered[w] = true;
                }
            }
        }
        if centers.len() as u64 <= k {
            return Ok(Solution {
                algorithm: Algorithm::Hs,
                cost: oracle.covering_radius(&centers),
                centers,
                unit: graph.unit(),
                fpa: None,
            });
        }
    }
    unreachable!("the largest distance is accepted once components fit in k")
}
