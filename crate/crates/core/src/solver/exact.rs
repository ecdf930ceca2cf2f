use super::fpa::{check_budget, Budget};
use super::{Algorithm, Solution, SolveError};
use crate::distance::{all_pairs, DistanceOracle};
use crate::graph::{Dist, Graph};
use crate::setcover::{build_table, CoverSet, SetSystem, MAX_TABLE_CAP};

/// Default vertex limit for the exact solvers.
pub const DEFAULT_EXACT_CAP: usize = 18;

/// Optimal k-Center by set cover over the vertex set, for `n <= 18`.
pub fn solve_exact(graph: &Graph, k: u64) -> Result<Solution, SolveError> {
    solve_exact_capped(graph, k, DEFAULT_EXACT_CAP)
}

pub fn solve_exact_capped(graph: &Graph, k: u64, cap: usize) -> Result<Solution, SolveError> {
    optimum(graph, Budget::Count(k), cap, Algorithm::Exact)
}

/// Optimal weighted k-Center: minimum radius whose balls can be centered on
/// vertices of total weight at most `budget`.
pub fn solve_weighted_exact(
    graph: &Graph,
    weights: &[u64],
    budget: u64,
) -> Result<Solution, SolveError> {
    optimum(
        graph,
        Budget::Weight {
            weights,
            limit: budget,
        },
        DEFAULT_EXACT_CAP,
        Algorithm::WeightedExact,
    )
}

/// Cheapest centers covering everything within `radius`, if within budget.
fn cover_at(oracle: &DistanceOracle, budget: Budget, radius: Dist) -> Option<Vec<usize>> {
    let n = oracle.n();
    let sets = (0..n)
        .map(|v| CoverSet {
            mask: oracle
                .row(v)
                .iter()
                .enumerate()
                .filter(|&(_, &d)| d <= radius)
                .fold(0u32, |m, (w, _)| m | 1 << w),
            owner: v,
            weight: match budget {
                Budget::Count(_) => 1,
                Budget::Weight { weights, .. } => weights[v],
            },
        })
        .collect();
    let system = SetSystem::from_masks((0..n).collect(), sets, MAX_TABLE_CAP)
        .expect("vertex count is capped below the table limit");
    let table = build_table(&system);
    let best = table.lookup_mask(table.full_mask())?;
    let limit = match budget {
        Budget::Count(k) => k,
        Budget::Weight { limit, .. } => limit,
    };
    (best.weight <= limit).then(|| {
        let mut owners = best.owners;
        owners.sort_unstable();
        owners
    })
}

fn optimum(
    graph: &Graph,
    budget: Budget,
    cap: usize,
    algorithm: Algorithm,
) -> Result<Solution, SolveError> {
    let n = graph.n();
    let cap = cap.min(MAX_TABLE_CAP);
    if n > cap {
        return Err(SolveError::ExactCapExceeded { n, cap });
    }
    check_budget(graph, budget)?;
    let oracle = all_pairs(graph);
    let radii = oracle.distinct_distances();
    // coverability is monotone in the radius; the largest one always works
    let (mut lo, mut hi) = (0, radii.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if cover_at(&oracle, budget, radii[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let centers = cover_at(&oracle, budget, radii[lo]).expect("largest radius is feasible");
    Ok(Solution {
        algorithm,
        cost: oracle.covering_radius(&centers),
        centers,
        unit: graph.unit(),
        fpa: None,
    })
}
