//! Weighted k-Center and partitioning into bounded-radius parts.

use serde::Serialize;

use crate::distance::all_pairs;
use crate::graph::{Dist, Graph};
use crate::solver::{
    solve_fpa, solve_weighted_exact, solve_weighted_fpa, FpaOptions, Solution, SolveError,
};

/// A graph with positive vertex weights and a total weight budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedInstance {
    pub graph: Graph,
    pub weights: Vec<u64>,
    pub budget: u64,
}

impl WeightedInstance {
    pub fn new(graph: Graph, weights: Vec<u64>, budget: u64) -> Result<Self, SolveError> {
        if weights.len() != graph.n() {
            return Err(SolveError::WeightCount {
                got: weights.len(),
                n: graph.n(),
            });
        }
        if let Some(v) = weights.iter().position(|&w| w == 0) {
            return Err(SolveError::ZeroWeight(v));
        }
        Ok(Self {
            graph,
            weights,
            budget,
        })
    }

    pub fn solve_fpa(&self, options: &FpaOptions) -> Result<Solution, SolveError> {
        solve_weighted_fpa(&self.graph, &self.weights, self.budget, options)
    }

    pub fn solve_exact(&self) -> Result<Solution, SolveError> {
        solve_weighted_exact(&self.graph, &self.weights, self.budget)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionSolution {
    /// Disjoint parts covering all vertices, each ascending, ordered by center.
    pub parts: Vec<Vec<usize>>,
    /// Largest distance between two vertices of the same part.
    pub bottleneck: Dist,
    pub delta: u64,
    /// The k-Center solution the parts were cut from.
    pub kcenter: Solution,
}

impl PartitionSolution {
    /// `3 * delta * bound` for an optimum (or lower bound) `bound`.
    pub fn guarantee(&self, bound: Dist) -> Dist {
        3 * self.delta * bound
    }
}

/// Partition into at most `k` parts of small diameter: solve k-Center with
/// the approximation and split the vertices into nearest-center cells.
pub fn solve_partition(
    graph: &Graph,
    k: u64,
    delta: u64,
    options: &FpaOptions,
) -> Result<PartitionSolution, SolveError> {
    if delta == 0 {
        return Err(SolveError::ZeroDelta);
    }
    let kcenter = solve_fpa(graph, k, options)?;
    let oracle = all_pairs(graph);
    let mut parts = vec![Vec::new(); kcenter.centers.len()];
    for v in 0..graph.n() {
        let cell = (0..kcenter.centers.len())
            .min_by_key(|&i| (oracle.dist(v, kcenter.centers[i]), kcenter.centers[i]))
            .expect("at least one center");
        parts[cell].push(v);
    }
    parts.retain(|p| !p.is_empty());
    let bottleneck = parts
        .iter()
        .flat_map(|p| p.iter().flat_map(|&u| p.iter().map(move |&w| (u, w))))
        .map(|(u, w)| oracle.dist(u, w))
        .max()
        .unwrap_or(0);
    Ok(PartitionSolution {
        parts,
        bottleneck,
        delta,
        kcenter,
    })
}
