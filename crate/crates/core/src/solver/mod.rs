//! k-Center solvers: the hub-guessing 3/2-approximation, the classical
//! threshold 2-approximation and an exact set-cover based oracle.

mod exact;
mod fpa;
mod hs;

use std::fmt;
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::cluster::ClusterError;
use crate::graph::{format_decimal, Dist};
use crate::setcover::SetCoverError;

pub use exact::{solve_exact, solve_exact_capped, solve_weighted_exact, DEFAULT_EXACT_CAP};
pub use fpa::{solve_fpa, solve_weighted_fpa};
pub use hs::solve_hs;

/// Default largest hub set whose `3^h` assignments are enumerated.
pub const DEFAULT_HUB_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("k must be at least 1")]
    ZeroBudget,
    #[error("delta must be at least 1")]
    ZeroDelta,
    #[error("graph has {components} components but only {k} centers are allowed")]
    Infeasible { components: usize, k: u64 },
    #[error("no center set within weight budget {budget} reaches every component")]
    Unaffordable { budget: u64 },
    #[error("weights cover {got} vertices, graph has {n}")]
    WeightCount { got: usize, n: usize },
    #[error("vertex weights must be positive (vertex {0})")]
    ZeroWeight(usize),
    #[error("search budget exceeded: {reason}")]
    BudgetExceeded { reason: String },
    #[error("exact solver limited to {cap} vertices, graph has {n}")]
    ExactCapExceeded { n: usize, cap: usize },
    #[error("no scale produced a feasible center set")]
    NoFeasibleScale,
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Table(#[from] SetCoverError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Fpa,
    Hs,
    Exact,
    WeightedFpa,
    WeightedExact,
    /// FPA ran out of budget and the threshold 2-approximation answered.
    Fallback,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Fpa => "fpa",
            Algorithm::Hs => "hs",
            Algorithm::Exact => "exact",
            Algorithm::WeightedFpa => "weighted-fpa",
            Algorithm::WeightedExact => "weighted-exact",
            Algorithm::Fallback => "fallback",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpaOptions {
    /// Largest hub set that is enumerated; bigger unskipped scales are pruned.
    pub hub_cap: usize,
    /// Answer with the threshold 2-approximation instead of failing when the
    /// search is pruned or times out (unweighted only).
    pub fallback: bool,
    /// Worker threads for the guess enumeration. Results do not depend on it.
    pub threads: usize,
    pub time_budget: Option<Duration>,
}

impl Default for FpaOptions {
    fn default() -> Self {
        Self {
            hub_cap: DEFAULT_HUB_CAP,
            fallback: false,
            threads: 1,
            time_budget: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaleStatus {
    /// More hubs than `k` times the measured sparsity.
    Skipped,
    /// Hub set larger than the enumeration cap.
    OverCap,
    /// Every assignment was evaluated and none was feasible.
    Rejected,
    Accepted,
    TimedOut,
}

/// What happened at one candidate scale.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaleRecord {
    /// Scale `r` in half units of the graph (`unit * 2`).
    pub r: Dist,
    pub hubs: usize,
    pub sparsity: usize,
    pub clusters: usize,
    pub status: ScaleStatus,
    /// Hub assignments evaluated; `3^hubs` whenever the scale was searched.
    pub evaluations: u64,
}

/// The accepted guess and the center sets it produced. Vertex sets ascending;
/// regions are unions of balls of the covering radius (`3r`, or `4r` for the
/// weighted variant) around the respective center set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FpaTrace {
    /// Scale `r` in half units of the graph.
    pub r: Dist,
    pub cover_radius: Dist,
    pub hubs: Vec<usize>,
    pub h: Vec<usize>,
    pub h_prime: Vec<usize>,
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    pub c3: Vec<usize>,
    pub r1: Vec<usize>,
    pub r2: Vec<usize>,
    pub r3: Vec<usize>,
    /// Ternary counter of the assignment (hub `i` is digit `i`: 0 none,
    /// 1 in H, 2 in H').
    pub counter: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FpaRun {
    pub scales: Vec<ScaleRecord>,
    pub trace: Option<FpaTrace>,
    /// Some scale at or below the accepted one was over the hub cap.
    pub pruned: bool,
    pub evaluations: u64,
}

impl FpaRun {
    pub fn accepted(&self) -> Option<&ScaleRecord> {
        self.scales.iter().find(|s| s.status == ScaleStatus::Accepted)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub algorithm: Algorithm,
    /// Centers, ascending.
    pub centers: Vec<usize>,
    /// Achieved covering radius, in graph units.
    pub cost: Dist,
    /// Denominator of `cost` (the graph's unit).
    pub unit: u64,
    pub fpa: Option<FpaRun>,
}

impl Solution {
    pub fn cost_decimal(&self) -> String {
        format_decimal(self.cost, self.unit)
    }

    pub fn weight(&self, weights: &[u64]) -> u64 {
        self.centers.iter().map(|&c| weights[c]).sum()
    }
}
