//! k-Center on graphs of low highway dimension.
//!
//! Graphs carry exact integer lengths ([`graph`]); all-pairs distances and
//! canonical shortest paths come from [`distance`]. The approximation in
//! [`solver`] scans candidate scales, builds a shortest path cover
//! ([`spc`]) and its clusters ([`cluster`]) at each one, and guesses how the
//! hubs relate to an optimal solution, closing the gap with an exact set
//! cover table ([`setcover`]).

pub mod cluster;
pub mod distance;
pub mod graph;
pub mod io;
pub mod lab;
pub mod setcover;
pub mod solver;
pub mod spc;
pub mod variants;

pub use cluster::{compute_clusters, verify_clusters, ClusterError, ClusterSet};
pub use distance::{all_pairs, DistanceError, DistanceOracle};
pub use graph::{build_graph, format_decimal, DecimalLength, Dist, Edge, Graph, GraphError, INF};
pub use setcover::{build_table, dominating_set_via_vc, CoverTable, SetCoverError, SetSystem};
pub use solver::{
    solve_exact, solve_fpa, solve_hs, Algorithm, FpaOptions, FpaRun, FpaTrace, ScaleRecord,
    ScaleStatus, Solution, SolveError,
};
pub use spc::{compute_spc, ShortestPathCover};
pub use variants::{solve_partition, PartitionSolution, WeightedInstance};
