//! Hub-guessing search shared by the unweighted and weighted solvers.
//!
//! Scales are the halves of the pairwise distances, ascending. All work
//! happens on the doubled metric so every scale is an integer. At each scale
//! every hub is assigned to H, H' or neither; an assignment is encoded as a
//! ternary counter (hub `i` is digit `i`) and the lowest feasible counter is
//! accepted.

use std::time::Instant;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::{
    Algorithm, FpaOptions, FpaRun, FpaTrace, ScaleRecord, ScaleStatus, Solution, SolveError,
};
use crate::cluster::{compute_clusters, ClusterSet};
use crate::distance::{all_pairs, DistanceOracle};
use crate::graph::{Dist, Graph};
use crate::setcover::{build_table, CoverSet, CoverTable, SetSystem, MAX_TABLE_CAP};
use crate::spc::compute_spc;

/// What limits the center set.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Budget<'a> {
    Count(u64),
    Weight { weights: &'a [u64], limit: u64 },
}

impl Budget<'_> {
    fn limit(&self) -> u64 {
        match *self {
            Budget::Count(k) => k,
            Budget::Weight { limit, .. } => limit,
        }
    }

    fn weighted(&self) -> bool {
        matches!(self, Budget::Weight { .. })
    }

    fn cost_of(&self, v: usize) -> u64 {
        match *self {
            Budget::Count(_) => 1,
            Budget::Weight { weights, .. } => weights[v],
        }
    }

    /// Lowest-cost vertex of `candidates` (ascending), lowest id on ties.
    fn cheapest(&self, candidates: impl IntoIterator<Item = usize>) -> usize {
        candidates
            .into_iter()
            .min_by_key(|&v| (self.cost_of(v), v))
            .expect("candidate sets are non-empty")
    }
}

/// The 3/2-approximation for unweighted k-Center.
pub fn solve_fpa(graph: &Graph, k: u64, options: &FpaOptions) -> Result<Solution, SolveError> {
    scan(graph, Budget::Count(k), options)
}

/// The weighted 2-approximation: centers have weights and their total must
/// stay within `budget`.
pub fn solve_weighted_fpa(
    graph: &Graph,
    weights: &[u64],
    budget: u64,
    options: &FpaOptions,
) -> Result<Solution, SolveError> {
    scan(
        graph,
        Budget::Weight {
            weights,
            limit: budget,
        },
        options,
    )
}

pub(crate) fn check_budget(graph: &Graph, budget: Budget) -> Result<(), SolveError> {
    let components = graph.components();
    let count = components.iter().max().map_or(0, |&c| c + 1);
    match budget {
        Budget::Count(0) => Err(SolveError::ZeroBudget),
        Budget::Count(k) => {
            if count as u64 > k {
                Err(SolveError::Infeasible {
                    components: count,
                    k,
                })
            } else {
                Ok(())
            }
        }
        Budget::Weight { weights, limit } => {
            if weights.len() != graph.n() {
                return Err(SolveError::WeightCount {
                    got: weights.len(),
                    n: graph.n(),
                });
            }
            if let Some(v) = weights.iter().position(|&w| w == 0) {
                return Err(SolveError::ZeroWeight(v));
            }
            let mut cheapest = vec![u64::MAX; count];
            for (v, &c) in components.iter().enumerate() {
                cheapest[c] = cheapest[c].min(weights[v]);
            }
            let need = cheapest.iter().try_fold(0u64, |a, &w| a.checked_add(w));
            match need {
                Some(need) if need <= limit => Ok(()),
                _ => Err(SolveError::Unaffordable { budget: limit }),
            }
        }
    }
}

/// Read-only state for enumerating the assignments of one scale.
struct ScaleSearch<'a> {
    n: usize,
    budget: Budget<'a>,
    /// Doubled scale.
    r: Dist,
    cover_radius: Dist,
    hubs: Vec<usize>,
    /// `B_v(cover_radius)` for every vertex.
    balls: Vec<FixedBitSet>,
    clusters: Vec<FixedBitSet>,
    /// Center taken for each cluster left uncovered by C1.
    cluster_pick: Vec<usize>,
    /// Center taken for each hub placed in H.
    hub_pick: Vec<usize>,
    table: CoverTable,
    powers: Vec<u64>,
    deadline: Option<Instant>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Outcome {
    evaluations: u64,
    /// Lowest feasible (counter, H, H').
    best: Option<(u64, u32, u32)>,
    timed_out: bool,
}

impl Outcome {
    fn merge(self, other: Outcome) -> Outcome {
        let best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Outcome {
            evaluations: self.evaluations + other.evaluations,
            best,
            timed_out: self.timed_out || other.timed_out,
        }
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

impl<'a> ScaleSearch<'a> {
    fn new(
        oracle: &DistanceOracle,
        budget: Budget<'a>,
        r: Dist,
        hubs: Vec<usize>,
        clusters: &ClusterSet,
        deadline: Option<Instant>,
    ) -> Result<Self, SolveError> {
        let n = oracle.n();
        let cover_radius = if budget.weighted() { 4 * r } else { 3 * r };
        let to_set = |members: &[usize]| {
            let mut s = FixedBitSet::with_capacity(n);
            members.iter().for_each(|&v| s.insert(v));
            s
        };
        let balls = (0..n).map(|v| to_set(&oracle.ball(v, cover_radius))).collect();
        let hub_pick = hubs
            .iter()
            .map(|&x| match budget {
                Budget::Count(_) => x,
                Budget::Weight { .. } => budget.cheapest(oracle.ball(x, r)),
            })
            .collect();
        let cluster_pick = clusters
            .clusters
            .iter()
            .map(|c| budget.cheapest(c.iter().copied()))
            .collect();
        let reach = 2 * r;
        let sets = clusters
            .cluster_vertices()
            .into_iter()
            .map(|v| CoverSet {
                mask: hubs
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x)| oracle.dist(v, x) <= reach)
                    .fold(0u32, |m, (i, _)| m | 1 << i),
                owner: v,
                weight: budget.cost_of(v),
            })
            .collect();
        let system = SetSystem::from_masks(hubs.clone(), sets, MAX_TABLE_CAP)?;
        let table = build_table(&system);
        let powers = (0..hubs.len()).map(|i| 3u64.pow(i as u32)).collect();
        Ok(Self {
            n,
            budget,
            r,
            cover_radius,
            hubs,
            balls,
            clusters: clusters.clusters.iter().map(|c| to_set(c)).collect(),
            cluster_pick,
            hub_pick,
            table,
            powers,
            deadline,
        })
    }

    fn full(&self) -> u32 {
        self.table.full_mask()
    }

    fn ternary(&self, mask: u32) -> u64 {
        bits(mask).map(|i| self.powers[i]).sum()
    }

    /// C1 and C2 for a choice of H.
    fn first_centers(&self, h: u32) -> (Vec<usize>, Vec<usize>) {
        let c1: Vec<usize> = bits(h).map(|i| self.hub_pick[i]).collect();
        let mut r1 = FixedBitSet::with_capacity(self.n);
        for &c in &c1 {
            r1.union_with(&self.balls[c]);
        }
        let c2 = self
            .clusters
            .iter()
            .zip(&self.cluster_pick)
            .filter(|(cluster, _)| !cluster.is_subset(&r1))
            .map(|(_, &pick)| pick)
            .collect();
        (c1, c2)
    }

    /// Evaluate every H' for one H.
    fn run_h(&self, h: u32) -> Outcome {
        let rest = self.full() & !h;
        let inner = 1u64 << rest.count_ones();
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Outcome {
                timed_out: true,
                ..Outcome::default()
            };
        }
        let (c1, c2) = self.first_centers(h);
        let mut centers = FixedBitSet::with_capacity(self.n);
        let mut region = FixedBitSet::with_capacity(self.n);
        let mut cost = 0u64;
        for &c in c1.iter().chain(&c2) {
            if !centers.put(c) {
                cost += self.budget.cost_of(c);
                region.union_with(&self.balls[c]);
            }
        }
        let limit = self.budget.limit();
        let done = Outcome {
            evaluations: inner,
            ..Outcome::default()
        };
        if cost > limit {
            return done;
        }
        let base_counter = self.ternary(h);
        let mut best: Option<(u64, u32, u32)> = None;
        let mut seen = centers.clone();
        let mut covered = region.clone();
        // subsets of `rest` in increasing order
        let mut sub = 0u32;
        loop {
            // C3 may overlap C1 and C2, so the table weight is no bound
            if self.table.weight_of(sub).is_some() {
                seen.clone_from(&centers);
                covered.clone_from(&region);
                let mut total = cost;
                for j in self.table.replay(sub) {
                    let owner = self.table.system().sets()[j].owner;
                    if !seen.put(owner) {
                        total += self.budget.cost_of(owner);
                        covered.union_with(&self.balls[owner]);
                    }
                }
                if total <= limit && covered.count_ones(..) == self.n {
                    let counter = base_counter + 2 * self.ternary(sub);
                    if best.map_or(true, |b| counter < b.0) {
                        best = Some((counter, h, sub));
                    }
                }
            }
            if sub == rest {
                break;
            }
            sub = (sub.wrapping_sub(rest)) & rest;
        }
        Outcome { best, ..done }
    }

    fn run(&self, pool: Option<&rayon::ThreadPool>) -> Outcome {
        let count = 1u32 << self.hubs.len();
        match pool {
            None => (0..count)
                .map(|h| self.run_h(h))
                .fold(Outcome::default(), Outcome::merge),
            Some(pool) => pool.install(|| {
                (0..count)
                    .into_par_iter()
                    .map(|h| self.run_h(h))
                    .reduce(Outcome::default, Outcome::merge)
            }),
        }
    }

    fn trace(&self, counter: u64, h: u32, h_prime: u32) -> FpaTrace {
        let (c1, c2) = self.first_centers(h);
        let c3: Vec<usize> = self
            .table
            .replay(h_prime)
            .map(|j| self.table.system().sets()[j].owner)
            .collect();
        let region = |cs: &[usize]| {
            let mut r = FixedBitSet::with_capacity(self.n);
            for &c in cs {
                r.union_with(&self.balls[c]);
            }
            r.ones().collect::<Vec<usize>>()
        };
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable();
            v.dedup();
            v
        };
        let pick = |mask: u32| bits(mask).map(|i| self.hubs[i]).collect();
        FpaTrace {
            r: self.r,
            cover_radius: self.cover_radius,
            hubs: self.hubs.clone(),
            h: pick(h),
            h_prime: pick(h_prime),
            r1: region(&c1),
            r2: region(&c2),
            r3: region(&c3),
            c1: sorted(c1),
            c2: sorted(c2),
            c3: sorted(c3),
            counter,
        }
    }
}

pub(crate) fn scan(
    graph: &Graph,
    budget: Budget,
    options: &FpaOptions,
) -> Result<Solution, SolveError> {
    check_budget(graph, budget)?;
    let started = Instant::now();
    let deadline = options.time_budget.map(|b| started + b);
    let pool = if options.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(options.threads)
                .build()
                .map_err(|e| SolveError::ThreadPool(e.to_string()))?,
        )
    } else {
        None
    };
    let hub_cap = options.hub_cap.min(MAX_TABLE_CAP);
    let original = all_pairs(graph);
    let oracle = original.doubled();
    let mut run = FpaRun {
        scales: Vec::new(),
        trace: None,
        pruned: false,
        evaluations: 0,
    };
    let mut timed_out = false;
    let mut centers = Vec::new();
    for r in original.distinct_distances() {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            timed_out = true;
            break;
        }
        let spc = compute_spc(&oracle, r);
        let mut record = ScaleRecord {
            r,
            hubs: spc.hubs.len(),
            sparsity: spc.sparsity,
            clusters: 0,
            status: ScaleStatus::Skipped,
            evaluations: 0,
        };
        let allowed = budget.limit().saturating_mul(spc.sparsity as u64);
        if spc.hubs.len() as u64 > allowed {
            run.scales.push(record);
            continue;
        }
        if spc.hubs.len() > hub_cap {
            record.status = ScaleStatus::OverCap;
            run.pruned = true;
            run.scales.push(record);
            continue;
        }
        let clusters = compute_clusters(&oracle, &spc)?;
        record.clusters = clusters.len();
        let search = ScaleSearch::new(&oracle, budget, r, spc.hubs, &clusters, deadline)?;
        let outcome = search.run(pool.as_ref());
        record.evaluations = outcome.evaluations;
        run.evaluations += outcome.evaluations;
        if outcome.timed_out {
            record.status = ScaleStatus::TimedOut;
            run.scales.push(record);
            timed_out = true;
            break;
        }
        match outcome.best {
            Some((counter, h, h_prime)) => {
                record.status = ScaleStatus::Accepted;
                run.scales.push(record);
                let trace = search.trace(counter, h, h_prime);
                centers = trace
                    .c1
                    .iter()
                    .chain(&trace.c2)
                    .chain(&trace.c3)
                    .copied()
                    .collect();
                run.trace = Some(trace);
                break;
            }
            None => {
                record.status = ScaleStatus::Rejected;
                run.scales.push(record);
            }
        }
    }
    let algorithm = if budget.weighted() {
        Algorithm::WeightedFpa
    } else {
        Algorithm::Fpa
    };
    if run.trace.is_none() {
        if !(timed_out || run.pruned) {
            return Err(SolveError::NoFeasibleScale);
        }
        let reason = if timed_out {
            "time budget ran out".to_string()
        } else {
            format!("every searchable scale had more than {hub_cap} hubs")
        };
        return match budget {
            Budget::Count(k) if options.fallback => {
                let mut fallback = super::solve_hs(graph, k)?;
                fallback.algorithm = Algorithm::Fallback;
                fallback.fpa = Some(run);
                Ok(fallback)
            }
            _ => Err(SolveError::BudgetExceeded { reason }),
        };
    }
    centers.sort_unstable();
    centers.dedup();
    Ok(Solution {
        algorithm,
        cost: original.covering_radius(&centers),
        centers,
        unit: graph.unit(),
        fpa: Some(run),
    })
}
