use std::io::Write;

use clap::{Args, ValueEnum};
use kcenter_core::lab::{
    certify_hub_hierarchy, embed_doubling, gen_random_connected, reduce_dominating_set, Norm,
    PointMetric, METRIC_UNIT,
};
use kcenter_core::setcover::{dominating_set_via_vc, MAX_TABLE_CAP};
use kcenter_core::solver::{solve_weighted_exact, solve_weighted_fpa};
use kcenter_core::spc::is_valid_cover;
use kcenter_core::{
    all_pairs, compute_clusters, compute_spc, solve_exact, solve_fpa, solve_hs, verify_clusters,
    FpaOptions, Graph,
};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::util::{columns, json_line};
use crate::{CliError, Format, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lemmas,
    Ratios,
    Embed,
    Reduction,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Instances per suite.
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest instance size.
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub instances: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            instances: 0,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn instance(rng: &mut ChaCha8Rng, n_max: usize, max_len: u64) -> Graph {
    let n = rng.gen_range(2..=n_max.max(2));
    let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(2 * n));
    gen_random_connected(n, m, max_len, rng.gen()).expect("valid parameters")
}

fn lemmas(args: &VerifyArgs, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut res = SuiteResult::new(Suite::Lemmas);
    for i in 0..args.count {
        let g = instance(rng, args.n_max, 6);
        res.instances += 1;
        let o = all_pairs(&g).doubled();
        for r in all_pairs(&g).distinct_distances() {
            let spc = compute_spc(&o, r);
            res.check(is_valid_cover(&o, r, &spc.hubs), || {
                format!("instance {i}: cover misses a path at r={r}")
            });
            match compute_clusters(&o, &spc) {
                Ok(set) => res.check(verify_clusters(&o, &spc.hubs, r, &set).is_ok(), || {
                    format!("instance {i}: cluster recheck failed at r={r}")
                }),
                Err(e) => res.check(false, || format!("instance {i}: {e}")),
            }
        }
        if g.n() <= 18 {
            for k in 1..=3 {
                let Ok(opt) = solve_exact(&g, k) else { continue };
                // the optimum's half, in half units, is the optimum itself
                let spc = compute_spc(&o, opt.cost);
                res.check(spc.hubs.len() as u64 <= k * spc.sparsity as u64, || {
                    format!(
                        "instance {i} k={k}: {} hubs exceed k times sparsity {}",
                        spc.hubs.len(),
                        spc.sparsity
                    )
                });
            }
        }
    }
    res
}

fn ratios(args: &VerifyArgs, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut res = SuiteResult::new(Suite::Ratios);
    for i in 0..args.count {
        let g = instance(rng, args.n_max.min(18), 8);
        res.instances += 1;
        for k in 1..=3 {
            let opt = solve_exact(&g, k).expect("connected, within cap").cost;
            match solve_fpa(&g, k, &FpaOptions::default()) {
                Ok(s) => res.check(2 * s.cost <= 3 * opt, || {
                    format!("instance {i} k={k}: fpa {} vs optimum {opt}", s.cost)
                }),
                Err(e) => res.check(false, || format!("instance {i} k={k}: fpa {e}")),
            }
            let hs = solve_hs(&g, k).expect("connected");
            res.check(hs.cost <= 2 * opt, || {
                format!("instance {i} k={k}: hs {} vs optimum {opt}", hs.cost)
            });
        }
        let weights: Vec<u64> = (0..g.n()).map(|_| rng.gen_range(1..=3)).collect();
        for budget in 3..=6 {
            let opt = solve_weighted_exact(&g, &weights, budget).expect("affordable").cost;
            match solve_weighted_fpa(&g, &weights, budget, &FpaOptions::default()) {
                Ok(s) => res.check(
                    s.cost <= 2 * opt && s.weight(&weights) <= budget,
                    || format!("instance {i} budget={budget}: weighted {} vs {opt}", s.cost),
                ),
                Err(e) => res.check(false, || format!("instance {i} budget={budget}: {e}")),
            }
        }
    }
    res
}

fn embeddings(args: &VerifyArgs, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut res = SuiteResult::new(Suite::Embed);
    for i in 0..args.count {
        let n = rng.gen_range(2..=args.n_max.max(2));
        let mut points: Vec<Vec<i64>> = Vec::new();
        while points.len() < n {
            let p = vec![
                rng.gen_range(0..=METRIC_UNIT as i64),
                rng.gen_range(0..=METRIC_UNIT as i64),
            ];
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let norm = if i % 2 == 0 { Norm::LInf } else { Norm::L2 };
        let eps = [Ratio::new(1, 10), Ratio::new(1, 5), Ratio::new(1, 2)][i % 3];
        res.instances += 1;
        let outcome = PointMetric::from_coordinates(&points, norm, None)
            .map_err(|e| e.to_string())
            .and_then(|m| embed_doubling(&m, eps).map_err(|e| e.to_string()))
            .and_then(|e| {
                certify_hub_hierarchy(&e.graph, &e.hierarchy).map_err(|e| e.to_string())
            });
        match outcome {
            Ok(report) => res.check(report.passed(), || {
                format!("instance {i}: {} pairs miss their level", report.violations.len())
            }),
            Err(e) => res.check(false, || format!("instance {i}: {e}")),
        }
    }
    res
}

/// Both endpoints of a greedy maximal matching.
fn matching_cover(g: &Graph) -> Vec<usize> {
    let mut taken = vec![false; g.n()];
    for e in g.edges() {
        if !taken[e.u] && !taken[e.v] {
            taken[e.u] = true;
            taken[e.v] = true;
        }
    }
    (0..g.n()).filter(|&v| taken[v]).collect()
}

fn reduction(args: &VerifyArgs, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut res = SuiteResult::new(Suite::Reduction);
    for i in 0..args.count {
        let g = instance(rng, args.n_max.min(18), 1);
        res.instances += 1;
        let domination = dominating_set_via_vc(&g, &matching_cover(&g), MAX_TABLE_CAP)
            .expect("the vertex set is a vertex cover")
            .len() as u64;
        for k in 1..=3 {
            let (h, k) = reduce_dominating_set(&g, k);
            let cost = solve_exact(&h, k).expect("connected").cost;
            let ok = if cost == 0 {
                g.n() as u64 <= k
            } else {
                (cost == 1) == (domination <= k)
            };
            res.check(ok, || {
                format!("instance {i} k={k}: cost {cost}, minimum dominating set {domination}")
            });
        }
    }
    res
}

/// Run the selected suites with a shared seeded generator.
pub fn verify(args: &VerifyArgs) -> Vec<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let suites = match args.suite {
        Suite::All => vec![Suite::Lemmas, Suite::Ratios, Suite::Embed, Suite::Reduction],
        s => vec![s],
    };
    suites
        .into_iter()
        .map(|s| match s {
            Suite::Lemmas => lemmas(args, &mut rng),
            Suite::Ratios => ratios(args, &mut rng),
            Suite::Embed => embeddings(args, &mut rng),
            Suite::Reduction => reduction(args, &mut rng),
            Suite::All => unreachable!(),
        })
        .collect()
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    schema: &'static str,
    seed: u64,
    suites: &'a [SuiteResult],
    passed: bool,
}

pub(crate) fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let results = verify(args);
    let passed = results.iter().all(SuiteResult::passed);
    if args.format == Format::Json {
        json_line(
            &VerifyReport {
                schema: SCHEMA,
                seed: args.seed,
                suites: &results,
                passed,
            },
            out,
        )?;
    } else {
        let mut grid = vec![["suite", "instances", "checks", "result"].map(String::from).to_vec()];
        for r in &results {
            grid.push(vec![
                format!("{:?}", r.suite).to_lowercase(),
                r.instances.to_string(),
                r.checks.to_string(),
                if r.passed() { "pass" } else { "FAIL" }.to_string(),
            ]);
        }
        columns(&grid, out)?;
        for r in &results {
            for f in &r.failures {
                writeln!(out, "{:?}: {f}", r.suite)?;
            }
        }
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::Failed("verification failed".to_string()))
    }
}
