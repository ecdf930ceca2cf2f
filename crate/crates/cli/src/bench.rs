use std::io::Write;
use std::time::Instant;

use clap::{Args, ValueEnum};
use kcenter_core::lab::{gen_cubic_instance, gen_grid, gen_random_connected};
use kcenter_core::solver::{solve_exact_capped, FpaRun, ScaleStatus};
use kcenter_core::{solve_fpa, solve_hs, FpaOptions, Graph, Solution};
use serde::Serialize;

use crate::solve::Algo;
use crate::util::{columns, json_line, ratio, solve_error};
use crate::{Caps, CliError, Format, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Random,
    Grid,
    Cubic,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "random")]
    pub family: Family,
    /// Vertices per instance (grids use the nearest rectangle below).
    #[arg(long, default_value_t = 12)]
    pub n: usize,
    /// Instances in the family.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub ks: Vec<u64>,
    /// Any of fpa, hs, exact.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "fpa,hs")]
    pub algos: Vec<Algo>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[command(flatten)]
    pub caps: Caps,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub k: u64,
    pub algo: Algo,
    pub cost: String,
    pub oracle_cost: Option<String>,
    pub ratio: Option<f64>,
    pub time_ms: f64,
    /// Guess evaluations over all scales (FPA only).
    pub guesses: Option<u64>,
    /// Every searched scale evaluated exactly 3^hubs guesses (FPA only).
    pub counts_ok: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KSummary {
    pub algo: Algo,
    pub k: u64,
    pub total_ms: f64,
    pub guesses: u64,
    pub max_ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub schema: &'static str,
    pub family: Family,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    pub summary: Vec<KSummary>,
}

impl BenchReport {
    /// Whether FPA's total time is non-decreasing in k.
    pub fn fpa_time_monotone(&self) -> bool {
        let times: Vec<f64> = self
            .summary
            .iter()
            .filter(|s| s.algo == Algo::Fpa)
            .map(|s| s.total_ms)
            .collect();
        times.windows(2).all(|w| w[0] <= w[1])
    }
}

fn counts_ok(run: &FpaRun) -> bool {
    run.scales.iter().all(|s| match s.status {
        ScaleStatus::Accepted | ScaleStatus::Rejected => s.evaluations == 3u64.pow(s.hubs as u32),
        _ => s.evaluations == 0,
    })
}

fn family(args: &BenchArgs) -> Result<Vec<(String, Graph)>, CliError> {
    let bad = |e: kcenter_core::lab::GenError| CliError::Invalid(e.to_string());
    (0..args.count as u64)
        .map(|i| {
            let seed = args.seed + i;
            let n = args.n;
            Ok(match args.family {
                Family::Random => (
                    format!("random-n{n}-s{seed}"),
                    gen_random_connected(n, (3 * n / 2).max(n.saturating_sub(1)), 10, seed)
                        .map_err(bad)?,
                ),
                Family::Grid => {
                    let w = (1..=n).take_while(|w| w * w <= n).last().unwrap_or(1);
                    // grids have no randomness; the seed only names them
                    (format!("grid-{w}x{}-s{seed}", n / w), gen_grid(w, n / w).map_err(bad)?)
                }
                Family::Cubic => (
                    format!("cubic-n{n}-s{seed}"),
                    gen_cubic_instance(n, seed).map_err(bad)?,
                ),
            })
        })
        .collect()
}

/// Run every algorithm on every instance and k.
pub fn bench(args: &BenchArgs) -> Result<BenchReport, CliError> {
    if let Some(a) = args.algos.iter().find(|a| !matches!(a, Algo::Fpa | Algo::Hs | Algo::Exact)) {
        return Err(CliError::Invalid(format!("bench does not run {a:?}")));
    }
    let options = FpaOptions {
        hub_cap: args.caps.hub_limit(),
        threads: args.threads.max(1),
        ..FpaOptions::default()
    };
    let exact_cap = args.caps.exact_limit();
    let mut rows = Vec::new();
    for (name, graph) in family(args)? {
        for &k in &args.ks {
            let oracle = if graph.n() <= exact_cap {
                Some(solve_exact_capped(&graph, k, exact_cap).map_err(solve_error)?.cost)
            } else {
                None
            };
            for &algo in &args.algos {
                let started = Instant::now();
                let solution: Solution = match algo {
                    Algo::Fpa => solve_fpa(&graph, k, &options),
                    Algo::Hs => solve_hs(&graph, k),
                    _ => solve_exact_capped(&graph, k, exact_cap),
                }
                .map_err(solve_error)?;
                let time_ms = started.elapsed().as_secs_f64() * 1000.0;
                rows.push(BenchRow {
                    instance: name.clone(),
                    n: graph.n(),
                    m: graph.m(),
                    k,
                    algo,
                    cost: solution.cost_decimal(),
                    oracle_cost: oracle.map(|c| graph.descale(c)),
                    ratio: oracle.and_then(|c| ratio(solution.cost, c)),
                    time_ms,
                    guesses: solution.fpa.as_ref().map(|r| r.evaluations),
                    counts_ok: solution.fpa.as_ref().map(counts_ok),
                });
            }
        }
    }
    let mut summary = Vec::new();
    for &algo in &args.algos {
        for &k in &args.ks {
            let mine: Vec<&BenchRow> = rows.iter().filter(|r| r.algo == algo && r.k == k).collect();
            summary.push(KSummary {
                algo,
                k,
                total_ms: mine.iter().map(|r| r.time_ms).sum(),
                guesses: mine.iter().filter_map(|r| r.guesses).sum(),
                max_ratio: mine.iter().filter_map(|r| r.ratio).reduce(f64::max),
            });
        }
    }
    Ok(BenchReport {
        schema: SCHEMA,
        family: args.family,
        seed: args.seed,
        rows,
        summary,
    })
}

fn opt(v: Option<impl ToString>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub(crate) fn cmd_bench(
    args: &BenchArgs,
    out: &mut dyn Write,
    warn: &mut dyn Write,
) -> Result<(), CliError> {
    for w in args.caps.warnings() {
        writeln!(warn, "warning: {w}")?;
    }
    let report = bench(args)?;
    if args.format == Format::Json {
        return json_line(&report, out);
    }
    let head = ["instance", "n", "m", "k", "algo", "cost", "oracle", "ratio", "time ms", "guesses", "3^h"];
    let mut grid = vec![head.map(String::from).to_vec()];
    for r in &report.rows {
        grid.push(vec![
            r.instance.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.k.to_string(),
            format!("{:?}", r.algo).to_lowercase(),
            r.cost.clone(),
            opt(r.oracle_cost.as_ref()),
            opt(r.ratio.map(|x| format!("{x:.4}"))),
            format!("{:.3}", r.time_ms),
            opt(r.guesses),
            opt(r.counts_ok.map(|ok| if ok { "ok" } else { "MISMATCH" })),
        ]);
    }
    columns(&grid, out)?;
    writeln!(out)?;
    let mut grid = vec![["algo", "k", "total ms", "guesses", "max ratio"].map(String::from).to_vec()];
    for s in &report.summary {
        grid.push(vec![
            format!("{:?}", s.algo).to_lowercase(),
            s.k.to_string(),
            format!("{:.3}", s.total_ms),
            s.guesses.to_string(),
            opt(s.max_ratio.map(|x| format!("{x:.4}"))),
        ]);
    }
    columns(&grid, out)?;
    if report.rows.iter().any(|r| r.counts_ok == Some(false)) {
        return Err(CliError::Failed("guess counts differ from 3^hubs".to_string()));
    }
    Ok(())
}
