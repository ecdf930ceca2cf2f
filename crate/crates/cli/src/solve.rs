use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, ValueEnum};
use kcenter_core::solver::{
    solve_exact_capped, solve_weighted_exact, solve_weighted_fpa, FpaRun, ScaleStatus,
};
use kcenter_core::{
    format_decimal, solve_fpa, solve_hs, solve_partition, FpaOptions, Graph, Solution,
};
use serde::Serialize;

use crate::util::{json_line, list, ratio, read_graph, solve_error, table};
use crate::{Caps, CliError, Format, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Fpa,
    Hs,
    Exact,
    WeightedFpa,
    WeightedExact,
    Partition,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// Graph file.
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "fpa")]
    pub algo: Algo,
    /// Number of centers, or the weight budget for weighted algorithms.
    #[arg(long)]
    pub k: u64,
    /// Family radius for the partition variant.
    #[arg(long, default_value_t = 1)]
    pub delta: u64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Answer with the 2-approximation when the hub search is pruned.
    #[arg(long)]
    pub fallback: bool,
    /// Stop the hub search after this many milliseconds.
    #[arg(long)]
    pub time_budget_ms: Option<u64>,
    /// Also run the exact solver and report the ratio.
    #[arg(long)]
    pub oracle: bool,
    /// Include wall time (makes reports differ between runs).
    #[arg(long)]
    pub timing: bool,
    /// Include the per-scale scan and the accepted guess.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub caps: Caps,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    pub path: String,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScaleStats {
    /// Scale `r` as a decimal in graph length units.
    pub r: String,
    pub hubs: usize,
    pub sparsity: usize,
    pub clusters: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub instance: Instance,
    pub algorithm: String,
    pub k: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<u64>,
    pub cost: String,
    pub centers: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bottleneck: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_cost: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<ScaleStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guesses: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pruned: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub run: Option<FpaRun>,
    #[serde(skip)]
    pub unit: u64,
}

fn scale_stats(run: &FpaRun, graph: &Graph) -> Option<ScaleStats> {
    let s = run.scales.iter().find(|s| s.status == ScaleStatus::Accepted)?;
    Some(ScaleStats {
        r: format_decimal(s.r, graph.unit() * 2),
        hubs: s.hubs,
        sparsity: s.sparsity,
        clusters: s.clusters,
    })
}

/// Solve as the command would and build the report, without printing.
pub fn solve(args: &SolveArgs) -> Result<RunReport, CliError> {
    let file = read_graph(&args.graph)?;
    let graph = &file.graph;
    let weights = file.weights.clone().unwrap_or_else(|| vec![1; graph.n()]);
    let options = FpaOptions {
        hub_cap: args.caps.hub_limit(),
        fallback: args.fallback,
        threads: args.threads.max(1),
        time_budget: args.time_budget_ms.map(Duration::from_millis),
    };
    let exact_cap = args.caps.exact_limit();
    let started = Instant::now();
    let mut partition = None;
    let solution: Solution = match args.algo {
        Algo::Fpa => solve_fpa(graph, args.k, &options),
        Algo::Hs => solve_hs(graph, args.k),
        Algo::Exact => solve_exact_capped(graph, args.k, exact_cap),
        Algo::WeightedFpa => solve_weighted_fpa(graph, &weights, args.k, &options),
        Algo::WeightedExact => {
            check_cap(graph, exact_cap)?;
            solve_weighted_exact(graph, &weights, args.k)
        }
        Algo::Partition => solve_partition(graph, args.k, args.delta, &options).map(|p| {
            let s = p.kcenter.clone();
            partition = Some(p);
            s
        }),
    }
    .map_err(solve_error)?;
    let elapsed = started.elapsed();

    let weighted = matches!(args.algo, Algo::WeightedFpa | Algo::WeightedExact);
    let oracle_cost = if args.oracle {
        check_cap(graph, exact_cap)?;
        let exact = if weighted {
            solve_weighted_exact(graph, &weights, args.k)
        } else {
            solve_exact_capped(graph, args.k, exact_cap)
        };
        Some(exact.map_err(solve_error)?.cost)
    } else {
        None
    };
    let measured = partition.as_ref().map_or(solution.cost, |p| p.bottleneck);
    let run = solution.fpa.as_ref();
    Ok(RunReport {
        schema: SCHEMA,
        instance: Instance {
            path: args.graph.display().to_string(),
            n: graph.n(),
            m: graph.m(),
        },
        algorithm: if partition.is_some() {
            "partition".to_string()
        } else {
            solution.algorithm.to_string()
        },
        k: args.k,
        delta: partition.as_ref().map(|p| p.delta),
        cost: solution.cost_decimal(),
        centers: solution.centers.clone(),
        weight: weighted.then(|| solution.weight(&weights)),
        bottleneck: partition.as_ref().map(|p| graph.descale(p.bottleneck)),
        parts: partition.map(|p| p.parts),
        oracle_cost: oracle_cost.map(|c| graph.descale(c)),
        ratio: oracle_cost.and_then(|c| ratio(measured, c)),
        scale: run.and_then(|r| scale_stats(r, graph)),
        guesses: run.map(|r| r.evaluations),
        pruned: run.map(|r| r.pruned),
        time_ms: args.timing.then(|| elapsed.as_secs_f64() * 1000.0),
        run: if args.trace { run.cloned() } else { None },
        unit: graph.unit(),
    })
}

fn check_cap(graph: &Graph, cap: usize) -> Result<(), CliError> {
    if graph.n() > cap {
        return Err(CliError::Invalid(format!(
            "exact solver limited to {cap} vertices, graph has {}",
            graph.n()
        )));
    }
    Ok(())
}

pub(crate) fn cmd_solve(
    args: &SolveArgs,
    out: &mut dyn Write,
    warn: &mut dyn Write,
) -> Result<(), CliError> {
    for w in args.caps.warnings() {
        writeln!(warn, "warning: {w}")?;
    }
    let report = solve(args)?;
    if args.format == Format::Json {
        return json_line(&report, out);
    }
    let mut rows = vec![
        ("instance", format!("{} (n={}, m={})", report.instance.path, report.instance.n, report.instance.m)),
        ("algorithm", report.algorithm.clone()),
        ("k", report.k.to_string()),
    ];
    if let Some(d) = report.delta {
        rows.push(("delta", d.to_string()));
    }
    rows.push(("cost", report.cost.clone()));
    rows.push(("centers", list(&report.centers)));
    if let Some(w) = report.weight {
        rows.push(("weight", w.to_string()));
    }
    if let Some(parts) = &report.parts {
        let shown: Vec<String> = parts.iter().map(|p| list(p)).collect();
        rows.push(("parts", shown.join(" ")));
    }
    if let Some(b) = &report.bottleneck {
        rows.push(("bottleneck", b.clone()));
    }
    if let Some(c) = &report.oracle_cost {
        rows.push(("oracle cost", c.clone()));
    }
    if let Some(r) = report.ratio {
        rows.push(("ratio", format!("{r:.4}")));
    }
    if let Some(s) = &report.scale {
        rows.push(("scale r", s.r.clone()));
        rows.push(("hubs", s.hubs.to_string()));
        rows.push(("sparsity", s.sparsity.to_string()));
        rows.push(("clusters", s.clusters.to_string()));
    }
    if let Some(g) = report.guesses {
        rows.push(("guesses", g.to_string()));
    }
    if let Some(p) = report.pruned {
        rows.push(("pruned", p.to_string()));
    }
    if let Some(t) = report.time_ms {
        rows.push(("time ms", format!("{t:.3}")));
    }
    table(&rows, out)?;
    if let Some(run) = &report.run {
        writeln!(out)?;
        let mut grid = vec![vec![
            "r".to_string(),
            "hubs".to_string(),
            "sparsity".to_string(),
            "clusters".to_string(),
            "status".to_string(),
            "guesses".to_string(),
        ]];
        for s in &run.scales {
            grid.push(vec![
                format_decimal(s.r, report.unit * 2),
                s.hubs.to_string(),
                s.sparsity.to_string(),
                s.clusters.to_string(),
                format!("{:?}", s.status).to_lowercase(),
                s.evaluations.to_string(),
            ]);
        }
        crate::util::columns(&grid, out)?;
        if let Some(t) = &run.trace {
            writeln!(out)?;
            table(
                &[
                    ("H", list(&t.h)),
                    ("H'", list(&t.h_prime)),
                    ("C1", list(&t.c1)),
                    ("C2", list(&t.c2)),
                    ("C3", list(&t.c3)),
                    ("counter", t.counter.to_string()),
                ],
                out,
            )?;
        }
    }
    Ok(())
}
