use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use kcenter_core::io::{parse_points, write_graph, PointFile};
use kcenter_core::lab::{certify_hub_hierarchy, embed_doubling, Norm, PointMetric};
use serde::Serialize;

use crate::util::{columns, emit, json_line, parse_eps, table};
use crate::{CliError, Format, OutPath, SCHEMA};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NormArg {
    L1,
    L2,
    Linf,
}

#[derive(Debug, Clone, Args)]
pub struct EmbedArgs {
    /// Point file: coordinate lines or a `matrix n` block.
    pub points: PathBuf,
    #[arg(long, default_value = "0.2")]
    pub eps: String,
    #[arg(long, value_enum, default_value = "l2")]
    pub norm: NormArg,
    /// Doubling dimension used for the reported sparsity bound; defaults to
    /// the coordinate dimension (1 for matrices).
    #[arg(long)]
    pub dim: Option<u32>,
    /// Where to write the graph; without it only the report is printed.
    #[command(flatten)]
    pub out: OutPath,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Serialize)]
struct LevelRow {
    level: usize,
    members: usize,
    radius: f64,
    pairs: usize,
    sparsity: usize,
    bound: f64,
}

#[derive(Debug, Serialize)]
struct EmbedReport {
    schema: &'static str,
    path: String,
    n: usize,
    eps: String,
    top_level: usize,
    max_stretch: f64,
    levels: Vec<LevelRow>,
    violations: Vec<(usize, usize, usize)>,
    unbanded: usize,
    passed: bool,
}

pub(crate) fn cmd_embed(args: &EmbedArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let eps = parse_eps(&args.eps)?;
    let text = fs::read_to_string(&args.points)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", args.points.display())))?;
    let parsed = parse_points(&text)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", args.points.display())))?;
    let norm = match args.norm {
        NormArg::L1 => Norm::L1,
        NormArg::L2 => Norm::L2,
        NormArg::Linf => Norm::LInf,
    };
    let metric = match &parsed {
        PointFile::Coordinates(points) => PointMetric::from_coordinates(points, norm, args.dim),
        PointFile::Matrix(rows) => PointMetric::from_matrix(rows, args.dim.unwrap_or(1)),
    }
    .map_err(|e| CliError::Invalid(e.to_string()))?;
    let embedding = embed_doubling(&metric, eps).map_err(|e| CliError::Failed(e.to_string()))?;
    let hub = certify_hub_hierarchy(&embedding.graph, &embedding.hierarchy)
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let h = &embedding.hierarchy;
    let report = EmbedReport {
        schema: SCHEMA,
        path: args.points.display().to_string(),
        n: metric.n(),
        eps: args.eps.clone(),
        top_level: h.top,
        max_stretch: embedding.max_stretch,
        levels: hub
            .levels
            .iter()
            .map(|l| LevelRow {
                level: l.level,
                members: l.members,
                radius: h.radius(l.level),
                pairs: l.pairs,
                sparsity: l.sparsity,
                bound: l.bound,
            })
            .collect(),
        violations: hub.violations.clone(),
        unbanded: hub.unbanded,
        passed: hub.passed(),
    };
    if args.format == Format::Json {
        json_line(&report, out)?;
    } else {
        table(
            &[
                ("points", report.path.clone()),
                ("n", report.n.to_string()),
                ("eps", report.eps.clone()),
                ("levels", (report.top_level + 1).to_string()),
                ("max stretch", format!("{:.6}", report.max_stretch)),
                ("unbanded pairs", report.unbanded.to_string()),
                ("violations", report.violations.len().to_string()),
                ("certificate", if report.passed { "pass" } else { "fail" }.to_string()),
            ],
            out,
        )?;
        writeln!(out)?;
        let mut grid = vec![["level", "members", "radius", "pairs", "sparsity", "bound"]
            .map(String::from)
            .to_vec()];
        for l in &report.levels {
            grid.push(vec![
                l.level.to_string(),
                l.members.to_string(),
                format!("{:.6}", l.radius),
                l.pairs.to_string(),
                l.sparsity.to_string(),
                format!("{:.3e}", l.bound),
            ]);
        }
        columns(&grid, out)?;
        for (u, v, i) in &report.violations {
            writeln!(out, "violation: pair ({u},{v}) misses level {i}")?;
        }
    }
    if !report.passed {
        return Err(CliError::Failed("hub hierarchy certificate failed".to_string()));
    }
    if let Some(path) = &args.out.out {
        emit(Some(path), &write_graph(&embedding.graph, None), out)?;
    }
    Ok(())
}
