use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use kcenter_core::{all_pairs, compute_clusters, compute_spc, format_decimal, DecimalLength};
use serde::Serialize;

use crate::util::{columns, json_line, list, read_graph};
use crate::{CliError, Format, SCHEMA};

#[derive(Debug, Clone, Args)]
pub struct SpcArgs {
    /// Graph file.
    pub graph: PathBuf,
    /// Report only this scale (graph length units); default is every
    /// candidate scale, i.e. half of each pairwise distance.
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Serialize)]
struct ScaleRow {
    r: String,
    paths: usize,
    hubs: Vec<usize>,
    sparsity: usize,
    clusters: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize)]
struct SpcReport {
    schema: &'static str,
    path: String,
    n: usize,
    scales: Vec<ScaleRow>,
}

pub(crate) fn cmd_spc(args: &SpcArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let graph = read_graph(&args.graph)?.graph;
    let oracle = all_pairs(&graph).doubled();
    let unit = oracle.unit();
    let scales: Vec<u64> = match &args.r {
        None => all_pairs(&graph).distinct_distances(),
        Some(text) => {
            let bad = || CliError::Invalid(format!("invalid scale {text:?}"));
            let d: DecimalLength = text.parse().map_err(|_| bad())?;
            if d.is_negative() {
                return Err(bad());
            }
            // r in half units must be an integer
            let digits = d.fraction_digits();
            let mantissa = u128::from(d.scaled_to(digits).ok_or_else(bad)?);
            let num = mantissa * u128::from(unit);
            let den = 10u128.pow(digits);
            if num % den != 0 {
                return Err(CliError::Invalid(format!(
                    "scale {text} is finer than the graph's resolution"
                )));
            }
            vec![u64::try_from(num / den).map_err(|_| bad())?]
        }
    };
    let mut rows = Vec::new();
    for r in scales {
        let spc = compute_spc(&oracle, r);
        let clusters = compute_clusters(&oracle, &spc).map_err(|e| CliError::Failed(e.to_string()))?;
        rows.push(ScaleRow {
            r: format_decimal(r, unit),
            paths: spc.covered_paths,
            hubs: spc.hubs,
            sparsity: spc.sparsity,
            clusters: clusters.clusters,
        });
    }
    if args.format == Format::Json {
        return json_line(
            &SpcReport {
                schema: SCHEMA,
                path: args.graph.display().to_string(),
                n: graph.n(),
                scales: rows,
            },
            out,
        );
    }
    let mut grid = vec![["r", "paths", "hubs", "sparsity", "clusters", "hub set"]
        .map(String::from)
        .to_vec()];
    for row in &rows {
        grid.push(vec![
            row.r.clone(),
            row.paths.to_string(),
            row.hubs.len().to_string(),
            row.sparsity.to_string(),
            row.clusters.len().to_string(),
            list(&row.hubs),
        ]);
    }
    columns(&grid, out)
}
