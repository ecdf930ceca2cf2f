use std::io::Write;
use std::path::PathBuf;

use clap::Subcommand;
use kcenter_core::io::write_graph;
use kcenter_core::lab::{gen_cubic_instance, gen_grid, gen_random_connected, reduce_dominating_set};

use crate::util::{emit, read_graph};
use crate::{CliError, OutPath};

#[derive(Debug, Clone, Subcommand)]
pub enum GenCommand {
    /// Unit-length w x h grid.
    Grid {
        #[arg(long)]
        w: usize,
        #[arg(long)]
        h: usize,
        #[command(flatten)]
        out: OutPath,
    },
    /// Random connected graph with integer lengths.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        max_len: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutPath,
    },
    /// Random connected cubic graph with unit lengths.
    Cubic {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutPath,
    },
    /// k-Center instance answering "dominating set of size k?".
    Reduce {
        graph: PathBuf,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        out: OutPath,
    },
}

pub(crate) fn cmd_gen(cmd: &GenCommand, out: &mut dyn Write) -> Result<(), CliError> {
    let invalid = |e: kcenter_core::lab::GenError| CliError::Invalid(e.to_string());
    let (text, path) = match cmd {
        GenCommand::Grid { w, h, out } => (
            format!("# grid {w}x{h}\n{}", write_graph(&gen_grid(*w, *h).map_err(invalid)?, None)),
            out,
        ),
        GenCommand::Random {
            n,
            m,
            max_len,
            seed,
            out,
        } => {
            let g = gen_random_connected(*n, *m, *max_len, *seed).map_err(invalid)?;
            (
                format!("# random n={n} m={m} max_len={max_len} seed={seed}\n{}", write_graph(&g, None)),
                out,
            )
        }
        GenCommand::Cubic { n, seed, out } => {
            let g = gen_cubic_instance(*n, *seed).map_err(invalid)?;
            (format!("# cubic n={n} seed={seed}\n{}", write_graph(&g, None)), out)
        }
        GenCommand::Reduce { graph, k, out } => {
            let file = read_graph(graph)?;
            let (g, k) = reduce_dominating_set(&file.graph, *k);
            (
                format!("# cost 1 iff a dominating set of size <= {k} exists\n{}", write_graph(&g, None)),
                out,
            )
        }
    };
    emit(path.out.as_deref(), &text, out)
}
