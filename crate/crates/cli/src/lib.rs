//! Command-line front end: argument types and command implementations.
//!
//! Every command writes its report to the given output and returns a
//! [`CliError`] whose [`CliError::exit_code`] follows the contract
//! 0 success, 1 infeasible / budget exceeded / failed check, 2 invalid input.

mod bench;
mod embed;
mod gen;
mod scales;
mod solve;
mod util;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use bench::{bench, BenchArgs, BenchReport, BenchRow, Family};
pub use embed::EmbedArgs;
pub use gen::GenCommand;
pub use scales::SpcArgs;
pub use solve::{solve, Algo, RunReport, SolveArgs};
pub use verify::{verify, Suite, SuiteResult, VerifyArgs};

/// Version tag of every structured report.
pub const SCHEMA: &str = "v1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Failed(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Invalid(_) | CliError::Io(_) => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
}

/// Size limits of the exponential parts. Raising them trades memory and
/// time for reach.
#[derive(Debug, Clone, Args)]
pub struct Caps {
    /// Largest hub set whose 3^h assignments are enumerated.
    #[arg(long, default_value_t = kcenter_core::solver::DEFAULT_HUB_CAP)]
    pub hub_cap: usize,
    /// Largest cover-table universe (the table has 2^cap entries).
    #[arg(long, default_value_t = kcenter_core::setcover::DEFAULT_TABLE_CAP)]
    pub table_cap: usize,
    /// Largest vertex count for the exact solvers.
    #[arg(long, default_value_t = kcenter_core::solver::DEFAULT_EXACT_CAP)]
    pub exact_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            hub_cap: kcenter_core::solver::DEFAULT_HUB_CAP,
            table_cap: kcenter_core::setcover::DEFAULT_TABLE_CAP,
            exact_cap: kcenter_core::solver::DEFAULT_EXACT_CAP,
        }
    }
}

impl Caps {
    fn hub_limit(&self) -> usize {
        self.hub_cap.min(self.table_cap)
    }

    fn exact_limit(&self) -> usize {
        self.exact_cap.min(self.table_cap)
    }

    fn warnings(&self) -> Vec<String> {
        let d = Caps::default();
        let mut out = Vec::new();
        if self.hub_cap > d.hub_cap {
            out.push(format!(
                "hub cap {} allows up to 3^{} guesses per scale; runs may take very long",
                self.hub_cap, self.hub_cap
            ));
        }
        if self.table_cap > d.table_cap {
            out.push(format!(
                "table cap {} allows cover tables of 2^{} entries (about {} MiB each)",
                self.table_cap,
                self.table_cap,
                (12u64 << self.table_cap.min(40)) >> 20
            ));
        }
        if self.exact_cap > d.exact_cap {
            out.push(format!(
                "exact cap {} builds tables of 2^n entries per candidate radius",
                self.exact_cap
            ));
        }
        out
    }
}

#[derive(Debug, Parser)]
#[command(name = "kcenter", version, about = "k-Center solvers for graphs with sparse shortest path covers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve k-Center (or a variant) on a graph file.
    Solve(SolveArgs),
    /// Generate an instance in the graph file format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Report shortest path covers and clusters per scale.
    Spc(SpcArgs),
    /// Embed a point set into a graph and certify its hub hierarchy.
    Embed(EmbedArgs),
    /// Run seeded invariant sweeps.
    Verify(VerifyArgs),
    /// Time solvers on a generated family.
    Bench(BenchArgs),
}

/// Run one command, writing the report to `out` and warnings to `warn`.
pub fn run(cli: &Cli, out: &mut dyn Write, warn: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve(args) => solve::cmd_solve(args, out, warn),
        Command::Gen(args) => gen::cmd_gen(args, out),
        Command::Spc(args) => scales::cmd_spc(args, out),
        Command::Embed(args) => embed::cmd_embed(args, out),
        Command::Verify(args) => verify::cmd_verify(args, out),
        Command::Bench(args) => bench::cmd_bench(args, out, warn),
    }
}

/// Where a command's main artifact goes when not to stdout.
#[derive(Debug, Clone, Args, Default)]
pub struct OutPath {
    /// Write the artifact here instead of stdout (only after success).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
