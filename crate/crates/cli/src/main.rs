use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use kcenter_cli::{run, Cli};

fn main() -> ExitCode {
    // clap exits with 2 on usage errors
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut warn = io::stderr();
    let result = run(&cli, &mut out, &mut warn);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(warn, "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
