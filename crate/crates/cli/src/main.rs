use std::io::Write;
use std::process::ExitCode;

use anef_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let mut out = std::io::stdout().lock();
    if out.write_all(outcome.report.render(cli.json).as_bytes()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code as u8)
}
