use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use discoloc_cli::{run, Cli, RunConfig, Status};

fn main() -> ExitCode {
    let config = RunConfig::from(Cli::parse());
    let outcome = run(&config);
    let written = if outcome.status == Status::InputError {
        std::io::stderr().write_all(outcome.report.as_bytes())
    } else {
        std::io::stdout().write_all(outcome.report.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(Status::InputError.code());
    }
    ExitCode::from(outcome.status.code())
}
