use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    dispersive::run(dispersive::Cli::parse())
}
