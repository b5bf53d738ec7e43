use std::process::ExitCode;

use clap::Parser;
use slipwall::cli::{run, Cli};

fn main() -> ExitCode {
    run(Cli::parse())
}
