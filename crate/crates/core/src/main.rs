use std::process::ExitCode;

use clap::Parser;
use signed_bernoulli::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    cli::main(args)
}
