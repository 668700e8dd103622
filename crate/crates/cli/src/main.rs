use std::process::ExitCode;

use bmw_cli::{Cli, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match RunConfig::from_cli(cli) {
        Ok(cfg) => bmw_cli::main_with(cfg),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
