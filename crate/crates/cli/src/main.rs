use std::process::ExitCode;

use clap::Parser;
use modrep_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match modrep_cli::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("modrep: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
