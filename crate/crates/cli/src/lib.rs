//! Front end for `modrep-core`: argument parsing, the matrix file format and
//! the report writers behind the `modrep` binary.

pub mod args;
pub mod build;
pub mod error;
pub mod report;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use args::{Cli, Command, Output};
use error::{CliResult, EXIT_FAILED, EXIT_OK};

fn with_output<F>(output: &Output, f: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> CliResult<()>,
{
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
        }
    }
    Ok(())
}

/// Runs one command and returns the process exit code.
pub fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Build(a) => {
            let rep = build::make(&a)?;
            with_output(&a.output, |w| build::write(&rep, a.output.format, w))?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let v = verify::run(&a)?;
            with_output(&a.output, |w| verify::write(&v, a.output.format, w))?;
            Ok(if v.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Report(a) => {
            let table = report::run(&a)?;
            with_output(&a.output, |w| report::write(&table, a.output.format, w))?;
            Ok(EXIT_OK)
        }
    }
}
