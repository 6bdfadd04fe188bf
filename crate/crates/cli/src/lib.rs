//! Command-line front end for `ptho-core`.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod plot;

use std::fs;
use std::io::Write;

use args::{Cli, Command, OutputArgs};
use error::{CliError, CliResult};
use output::Document;

/// Runs a parsed command, writes its output and returns the exit code.
pub fn run(cli: &Cli) -> CliResult<u8> {
    let (doc, output) = execute(&cli.command)?;
    let text = doc.render(output.format)?;
    match &output.out {
        Some(path) => fs::write(path, &text).map_err(|source| CliError::Io { path: path.clone(), source })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                // a closed pipe (`ptho ... | head`) is not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                other => other.map_err(|source| CliError::Io { path: "<stdout>".into(), source })?,
            }
        }
    }
    for check in &doc.checks {
        eprintln!("{}", check.line());
    }
    Ok(doc.exit_code())
}

/// Builds the document for `command` without writing anything.
pub fn execute(command: &Command) -> CliResult<(Document, &OutputArgs)> {
    Ok(match command {
        Command::Table(a) => (commands::cmd_table(a)?, &a.output),
        Command::Spectrum(a) => (commands::cmd_spectrum(a)?, &a.output),
        Command::Perturb(a) => (commands::cmd_perturb(a)?, &a.output),
        Command::Wavefunction(a) => (commands::cmd_wavefunction(a)?, &a.output),
        Command::Sweep(a) => (commands::cmd_sweep(a)?, &a.output),
        Command::Verify(a) => (commands::cmd_verify(a)?, &a.output),
    })
}
