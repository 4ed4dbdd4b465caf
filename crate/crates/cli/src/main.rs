//! `pifunc` command-line tool.
//!
//! Exit codes: 0 success, 1 usage or I/O, 2 domain, 3 non-convergence,
//! 4 verification or oracle failure.

mod args;
mod commands;
mod error;
mod report;
mod verify;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;
use error::CliError;

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Eval(a) => commands::eval(a, cli.full),
        Command::Limit(a) => commands::limit(a, cli.full),
        Command::Table(a) => commands::table(a, cli.full),
        Command::Sweep(a) => commands::run_sweep(a),
        Command::Min(a) => commands::min(a, cli.full),
        Command::Verify(a) => commands::verify(a),
        Command::Digits(a) => commands::digits(a),
        Command::Bench(a) => commands::bench(a),
    }
}

fn emit(cli: &Cli, outcome: Outcome) -> Result<(), CliError> {
    let json = cli.json || matches!(cli.command, Command::Bench(_));
    match (&cli.out, &outcome.csv) {
        (Some(path), Some(csv)) => {
            report::write_file(path, csv)?;
            if json {
                println!("{}", outcome.report.to_json());
            } else {
                eprintln!(
                    "wrote {} rows to {}",
                    csv.lines().count() - 1,
                    path.display()
                );
            }
        }
        (Some(path), None) => {
            report::write_file(path, &(outcome.report.to_json() + "\n"))?;
            if !json {
                println!("{}", outcome.text);
            }
        }
        (None, _) if json => println!("{}", outcome.report.to_json()),
        (None, Some(csv)) => print!("{csv}"),
        (None, None) => println!("{}", outcome.text),
    }
    match outcome.failure {
        Some(failure) => Err(failure),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli).and_then(|outcome| emit(&cli, outcome)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pifunc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
