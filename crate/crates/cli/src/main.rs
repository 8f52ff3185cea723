#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod output;
mod run;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use trispec::Verdict;

use args::Cli;
use run::CliError;

const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run::run(&cli) {
        Ok(outcome) => {
            if let Err(e) = output::write(cli.out.as_deref(), &outcome.text) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_FAIL);
            }
            match outcome.verdict {
                None | Some(Verdict::Pass) => ExitCode::SUCCESS,
                Some(Verdict::Fail) => ExitCode::from(EXIT_FAIL),
                Some(Verdict::Inconclusive) => ExitCode::from(EXIT_INCONCLUSIVE),
            }
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}\n\nFor more information, try '--help'.");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
