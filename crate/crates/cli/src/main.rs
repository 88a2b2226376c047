//! `delta-springer`: exit status 0 on success, 1 on a failed check, 2 on a
//! usage error, 3 on an internal invariant violation.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::{run, Failure};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors and 0 for --help and --version
            e.exit();
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            let argv: Vec<String> = std::env::args().collect();
            let payload = serde_json::json!({
                "schema": delta_springer::diagrams::SCHEMA,
                "error": msg,
                "argv": argv,
                "version": env!("CARGO_PKG_VERSION"),
            });
            eprintln!("internal error: {msg}");
            eprintln!("reproduction: {payload}");
            ExitCode::from(3)
        }
    }
}
