//! `hypertrace`: exact hypergraph traces, composition audits and Estrada
//! brackets from the command line.
//!
//! Exit status is 0 on success, 1 for invalid input and 2 when a budget
//! limit refuses the request.

mod budget;
mod commands;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match commands::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 2 } else { 1 })
        }
    }
}
