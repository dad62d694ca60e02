use std::process::ExitCode;

use clap::Parser;
use genusone_cli::{error_exit_code, execute, render, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            print!("{}", render(&report, cli.format));
            ExitCode::from(report.status.exit_code())
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(error_exit_code(&e))
        }
    }
}
