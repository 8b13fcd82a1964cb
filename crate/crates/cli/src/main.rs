use std::process::ExitCode;

use clap::Parser;
use kgrad_cli::{run_cli, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run_cli(&cli) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.render_json(cli.timings));
            } else {
                print!("{}", report.render_text(cli.timings));
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(CliError::Help(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
