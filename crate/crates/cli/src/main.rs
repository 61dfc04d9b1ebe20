use std::process::ExitCode;

use bihamil_cli::{run, Cli, CliError};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|out| match &cli.global.output {
        Some(path) => std::fs::write(path, out).map_err(CliError::from),
        None => {
            print!("{out}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bihamil: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
