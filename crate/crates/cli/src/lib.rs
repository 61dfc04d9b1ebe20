//! Command-line front end for `bihamil-core`: input formats, the registry of
//! analyses behind each subcommand, and report assembly.

pub mod analyses;
pub mod args;
pub mod config;
pub mod error;
pub mod input;
pub mod io;
pub mod report;

pub use args::Cli;
pub use config::{AnalysisConfig, OutputFormat};
pub use error::CliError;
pub use report::Report;

/// Runs a parsed command line and returns the rendered report.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let config = cli.global.config();
    config.validate()?;
    let name = cli.command.name();
    let analysis = analyses::lookup(name).ok_or_else(|| CliError::Internal(format!("no analysis registered as {name}")))?;
    let input = input::Input::from_args(cli.command.input())?;
    let outcome = analysis.run(&input, &config)?;
    let report = Report::new(name, &config, input.digest(), &outcome);
    match config.output_format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Text => Ok(report.to_text(&outcome)),
    }
}
