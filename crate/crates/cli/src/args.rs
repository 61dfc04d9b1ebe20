use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::config::{AnalysisConfig, OutputFormat};

#[derive(Debug, Parser)]
#[command(name = "bihamil", version, about = "Exact analysis of Lie-Poisson pencils and coadjoint-orbit reductions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Seed of the point schedule.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Number of pencil directions sampled per point.
    #[arg(long, global = true, default_value_t = 7)]
    pub lambda_samples: usize,
    /// Number of scheduled points when none are given explicitly.
    #[arg(long = "points", global = true, default_value_t = 10)]
    pub point_samples: usize,
    /// Degree bound for Casimir searches.
    #[arg(long = "degree", global = true, default_value_t = 4)]
    pub degree_bound: u32,
    /// Bound on numerators and denominators of scheduled coordinates.
    #[arg(long = "height", global = true, default_value_t = 10)]
    pub coefficient_height: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

impl GlobalArgs {
    pub fn config(&self) -> AnalysisConfig {
        AnalysisConfig {
            seed: self.seed,
            lambda_samples: self.lambda_samples,
            point_samples: self.point_samples,
            degree_bound: self.degree_bound,
            coefficient_height: self.coefficient_height,
            output_format: self.format,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check [c,c] = 0 and whether (c, c~) is a Poisson pair.
    CheckJacobi(InputArgs),
    /// Kronecker/Jordan invariants and completeness of a pencil at points.
    Pencil(InputArgs),
    /// Classify points against Sing, the incompleteness and irregularity sets.
    Classify(InputArgs),
    /// Orbit and CR dimensions at points.
    Orbit(InputArgs),
    /// Pointwise reduction-completeness report.
    Reduce(InputArgs),
    /// Casimir family construction with involutivity and invariance checks.
    Integrals(InputArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckJacobi(_) => "check-jacobi",
            Command::Pencil(_) => "pencil",
            Command::Classify(_) => "classify",
            Command::Orbit(_) => "orbit",
            Command::Reduce(_) => "reduce",
            Command::Integrals(_) => "integrals",
        }
    }

    pub fn input(&self) -> &InputArgs {
        match self {
            Command::CheckJacobi(a)
            | Command::Pencil(a)
            | Command::Classify(a)
            | Command::Orbit(a)
            | Command::Reduce(a)
            | Command::Integrals(a) => a,
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("subject").required(true).multiple(false)))]
pub struct InputArgs {
    /// Catalog algebra name.
    #[arg(long, group = "subject")]
    pub algebra: Option<String>,
    /// Algebra in the JSON schema.
    #[arg(long, group = "subject")]
    pub algebra_file: Option<PathBuf>,
    /// Catalog fixture pair, e.g. kron_2068 or jordan4_lam(3).
    #[arg(long, group = "subject")]
    pub fixture: Option<String>,
    /// Pair of bivector fields in the JSON schema.
    #[arg(long, group = "subject")]
    pub pair_file: Option<PathBuf>,
    /// Point literal such as "(1,i,0)"; may be repeated.
    #[arg(long = "point", allow_hyphen_values = true)]
    pub points: Vec<String>,
    /// JSON array of points.
    #[arg(long, conflicts_with = "points")]
    pub points_file: Option<PathBuf>,
}
