use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

/// Scheduling and output settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisConfig {
    pub seed: u64,
    pub lambda_samples: usize,
    pub point_samples: usize,
    pub degree_bound: u32,
    /// Bound on numerators and denominators of scheduled coordinates.
    pub coefficient_height: u32,
    pub output_format: OutputFormat,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            lambda_samples: 7,
            point_samples: 10,
            degree_bound: 4,
            coefficient_height: 10,
            output_format: OutputFormat::Text,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let counts = [
            ("--lambda-samples", self.lambda_samples as u64),
            ("--points", self.point_samples as u64),
            ("--degree", self.degree_bound as u64),
            ("--height", self.coefficient_height as u64),
        ];
        for (flag, v) in counts {
            if v == 0 {
                return Err(CliError::Input(format!("{flag} must be positive")));
            }
        }
        Ok(())
    }

    pub fn genericity(&self) -> bihamil_core::canonical::GenericityConfig {
        bihamil_core::canonical::GenericityConfig {
            seed: self.seed,
            height: self.coefficient_height,
        }
    }
}
