use serde::Serialize;
use serde_json::Value;

use crate::analyses::Outcome;
use crate::config::AnalysisConfig;
use crate::error::CliError;

pub const SCHEMA: &str = "bihamil/1";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    pub config: AnalysisConfig,
    pub input_digest: String,
    pub payload: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, config: &AnalysisConfig, input_digest: String, outcome: &Outcome) -> Self {
        Self {
            schema: SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config: config.clone(),
            input_digest,
            payload: outcome.payload.clone(),
            warnings: outcome.warnings.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Internal(format!("serialization: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_text(&self, outcome: &Outcome) -> String {
        let mut out = format!(
            "bihamil {} {} (seed {}, input {})\n",
            self.tool_version,
            self.command,
            self.config.seed,
            &self.input_digest[..12]
        );
        for line in &outcome.text {
            out.push_str(line);
            out.push('\n');
        }
        for w in &self.warnings {
            out.push_str("warning: ");
            out.push_str(w);
            out.push('\n');
        }
        out
    }
}
