//! Job configuration: a JSON file merged with command-line flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use dshier::HalfInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::Failure;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Built-in λ-bracket tables for `pva check`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TableChoice {
    #[default]
    Virasoro,
    Derivation,
    /// The affine pencil of the configured algebra and `E` of its triple.
    Affine,
}

/// Every field is optional so that a config file and flags can be layered.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    /// `slN`, `soN`, `spN`, `g2`, or a path to an algebra JSON file.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    /// Jordan type of the nilpotent, e.g. `3,2,2`.
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
    /// Nilpotent label for `g2`: `A1`, `~A1` or `G2`.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotent_label: Option<String>,
    /// `auto`, or a path to a triple JSON file written by `triple build`.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<String>,
    /// Degree through which the hierarchy is solved, e.g. `5` or `5/2`.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<HalfInt>,
    /// Number of conserved densities (or Lenard steps).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub densities: Option<usize>,
    #[arg(long = "seed", value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    /// Random samples per seed in probes.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[arg(long, value_enum)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableChoice>,
    /// First Lenard functional, as a density in the variable `u`.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<String>,
    /// Output file; a directory for `hierarchy run`.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `over` win.
    pub fn overlay(self, over: JobConfig) -> JobConfig {
        JobConfig {
            algebra: over.algebra.or(self.algebra),
            partition: over.partition.or(self.partition),
            nilpotent_label: over.nilpotent_label.or(self.nilpotent_label),
            triple: over.triple.or(self.triple),
            max_degree: over.max_degree.or(self.max_degree),
            densities: over.densities.or(self.densities),
            seeds: over.seeds.or(self.seeds),
            trials: over.trials.or(self.trials),
            table: over.table.or(self.table),
            start: over.start.or(self.start),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
        }
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if let Some(m) = self.max_degree {
            if m < HalfInt::HALF {
                return Err(Failure::config(format!("max_degree must be at least 1/2, got {m}")));
            }
        }
        if self.densities == Some(0) {
            return Err(Failure::config("densities must be at least 1"));
        }
        if self.seeds.as_ref().is_some_and(|s| s.is_empty()) {
            return Err(Failure::config("seed list is empty"));
        }
        if self.trials == Some(0) {
            return Err(Failure::config("trials must be at least 1"));
        }
        for path in
            [self.algebra.as_deref().filter(|a| a.ends_with(".json")), self.triple.as_deref().filter(|t| *t != "auto")]
                .into_iter()
                .flatten()
        {
            if !Path::new(path).is_file() {
                return Err(Failure::config(format!("file not found: {path}")));
            }
        }
        Ok(())
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn seeds(&self) -> Vec<u64> {
        self.seeds.clone().unwrap_or_else(|| vec![1])
    }

    /// SHA-256 of the command and the canonical JSON of the configuration.
    /// The output location is left out.
    pub fn hash(&self, command: &str) -> String {
        let canon = JobConfig { out: None, ..self.clone() };
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        h.update(b"\n");
        h.update(serde_json::to_string(&canon).expect("config serializes").as_bytes());
        format!("{:x}", h.finalize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: JobConfig =
            serde_json::from_str(r#"{"algebra": "so7", "partition": [3, 2, 2], "densities": 2}"#).unwrap();
        let flags = JobConfig { densities: Some(3), ..Default::default() };
        let c = file.overlay(flags);
        assert_eq!(c.algebra.as_deref(), Some("so7"));
        assert_eq!(c.partition, Some(vec![3, 2, 2]));
        assert_eq!(c.densities, Some(3));
    }

    #[test]
    fn validation() {
        let bad = JobConfig { max_degree: Some(HalfInt::ZERO), ..Default::default() };
        assert_eq!(bad.validate().unwrap_err().code, 2);
        let bad = JobConfig { densities: Some(0), ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = JobConfig { triple: Some("/nonexistent/triple.json".into()), ..Default::default() };
        assert!(bad.validate().is_err());
        assert!(JobConfig { triple: Some("auto".into()), ..Default::default() }.validate().is_ok());
        assert!(serde_json::from_str::<JobConfig>(r#"{"algebr": "sl2"}"#).is_err());
    }

    #[test]
    fn hash_ignores_output_path() {
        let a = JobConfig { algebra: Some("sl2".into()), ..Default::default() };
        let b = JobConfig { out: Some("x.json".into()), ..a.clone() };
        assert_eq!(a.hash("classify"), b.hash("classify"));
        assert_ne!(a.hash("classify"), a.hash("triple build"));
        assert_eq!(a.hash("classify").len(), 64);
    }
}
