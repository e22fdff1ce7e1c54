//! Run configuration: defaults, `key=value` config files, and flag
//! overrides. Every command embeds its effective config in the report so a
//! run can be replayed exactly.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

/// Environment variable naming the directory that relative `--output` paths
/// are resolved against.
pub const OUTPUT_DIR_ENV: &str = "SFORM_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Table => "table",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => bail!("unknown output format {other:?} (expected table, json, or csv)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub restarts: u32,
    pub max_iters: u32,
    pub order_cap: u64,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            restarts: 10,
            max_iters: 3000,
            order_cap: 2000,
            output_format: OutputFormat::Table,
            output_path: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iters == 0 || self.order_cap == 0 {
            bail!("restarts, max-iters, and order-cap must be positive");
        }
        Ok(())
    }

    /// Apply `key=value` lines from a config file. Unknown keys are errors;
    /// `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("{}:{}: expected key=value", path.display(), lineno + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let parse = |what: &str| -> Result<u64> {
                value
                    .parse::<u64>()
                    .with_context(|| format!("{}:{}: bad {what}", path.display(), lineno + 1))
            };
            match key {
                "seed" => self.seed = parse("seed")?,
                "restarts" => self.restarts = parse("restarts")? as u32,
                "max_iters" => self.max_iters = parse("max_iters")? as u32,
                "order_cap" => self.order_cap = parse("order_cap")?,
                "output_format" => self.output_format = value.parse()?,
                "output_path" => self.output_path = Some(PathBuf::from(value)),
                other => bail!(
                    "{}:{}: unknown config key {other:?}",
                    path.display(),
                    lineno + 1
                ),
            }
        }
        Ok(())
    }

    /// Resolve the output path against `SFORM_OUTPUT_DIR` when relative.
    pub fn resolved_output_path(&self) -> Option<PathBuf> {
        let path = self.output_path.as_ref()?;
        if path.is_relative() {
            if let Ok(dir) = std::env::var(OUTPUT_DIR_ENV) {
                return Some(PathBuf::from(dir).join(path));
            }
        }
        Some(path.clone())
    }
}
