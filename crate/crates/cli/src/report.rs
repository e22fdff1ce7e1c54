//! Self-describing reports: every command produces one, embedding the
//! effective configuration so that replaying it reproduces the payload
//! bit-for-bit (the timestamp is the only field excluded from that
//! guarantee).

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{OutputFormat, RunConfig};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub timestamp: String,
    pub config: RunConfig,
    pub payload: Value,
    /// Overall verdict where the command has one (harness, verify-all, ...).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: &RunConfig, payload: Value) -> Report {
        Report {
            command: command.into(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            config: config.clone(),
            payload,
            pass: None,
        }
    }

    pub fn with_pass(mut self, pass: bool) -> Report {
        self.pass = Some(pass);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are serializable")
    }

    /// Render for the terminal. `csv` holds a pre-rendered table for the
    /// commands that support it (scans).
    pub fn render(&self, csv: Option<&str>) -> Result<String> {
        match self.config.output_format {
            OutputFormat::Json => Ok(self.to_json()),
            OutputFormat::Csv => csv
                .map(str::to_owned)
                .context("csv output is only available for `extent scan`"),
            OutputFormat::Table => Ok(render_table(self)),
        }
    }

    /// Persist to the configured output path, if any.
    pub fn persist(&self, rendered: &str) -> Result<()> {
        if let Some(path) = self.config.resolved_output_path() {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)
                        .with_context(|| format!("creating {}", parent.display()))?;
                }
            }
            std::fs::write(&path, rendered)
                .with_context(|| format!("writing report to {}", path.display()))?;
        }
        Ok(())
    }
}

fn render_table(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", report.command));
    if let Some(pass) = report.pass {
        out.push_str(&format!("verdict: {}\n", if pass { "pass" } else { "FAIL" }));
    }
    render_value(&mut out, &report.payload, 0);
    out
}

fn render_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(out, val, indent + 1);
                    }
                    scalar => out.push_str(&format!("{pad}{key}: {scalar}\n")),
                }
            }
        }
        Value::Array(items) => {
            if items.iter().all(|v| !matches!(v, Value::Object(_) | Value::Array(_))) {
                let rendered: Vec<String> = items.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("{pad}[{}]\n", rendered.join(", ")));
            } else {
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&format!("{pad}- [{i}]\n"));
                    render_value(out, item, indent + 1);
                }
            }
        }
        scalar => out.push_str(&format!("{pad}{scalar}\n")),
    }
}
