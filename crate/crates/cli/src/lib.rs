//! Config parsing, command dispatch and report layout for the `berko`
//! binary.

pub mod commands;
pub mod config;
pub mod report;

use serde_json::json;

use config::RunConfig;
use report::{Failure, Outcome, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Serializes an outcome as a JSON report or a CSV table. Returns the text
/// and whether every checked invariant held.
pub fn render(cfg: &RunConfig, format: Format, outcome: Outcome) -> Result<(String, bool), Failure> {
    match format {
        Format::Json => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "command": cfg.command,
                "field": cfg.field,
                "seed": cfg.seed,
                "holds": outcome.holds,
                "result": outcome.result,
            });
            report::validate(&v).map_err(|m| Failure {
                exit: 2,
                code: "schema_violation".into(),
                message: m,
                context: json!({}),
            })?;
            Ok((serde_json::to_string_pretty(&v).unwrap() + "\n", outcome.holds))
        }
        Format::Csv => {
            let (header, rows) = outcome
                .table
                .ok_or_else(|| Failure::config(format!("{} has no CSV form; use --format json", cfg.command)))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).unwrap();
            for row in rows {
                w.write_record(&row).unwrap();
            }
            Ok((String::from_utf8(w.into_inner().unwrap()).unwrap(), outcome.holds))
        }
    }
}
