//! Output envelope shared by every command.

use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

use crate::Format;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CapsConfig {
    pub matrix_entries: u64,
    pub points: u64,
    pub budget: u64,
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub field: String,
    pub dim: usize,
    pub seed: u64,
    pub caps: CapsConfig,
    pub format: Format,
    pub out: Option<String>,
    /// Command-specific options.
    pub options: Value,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    config: &'a RunConfig,
    result: &'a T,
}

/// The CSV view of a result.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Printed as `# note=` lines above the header.
    pub notes: Vec<&'static str>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Renders the result in the configured format and writes it out.
pub fn emit<T: Serialize>(cfg: &RunConfig, result: &T, table: &Table) -> Result<()> {
    let text = match cfg.format {
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                config: cfg,
                result,
            };
            let mut s = serde_json::to_string_pretty(&env)?;
            s.push('\n');
            s
        }
        Format::Csv => render_csv(cfg, table)?,
    };
    match &cfg.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {path}"))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render_csv(cfg: &RunConfig, table: &Table) -> Result<String> {
    let mut out = format!(
        "# schema_version={SCHEMA_VERSION}\n# config={}\n",
        serde_json::to_string(cfg)?
    );
    for note in &table.notes {
        out.push_str(&format!("# note={note}\n"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    out.push_str(&String::from_utf8(w.into_inner()?)?);
    Ok(out)
}
