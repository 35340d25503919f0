mod bound;
mod field_info;
mod search;
mod spread;
mod verify;

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use nikodym_core::geometry::{read_point_set, PointSet, TieBreak};
use nikodym_core::{Field, FieldElem, Line};
use serde::Serialize;
use serde_json::Value;

use crate::output::{CapsConfig, RunConfig, Status};
use crate::{Cli, Command, GlobalOpts, TieBreakArg};

const DEFAULT_FIELD: &str = "2^1";
const DEFAULT_DIM: usize = 2;

pub fn run(cli: &Cli) -> Result<Status> {
    let g = &cli.global;
    match &cli.command {
        Command::Verify { file, mode, tie_break } => verify::run(g, file, *mode, *tie_break),
        Command::Search { mode } => search::run(g, *mode),
        Command::Spread {
            points,
            grid,
            random,
            n,
            degree,
        } => spread::run(g, points.as_deref(), *grid, *random, n, *degree),
        Command::Bound {
            q,
            instance,
            sweep,
            tie_break,
        } => bound::run(g, *q, instance.as_deref(), sweep.as_deref(), *tie_break),
        Command::FieldInfo => field_info::run(g),
    }
}

fn config(g: &GlobalOpts, command: &'static str, field: &Field, dim: usize, options: Value) -> RunConfig {
    RunConfig {
        command,
        field: field.to_string(),
        dim,
        seed: g.seed,
        caps: CapsConfig {
            matrix_entries: g.cap_matrix,
            points: g.cap_points,
            budget: g.budget,
        },
        format: g.format,
        out: g.out.as_ref().map(|p| p.display().to_string()),
        options,
    }
}

/// Field and dimension from the flags, with defaults.
fn field_and_dim(g: &GlobalOpts) -> Result<(Field, usize)> {
    let spec = g.field.as_deref().unwrap_or(DEFAULT_FIELD);
    let field = Field::from_spec(spec).with_context(|| format!("--field {spec}"))?;
    Ok((field, g.dim.unwrap_or(DEFAULT_DIM)))
}

/// Rejects flags that contradict what an input file fixes.
fn check_flags(g: &GlobalOpts, field: &Field, dim: usize) -> Result<()> {
    if let Some(spec) = &g.field {
        let flag = Field::from_spec(spec).with_context(|| format!("--field {spec}"))?;
        if flag.id() != field.id() {
            bail!(
                "--field {spec} contradicts the input, which is over GF({})",
                field.order()
            );
        }
    }
    if let Some(d) = g.dim {
        if d != dim {
            bail!("--dim {d} contradicts the input, which has dimension {dim}");
        }
    }
    Ok(())
}

fn load_set(path: &Path, cap: u64) -> Result<PointSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_point_set(&text, cap).with_context(|| format!("parsing {}", path.display()))
}

fn tie_break(arg: TieBreakArg, seed: u64) -> TieBreak {
    match arg {
        TieBreakArg::Canonical => TieBreak::Canonical,
        TieBreakArg::Seeded => TieBreak::Seeded { seed },
    }
}

/// A point in set-file form, coordinates joined by commas.
fn render_point(field: &Field, x: &[FieldElem]) -> String {
    x.iter().map(|&c| field.render(c)).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, Serialize)]
struct LineView {
    base: String,
    dir: String,
}

impl LineView {
    fn new(field: &Field, line: &Line) -> Self {
        LineView {
            base: render_point(field, line.base()),
            dir: render_point(field, line.dir()),
        }
    }
}
