use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use nikodym_core::bounds::{default_width, final_bound, prime_powers, ratio_sweep, BoundInput, CChoice, Verdict, Q};
use nikodym_core::geometry::{is_weak_nikodym, read_point_set, NikodymCheck};
use nikodym_core::Field;
use serde::Deserialize;
use serde_json::json;

use super::{check_flags, config, render_point, tie_break};
use crate::output::{emit, Status, Table};
use crate::{GlobalOpts, TieBreakArg};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceJson {
    q: u64,
    d: u32,
    lines: u64,
    mp: Vec<u64>,
    #[serde(default)]
    c: Option<CJson>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CJson {
    /// "auto" or a rational such as "3/2".
    Text(String),
    Pair {
        num: String,
        den: String,
    },
}

fn parse_c(c: Option<CJson>) -> Result<CChoice> {
    let text = match c {
        None => return Ok(CChoice::Auto),
        Some(CJson::Text(t)) if t == "auto" => return Ok(CChoice::Auto),
        Some(CJson::Text(t)) => t,
        Some(CJson::Pair { num, den }) => format!("{num}/{den}"),
    };
    let v: Q = text.parse().map_err(|_| anyhow!("c: not a rational: {text}"))?;
    Ok(CChoice::Value(v))
}

fn load_instance(path: &Path, g: &GlobalOpts, tb: TieBreakArg) -> Result<BoundInput> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let j: InstanceJson = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(BoundInput::new(j.q, j.d, j.lines, j.mp, parse_c(j.c)?)?);
    }
    let set = read_point_set(&text, g.cap_points).with_context(|| format!("parsing {}", path.display()))?;
    match is_weak_nikodym(&set, tie_break(tb, g.seed)) {
        NikodymCheck::Holds(inst) => Ok(BoundInput::from_instance(&inst)?),
        NikodymCheck::Refuted { point, .. } => bail!(
            "{} is not a weak Nikodym set: no punctured line through {}",
            path.display(),
            render_point(set.space().field(), &point)
        ),
    }
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("--sweep expects LO:HI, got {s}"))?;
    let lo: u64 = lo.trim().parse().with_context(|| format!("--sweep {s}"))?;
    let hi: u64 = hi.trim().parse().with_context(|| format!("--sweep {s}"))?;
    if lo > hi {
        bail!("--sweep {s}: empty range");
    }
    Ok((lo, hi))
}

pub fn run(
    g: &GlobalOpts,
    q: Option<u64>,
    instance: Option<&Path>,
    sweep: Option<&str>,
    tb: TieBreakArg,
) -> Result<Status> {
    let width = default_width();
    if let Some(range) = sweep {
        let (lo, hi) = parse_range(range)?;
        let d = g.dim.unwrap_or(3);
        let qs = prime_powers(lo.max(3), hi);
        if qs.is_empty() {
            bail!("--sweep {range} contains no prime power >= 3");
        }
        let field = Field::from_order(qs[0])?;
        let cfg = config(g, "bound", &field, d, json!({ "sweep": range }));
        let rep = ratio_sweep(d as u32, &qs, &width)?;
        let mut table = Table::new(&["q", "x_max", "ratio"]);
        for row in &rep.rows {
            table.push(vec![
                row.q.to_string(),
                row.x_max.approx().to_string(),
                row.ratio_approx.to_string(),
            ]);
        }
        emit(&cfg, &rep, &table)?;
        return Ok(Status::from_bool(rep.within_factor_two != Verdict::Violated));
    }

    let (input, options) = match (q, instance) {
        (_, Some(path)) => {
            let input = load_instance(path, g, tb)?;
            let field = Field::from_order(input.q)?;
            check_flags(g, &field, input.d as usize)?;
            (
                Some(input),
                json!({ "instance": path.display().to_string(), "tie_break": tb }),
            )
        }
        (Some(q), None) => (None, json!({ "q": q })),
        (None, None) => bail!("one of --q, --instance, --sweep is required"),
    };
    let (q, d) = match &input {
        Some(i) => (i.q, i.d),
        None => (q.unwrap(), g.dim.unwrap_or(2) as u32),
    };
    let field = Field::from_order(q).with_context(|| format!("q = {q}"))?;
    let cfg = config(g, "bound", &field, d as usize, options);
    let rep = final_bound(q, d, input.as_ref(), &width)?;
    let mut table = Table::new(&["step", "verdict"]);
    for s in &rep.steps {
        table.push(vec![s.name.to_string(), verdict_text(s.verdict).to_string()]);
    }
    emit(&cfg, &rep, &table)?;
    Ok(Status::from_bool(
        rep.steps.iter().all(|s| s.verdict != Verdict::Violated),
    ))
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "violated",
        Verdict::Undecided => "undecided",
        Verdict::NotApplicable => "not_applicable",
    }
}
