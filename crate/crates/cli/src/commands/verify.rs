use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Result;
use nikodym_core::geometry::{instance_mp, is_kakeya, is_nikodym, is_weak_nikodym, NikodymCheck, PointSet};
use serde::Serialize;
use serde_json::json;

use super::{check_flags, config, load_set, render_point, tie_break, LineView};
use crate::output::{emit, Status, Table};
use crate::{GlobalOpts, Mode, TieBreakArg};

#[derive(Serialize)]
struct Assoc {
    index: u64,
    point: String,
    line: LineView,
}

#[derive(Serialize)]
struct Refutation {
    index: u64,
    point: String,
}

#[derive(Serialize)]
struct MpSummary {
    lines: u64,
    sum: u64,
    /// Histogram m -> number of points of the set with that m_p.
    histogram: BTreeMap<u64, u64>,
}

#[derive(Serialize)]
struct DirectionWitness {
    direction: String,
    line: Option<LineView>,
}

#[derive(Serialize)]
struct VerifyResult {
    mode: Mode,
    verdict: &'static str,
    q: u64,
    d: usize,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    refutation: Option<Refutation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    assoc: Option<Vec<Assoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mp: Option<MpSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    directions: Option<Vec<DirectionWitness>>,
}

pub fn run(g: &GlobalOpts, file: &Path, mode: Mode, tb: TieBreakArg) -> Result<Status> {
    let set = load_set(file, g.cap_points)?;
    let space = set.space();
    let field = space.field();
    check_flags(g, field, space.dim())?;
    let cfg = config(
        g,
        "verify",
        field,
        space.dim(),
        json!({ "file": file.display().to_string(), "mode": mode, "tie_break": tb }),
    );

    let mut result = VerifyResult {
        mode,
        verdict: "fail",
        q: space.q(),
        d: space.dim(),
        size: set.len(),
        refutation: None,
        assoc: None,
        mp: None,
        directions: None,
    };
    let mut table;
    let ok = match mode {
        Mode::Kakeya => {
            let check = is_kakeya(&set);
            table = Table::new(&["direction", "line_base", "line_dir"]);
            let mut dirs = Vec::new();
            for (dir, line) in &check.witnesses {
                let view = line.as_ref().map(|l| LineView::new(field, l));
                let (b, d) = view
                    .as_ref()
                    .map_or((String::new(), String::new()), |v| (v.base.clone(), v.dir.clone()));
                table.push(vec![render_point(field, dir), b, d]);
                dirs.push(DirectionWitness {
                    direction: render_point(field, dir),
                    line: view,
                });
            }
            result.directions = Some(dirs);
            check.holds()
        }
        Mode::Weak | Mode::Nikodym => {
            let policy = tie_break(tb, g.seed);
            let check = if mode == Mode::Weak {
                is_weak_nikodym(&set, policy)
            } else {
                is_nikodym(&set, policy)
            };
            table = Table::new(&["index", "point", "line_base", "line_dir"]);
            nikodym_result(&set, &check, &mut result, &mut table);
            check.holds()
        }
    };
    result.verdict = if ok { "pass" } else { "fail" };
    emit(&cfg, &result, &table)?;
    Ok(Status::from_bool(ok))
}

fn nikodym_result(set: &PointSet, check: &NikodymCheck, result: &mut VerifyResult, table: &mut Table) {
    let field = set.space().field();
    match check {
        NikodymCheck::Refuted { index, point } => {
            result.refutation = Some(Refutation {
                index: *index,
                point: render_point(field, point),
            });
        }
        NikodymCheck::Holds(inst) => {
            let mut assoc = Vec::new();
            for (&i, line) in inst.assoc() {
                let point = render_point(field, &set.space().point(i));
                let view = LineView::new(field, line);
                table.push(vec![i.to_string(), point.clone(), view.base.clone(), view.dir.clone()]);
                assoc.push(Assoc {
                    index: i,
                    point,
                    line: view,
                });
            }
            let mut histogram = BTreeMap::new();
            let mut sum = 0;
            for m in instance_mp(inst).into_values() {
                *histogram.entry(m).or_insert(0) += 1;
                sum += m;
            }
            result.assoc = Some(assoc);
            result.mp = Some(MpSummary {
                lines: inst.line_family().len() as u64,
                sum,
                histogram,
            });
        }
    }
}
