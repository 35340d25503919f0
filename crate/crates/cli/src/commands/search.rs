use anyhow::Result;
use nikodym_core::geometry::{min_set, SearchMode, Space};
use serde::Serialize;
use serde_json::json;

use super::{config, field_and_dim, render_point};
use crate::output::{emit, Status, Table};
use crate::{GlobalOpts, Mode};

#[derive(Serialize)]
struct SearchOut {
    mode: SearchMode,
    /// "minimum" only when every smaller set was ruled out.
    kind: &'static str,
    q: u64,
    d: usize,
    size: usize,
    exact: bool,
    lower_bound: usize,
    evaluations: u64,
    points: Vec<String>,
}

pub fn run(g: &GlobalOpts, mode: Mode) -> Result<Status> {
    let (field, d) = field_and_dim(g)?;
    let cfg = config(g, "search", &field, d, json!({ "mode": mode }));
    let space = Space::new(&field, d, g.cap_points)?;
    let mode = match mode {
        Mode::Weak => SearchMode::Weak,
        Mode::Nikodym => SearchMode::Nikodym,
        Mode::Kakeya => SearchMode::Kakeya,
    };
    let res = min_set(&space, mode, g.budget, g.seed)?;

    let points: Vec<String> = res.set.points().iter().map(|x| render_point(&field, x)).collect();
    let mut table = Table::new(&["index", "point"]);
    for (i, p) in res.set.indices().zip(&points) {
        table.push(vec![i.to_string(), p.clone()]);
    }
    let out = SearchOut {
        mode,
        kind: if res.exact { "minimum" } else { "upper_bound" },
        q: space.q(),
        d,
        size: res.size(),
        exact: res.exact,
        lower_bound: res.lower_bound,
        evaluations: res.evaluations,
        points,
    };
    emit(&cfg, &out, &table)?;
    Ok(Status::Pass)
}
