use std::path::Path;

use anyhow::{bail, Result};
use nikodym_core::spread::{
    is_spread_at, kernel_witness, max_forced_degree, random_instance, standard_grid, verify_witness, ForcedDegree,
    InstanceSource, SpreadCertificate, SpreadInstance,
};
use serde::Serialize;
use serde_json::json;

use super::{check_flags, config, field_and_dim, load_set};
use crate::output::{emit, Status, Table};
use crate::GlobalOpts;

#[derive(Serialize)]
struct InstanceView<'a> {
    k: usize,
    r: usize,
    source: &'a InstanceSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<&'a str>,
}

/// A kernel polynomial of a rank-deficient certificate, re-checked by
/// evaluating its Hasse derivatives at every point.
#[derive(Serialize)]
struct Witness {
    n: u32,
    #[serde(rename = "D")]
    d: u32,
    polynomial: String,
    verified: bool,
}

#[derive(Serialize)]
struct TrendRow {
    n: u32,
    d_star: u32,
    d_star_over_n: f64,
    k_root: f64,
}

/// Stated in every spread output.
const SCOPE: &str = "certificates hold at the stated (n, D) only; D*(n)/n is a finite trend, not a limit";

#[derive(Serialize)]
struct SpreadOut<'a> {
    scope: &'static str,
    instance: InstanceView<'a>,
    certificates: Vec<SpreadCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    forced: Option<Vec<ForcedDegree>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trend: Option<Vec<TrendRow>>,
    witnesses: Vec<Witness>,
}

pub fn run(
    g: &GlobalOpts,
    points: Option<&Path>,
    grid: Option<usize>,
    random: Option<usize>,
    ns: &[u32],
    degree: Option<u32>,
) -> Result<Status> {
    if ns.is_empty() || ns.contains(&0) {
        bail!("--n needs positive multiplicities");
    }
    let (inst, source_opt) = if let Some(path) = points {
        let set = load_set(path, g.cap_points)?;
        let space = set.space();
        check_flags(g, space.field(), space.dim())?;
        let inst = SpreadInstance::new(space.field(), space.dim(), set.points())?;
        (inst, json!({ "points": path.display().to_string() }))
    } else {
        let (field, r) = field_and_dim(g)?;
        match (grid, random) {
            (Some(a), _) => (standard_grid(&field, r, a)?, json!({ "grid": a })),
            (_, Some(k)) => (random_instance(&field, k, r, g.seed)?, json!({ "random": k })),
            _ => bail!("one of --points, --grid, --random is required"),
        }
    };
    let options = json!({ "source": source_opt, "n": ns, "degree": degree });
    let cfg = config(g, "spread", inst.field(), inst.r(), options);

    let cap = g.cap_matrix;
    let mut certificates = Vec::new();
    let mut witnesses = Vec::new();
    let mut witness_for = |cert: &SpreadCertificate| -> Result<()> {
        if cert.full_column_rank {
            return Ok(());
        }
        let poly = kernel_witness(&inst, cert.n, cert.d, cap)?
            .ok_or_else(|| anyhow::anyhow!("rank-deficient matrix without a kernel vector"))?;
        witnesses.push(Witness {
            n: cert.n,
            d: cert.d,
            verified: !poly.is_zero() && verify_witness(&inst, &poly, cert.n, cert.d),
            polynomial: poly.to_string(),
        });
        Ok(())
    };

    let (forced, trend, mut table, status) = match degree {
        Some(d) => {
            let mut table = Table::new(&["n", "D", "rank", "columns", "rows", "full_column_rank"]);
            for &n in ns {
                let cert = is_spread_at(&inst, n, d, cap)?;
                witness_for(&cert)?;
                table.push(vec![
                    n.to_string(),
                    d.to_string(),
                    cert.rank.to_string(),
                    cert.columns.to_string(),
                    cert.rows.to_string(),
                    cert.full_column_rank.to_string(),
                ]);
                certificates.push(cert);
            }
            let ok = certificates.iter().all(|c| c.full_column_rank);
            (None, None, table, Status::from_bool(ok))
        }
        None => {
            let mut table = Table::new(&["n", "D_star", "D_star_over_n", "k_root"]);
            let mut forced = Vec::new();
            let mut trend = Vec::new();
            for &n in ns {
                let f = max_forced_degree(&inst, n, cap)?;
                if let Some(fail) = &f.failing {
                    witness_for(fail)?;
                }
                let row = TrendRow {
                    n,
                    d_star: f.d_star,
                    d_star_over_n: f.d_star as f64 / n as f64,
                    k_root: f.k_root,
                };
                table.push(vec![
                    n.to_string(),
                    row.d_star.to_string(),
                    row.d_star_over_n.to_string(),
                    row.k_root.to_string(),
                ]);
                certificates.push(f.certificate.clone());
                trend.push(row);
                forced.push(f);
            }
            (Some(forced), Some(trend), table, Status::Pass)
        }
    };
    if witnesses.iter().any(|w| !w.verified) {
        bail!("a kernel witness failed verification");
    }

    table.notes.push(SCOPE);
    let out = SpreadOut {
        scope: SCOPE,
        instance: InstanceView {
            k: inst.k(),
            r: inst.r(),
            source: inst.source(),
            warning: inst.warning(),
        },
        certificates,
        forced,
        trend,
        witnesses,
    };
    emit(&cfg, &out, &table)?;
    Ok(status)
}
