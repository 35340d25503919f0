//! Exact evaluation of the dimension-counting inequality and the chain of
//! estimates that turns it into an upper bound on the number of lines.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::interval::{q_int, q_pow, root_enclosure, ser_q, Enclosure, Verdict, Q};
use super::volume::codim_cp_enclosure;
use super::BoundsError;
use crate::field::prime_power;
use crate::geometry::{instance_mp, NikodymInstance};

/// The constant c of the dimension count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CChoice {
    /// max(|L|^(1/(d-1)) / (q-1), max_p m_p^(1/(d-1))).
    Auto,
    Value(Q),
}

#[derive(Debug, Clone)]
pub struct BoundInput {
    pub q: u64,
    pub d: u32,
    /// |L|.
    pub lines: u64,
    /// m_p for each p in N, zeros included.
    pub mp: Vec<u64>,
    pub c: CChoice,
}

impl BoundInput {
    pub fn new(q: u64, d: u32, lines: u64, mp: Vec<u64>, c: CChoice) -> Result<Self, BoundsError> {
        let input = BoundInput { q, d, lines, mp, c };
        input.validate()?;
        Ok(input)
    }

    pub fn from_instance(inst: &NikodymInstance) -> Result<Self, BoundsError> {
        let space = inst.set().space();
        Self::new(
            space.q(),
            space.dim() as u32,
            inst.line_family().len() as u64,
            instance_mp(inst).into_values().collect(),
            CChoice::Auto,
        )
    }

    pub fn validate(&self) -> Result<(), BoundsError> {
        let bad = |m: String| Err(BoundsError::InvalidInput(m));
        if self.d < 2 {
            return bad(format!("d must be at least 2, got {}", self.d));
        }
        if self.q < 2 {
            return bad(format!("q must be at least 2, got {}", self.q));
        }
        let sum: u128 = self.mp.iter().map(|&m| m as u128).sum();
        let want = (self.q as u128 - 1) * self.lines as u128;
        if sum != want {
            return bad(format!("sum of m_p is {sum}, expected (q-1)|L| = {want}"));
        }
        let total = (self.q as f64).powi(self.d as i32);
        if (self.mp.len() as f64) + (self.lines as f64) > total {
            return bad(format!("|N| + |L| = {} exceeds q^d", self.mp.len() as u64 + self.lines));
        }
        if let CChoice::Value(c) = &self.c {
            if *c <= Q::zero() {
                return bad("c must be positive".into());
            }
        }
        Ok(())
    }

    fn counts(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for &m in &self.mp {
            *out.entry(m).or_insert(0) += 1;
        }
        out
    }
}

/// One inequality with both sides enclosed; the verdict is recomputable
/// from the enclosures.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub label: &'static str,
    pub lhs: Enclosure,
    pub relation: &'static str,
    pub rhs: Enclosure,
    pub verdict: Verdict,
}

impl Check {
    fn le(label: &'static str, lhs: Enclosure, rhs: Enclosure) -> Self {
        let verdict = lhs.le(&rhs);
        Check {
            label,
            lhs,
            relation: "<=",
            rhs,
            verdict,
        }
    }

    fn ge(label: &'static str, lhs: Enclosure, rhs: Enclosure) -> Self {
        let verdict = lhs.ge(&rhs);
        Check {
            label,
            lhs,
            relation: ">=",
            rhs,
            verdict,
        }
    }

    fn eq(label: &'static str, lhs: Q, rhs: Q) -> Self {
        let verdict = Verdict::from_bool(lhs == rhs);
        Check {
            label,
            lhs: lhs.into(),
            relation: "=",
            rhs: rhs.into(),
            verdict,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub name: &'static str,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

impl Step {
    fn new(name: &'static str, checks: Vec<Check>) -> Self {
        Step {
            name,
            verdict: Verdict::all(checks.iter().map(|c| c.verdict)),
            checks,
        }
    }
}

/// A step decided by an exact rational check, with the enclosure form of
/// the same inequality kept for reference.
fn exact_step(name: &'static str, enclosure: Check, exact: Check) -> Step {
    Step {
        name,
        verdict: exact.verdict,
        checks: vec![enclosure, exact],
    }
}

/// Roots m^(1/k) for each distinct m, computed once.
struct Roots {
    k: u32,
    width: Q,
    cache: BTreeMap<u64, Enclosure>,
}

impl Roots {
    fn new(k: u32, width: &Q) -> Self {
        Roots {
            k,
            width: width.clone(),
            cache: BTreeMap::new(),
        }
    }

    fn of(&mut self, m: u64) -> Enclosure {
        let (k, w) = (self.k, &self.width);
        self.cache
            .entry(m)
            .or_insert_with(|| root_enclosure(&q_int(m as i64), k, w))
            .clone()
    }
}

fn qu(n: u64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn qpow_u(q: u64, d: u32) -> Q {
    Q::from_integer(BigInt::from(q).pow(d))
}

/// Σ count·m·m^(1/(d-1)), i.e. Σ m_p^(d/(d-1)).
fn sum_pow(counts: &BTreeMap<u64, u64>, roots: &mut Roots) -> Enclosure {
    counts.iter().fold(Enclosure::int(0), |acc, (&m, &n)| {
        acc.add(&roots.of(m).scale(&(qu(m) * qu(n))))
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DimCountingReport {
    pub c: Enclosure,
    pub c_auto: bool,
    pub lines: u64,
    pub points: usize,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

/// Evaluates the dimension-counting inequality, its rewritten form, and
/// the comparison of leading coefficients it comes from.
pub fn check_dim_counting(input: &BoundInput, width: &Q) -> Result<DimCountingReport, BoundsError> {
    input.validate()?;
    let (q, d, l) = (input.q, input.d, input.lines);
    let mut roots = Roots::new(d - 1, width);
    let counts = input.counts();
    let lr = roots.of(l);
    let lq = Enclosure::point(qu(l));
    let mut checks = vec![Check::eq(
        "mp_sum",
        input.mp.iter().map(|&m| qu(m)).sum(),
        qu((q - 1) * l),
    )];

    let s = sum_pow(&counts, &mut roots);
    let msum = Enclosure::point(input.mp.iter().map(|&m| qu(m)).sum());
    checks.push(Check::le("lemma", s.sub(&msum), lr.sub(&Enclosure::int(1)).mul(&lq)));
    checks.push(Check::le(
        "rewritten",
        s.clone(),
        lr.mul(&lq).add(&Enclosure::point(qu(l) * q_int(q as i64 - 2))),
    ));

    let max_root = counts
        .keys()
        .map(|&m| roots.of(m))
        .fold(Enclosure::int(0), |a, b| a.max(&b));
    let (c, c_auto) = match &input.c {
        CChoice::Auto => (lr.scale(&(Q::one() / q_int(q as i64 - 1))).max(&max_root), true),
        CChoice::Value(c) => (Enclosure::point(c.clone()), false),
    };

    // dim V coefficient: -(d-1)/d! L^(d/(d-1)) + (q-1) c L / (d-1)!.
    let fact = |n: u32| super::interval::factorial(n);
    let dim_coeff = lr
        .scale(&(-qu(l) * q_int(d as i64 - 1) / fact(d)))
        .add(&c.scale(&(q_int(q as i64 - 1) * qu(l) / fact(d - 1))));
    let codim_sum = counts.iter().fold(Enclosure::int(0), |acc, (&m, &n)| {
        let r = roots.of(m);
        acc.add(&codim_cp_enclosure(m, &r, &c, q, d).scale(&qu(n)))
    });
    let mut coeff = Check::le("leading_coefficients", dim_coeff, codim_sum);
    if !c_auto {
        let pre = Verdict::all(
            counts
                .keys()
                .filter(|&&m| m > 0)
                .map(|&m| c.ge(&roots.of(m)))
                .chain([c.scale(&q_int(q as i64 - 1)).ge(&lr)]),
        );
        if pre != Verdict::Holds {
            coeff.verdict = Verdict::NotApplicable;
        }
    }
    checks.push(coeff);
    Ok(DimCountingReport {
        c,
        c_auto,
        lines: l,
        points: input.mp.len(),
        verdict: Verdict::all(checks.iter().map(|c| c.verdict)),
        checks,
    })
}

/// `((d-1)(q-2) q^d)^((d-1)/d)`.
pub fn x_max(q: u64, d: u32, width: &Q) -> Enclosure {
    let base = qu((d as u64 - 1) * (q - 2)) * qpow_u(q, d);
    root_enclosure(&q_pow(&base, d - 1), d, width)
}

/// `x_max / q^(d - 1/d) = ((d-1)(q-2)/q)^((d-1)/d)`.
pub fn x_max_ratio(q: u64, d: u32, width: &Q) -> Enclosure {
    let base = qu((d as u64 - 1) * (q - 2)) / qu(q);
    root_enclosure(&q_pow(&base, d - 1), d, width)
}

/// Exact check of `(1-t)^(1/(d-1)) <= 1 - t/(d-1)` for t in [0, 1], by
/// raising both (nonnegative) sides to the power d-1.
pub fn bernoulli_down_exact(t: &Q, d: u32) -> Verdict {
    if d < 2 || *t < Q::zero() || *t > Q::one() {
        return Verdict::NotApplicable;
    }
    let rhs = Q::one() - t / q_int(d as i64 - 1);
    Verdict::from_bool(Q::one() - t <= q_pow(&rhs, d - 1))
}

/// Exact check of `(1-t)^(d/(d-1)) >= 1 - d t/(d-1)` for t in [0, 1].
pub fn bernoulli_up_exact(t: &Q, d: u32) -> Verdict {
    if d < 2 || *t < Q::zero() || *t > Q::one() {
        return Verdict::NotApplicable;
    }
    let rhs = Q::one() - q_int(d as i64) * t / q_int(d as i64 - 1);
    if rhs < Q::zero() {
        return Verdict::Holds;
    }
    Verdict::from_bool(q_pow(&(Q::one() - t), d) >= q_pow(&rhs, d - 1))
}

/// Exact check of `(1-A)^(-1) (1-B) >= 1 + A - B`, stated for A >= B >= 0
/// and A < 1.
pub fn combine_helper_exact(a: &Q, b: &Q) -> Verdict {
    if !(*b >= Q::zero() && a >= b && *a < Q::one()) {
        return Verdict::NotApplicable;
    }
    Verdict::from_bool((Q::one() - b) / (Q::one() - a) >= Q::one() + a - b)
}

#[derive(Debug, Clone, Serialize)]
pub struct Regime {
    #[serde(serialize_with = "ser_q")]
    pub a: Q,
    #[serde(serialize_with = "ser_q")]
    pub b: Q,
    /// Whether A >= B, the range of the combining inequality.
    pub a_ge_b: bool,
    /// x / q^(d-1); the chain is only informative when this is large.
    #[serde(serialize_with = "ser_q")]
    pub x_over_q_pow: Q,
}

#[derive(Debug, Clone, Serialize)]
pub struct MpCount {
    pub m: u64,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub q: u64,
    pub d: u32,
    pub x: u64,
    pub x_source: &'static str,
    #[serde(serialize_with = "ser_q")]
    pub width: Q,
    pub mp: Vec<MpCount>,
    pub regime: Regime,
    pub steps: Vec<Step>,
    pub x_max: Enclosure,
    pub ratio: Enclosure,
    /// Largest x at which the undivided inequality (before the Bernoulli
    /// estimates) still holds, for the balanced m_p distribution.
    pub largest_x_before_estimates: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_counting: Option<DimCountingReport>,
}

pub const STEP_NAMES: [&str; 6] = [
    "dim_counting",
    "concavity",
    "bernoulli_down",
    "bernoulli_up",
    "combine",
    "final",
];

/// Evenly spread (q-1)x incidences over q^d - x points.
fn balanced_counts(q: u64, d: u32, x: u64) -> BTreeMap<u64, u64> {
    let n = q.pow(d) - x;
    let total = (q - 1) * x;
    let (base, rem) = (total / n, total % n);
    let mut out = BTreeMap::new();
    if n - rem > 0 {
        out.insert(base, n - rem);
    }
    if rem > 0 {
        out.insert(base + 1, rem);
    }
    out
}

/// `1 + (q-2) x^(-1/(d-1)) >= (1 - x/q^d)^(-1/(d-1)) (1 - 1/q)^(d/(d-1))`.
fn divided_check(q: u64, d: u32, x: u64, width: &Q) -> Check {
    let t = qu(x) / qpow_u(q, d);
    let xr = root_enclosure(&qu(x), d - 1, width);
    let lhs = Enclosure::int(1).add(&xr.recip().scale(&q_int(q as i64 - 2)));
    let one_minus = Q::one() - Q::one() / qu(q);
    let up = root_enclosure(&one_minus, d - 1, width).scale(&one_minus);
    let rhs = root_enclosure(&(Q::one() - t), d - 1, width).recip().mul(&up);
    Check::ge("divided", lhs, rhs)
}

/// Evaluates the chain at a concrete x. With `input`, x = |L| and the m_p
/// are the instance's; otherwise x = floor(x_max) with a balanced m_p.
pub fn final_bound(q: u64, d: u32, input: Option<&BoundInput>, width: &Q) -> Result<BoundReport, BoundsError> {
    if q < 3 || prime_power(q).is_none() {
        return Err(BoundsError::InvalidInput(format!(
            "q must be a prime power >= 3, got {q}"
        )));
    }
    if d < 2 {
        return Err(BoundsError::InvalidInput(format!("d must be at least 2, got {d}")));
    }
    let qd = q
        .checked_pow(d)
        .ok_or_else(|| BoundsError::InvalidInput("q^d overflows".into()))?;
    let xm = x_max(q, d, width);
    let ratio = x_max_ratio(q, d, width);
    let (x, x_source, mut counts, dim_counting) = match input {
        Some(inp) => {
            if inp.q != q || inp.d != d {
                return Err(BoundsError::InvalidInput(
                    "instance q, d differ from the request".into(),
                ));
            }
            let mut counts = inp.counts();
            let pad = qd - inp.lines - inp.mp.len() as u64;
            if pad > 0 {
                *counts.entry(0).or_insert(0) += pad;
            }
            (inp.lines, "instance", counts, Some(check_dim_counting(inp, width)?))
        }
        None => {
            let x = xm.lo.floor().to_integer().to_u64().unwrap().min(qd - 1);
            (x, "floor_x_max", balanced_counts(q, d, x), None)
        }
    };
    if x == 0 {
        return Err(BoundsError::InvalidInput("the chain needs at least one line".into()));
    }
    counts.retain(|_, n| *n > 0);
    let mut roots = Roots::new(d - 1, width);
    let xq = qu(x);
    let xr = roots.of(x);
    let x_pow = xr.scale(&xq);
    let s = sum_pow(&counts, &mut roots);
    let t = &xq / qpow_u(q, d);
    let dm1 = q_int(d as i64 - 1);

    let mut steps = Vec::new();
    let chain_rhs = x_pow.add(&Enclosure::point(&xq * q_int(q as i64 - 2)));
    let mut dc = vec![Check::le("rewritten", s.clone(), chain_rhs.clone())];
    if let Some(r) = &dim_counting {
        dc.extend(r.checks.iter().filter(|c| c.label != "rewritten").cloned());
    }
    steps.push(Step::new("dim_counting", dc));

    let n_pts = qu(qd - x);
    let mean = qu((q - 1) * x) / &n_pts;
    let jensen = root_enclosure(&mean, d - 1, width).scale(&(&mean * &n_pts));
    steps.push(Step::new(
        "concavity",
        vec![
            Check::ge("jensen", s, jensen.clone()),
            Check::ge("chain", chain_rhs, jensen),
            divided_check(q, d, x, width),
        ],
    ));

    let down_rhs = Q::one() - &t / &dm1;
    let down = Check::le(
        "enclosure",
        root_enclosure(&(Q::one() - &t), d - 1, width),
        down_rhs.clone().into(),
    );
    let down_exact = Check::le("exact_power", (Q::one() - &t).into(), q_pow(&down_rhs, d - 1).into());
    steps.push(exact_step("bernoulli_down", down, down_exact));

    let inv_q = Q::one() / qu(q);
    let one_minus = Q::one() - &inv_q;
    let up_rhs = Q::one() - q_int(d as i64) * &inv_q / &dm1;
    let up = Check::ge(
        "enclosure",
        root_enclosure(&one_minus, d - 1, width).scale(&one_minus),
        up_rhs.clone().into(),
    );
    let up_exact = Check::ge("exact_power", q_pow(&one_minus, d).into(), q_pow(&up_rhs, d - 1).into());
    steps.push(exact_step("bernoulli_up", up, up_exact));

    let a = &t / &dm1;
    let b = q_int(d as i64) * &inv_q / &dm1;
    let regime = Regime {
        a_ge_b: a >= b,
        x_over_q_pow: &xq / qpow_u(q, d - 1),
        a: a.clone(),
        b: b.clone(),
    };
    let helper = Check::ge(
        "helper",
        ((Q::one() - &b) / (Q::one() - &a)).into(),
        (Q::one() + &a - &b).into(),
    );
    let combined = Check::ge(
        "combined",
        Enclosure::int(1).add(&xr.recip().scale(&q_int(q as i64 - 2))),
        (Q::one() + &a - &b).into(),
    );
    let mut combine = Step::new("combine", vec![helper, combined]);
    if !regime.a_ge_b {
        combine.verdict = Verdict::NotApplicable;
    }
    steps.push(combine);

    steps.push(Step::new(
        "final",
        vec![Check::le("x_le_x_max", xq.clone().into(), xm.clone())],
    ));

    Ok(BoundReport {
        q,
        d,
        x,
        x_source,
        width: width.clone(),
        mp: counts.iter().map(|(&m, &count)| MpCount { m, count }).collect(),
        regime,
        steps,
        x_max: xm,
        ratio,
        largest_x_before_estimates: largest_divided(q, d, qd, width),
        dim_counting,
    })
}

/// The divided inequality's left side decreases and its right side
/// increases in x, so the x where it holds form a prefix of 1..q^d.
fn largest_divided(q: u64, d: u32, qd: u64, width: &Q) -> Option<u64> {
    let holds = |x: u64| divided_check(q, d, x, width).verdict == Verdict::Holds;
    if !holds(1) {
        return None;
    }
    let (mut lo, mut hi) = (1u64, qd - 1);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Some(lo)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub q: u64,
    pub x_max: Enclosure,
    pub ratio: Enclosure,
    pub ratio_approx: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioSweep {
    pub d: u32,
    pub rows: Vec<SweepRow>,
    pub median: Enclosure,
    /// Every ratio lies within a factor of two of the median.
    pub within_factor_two: Verdict,
    /// Enclosures strictly increase with q.
    pub increasing: bool,
}

/// Prime powers q with lo <= q <= hi.
pub fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&q| prime_power(q).is_some()).collect()
}

pub fn ratio_sweep(d: u32, qs: &[u64], width: &Q) -> Result<RatioSweep, BoundsError> {
    if d < 2 || qs.is_empty() || qs.iter().any(|&q| q < 3 || prime_power(q).is_none()) {
        return Err(BoundsError::InvalidInput(
            "sweep needs d >= 2 and prime powers q >= 3".into(),
        ));
    }
    let rows: Vec<SweepRow> = qs
        .iter()
        .map(|&q| {
            let ratio = x_max_ratio(q, d, width);
            SweepRow {
                q,
                x_max: x_max(q, d, width),
                ratio_approx: ratio.approx(),
                ratio,
            }
        })
        .collect();
    // The median is monotone in every entry, so medians of the endpoints
    // enclose it.
    let median_of = |mut v: Vec<Q>| {
        v.sort();
        let n = v.len();
        if n % 2 == 1 {
            v[n / 2].clone()
        } else {
            (&v[n / 2 - 1] + &v[n / 2]) / q_int(2)
        }
    };
    let median = Enclosure::new(
        median_of(rows.iter().map(|r| r.ratio.lo.clone()).collect()),
        median_of(rows.iter().map(|r| r.ratio.hi.clone()).collect()),
    );
    let two = q_int(2);
    let within_factor_two = Verdict::all(rows.iter().flat_map(|r| {
        [
            r.ratio.le(&median.scale(&two)),
            r.ratio.ge(&median.scale(&(Q::one() / &two))),
        ]
    }));
    let increasing = rows.windows(2).all(|w| w[0].ratio.hi < w[1].ratio.lo);
    Ok(RatioSweep {
        d,
        rows,
        median,
        within_factor_two,
        increasing,
    })
}
