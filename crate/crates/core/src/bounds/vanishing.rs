//! Vanishing to order (u, v; γ) along a line, and the linear system that
//! tests the vanishing lemma on small configurations.

use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::interval::{q_int, q_pow, root_enclosure, ser_q, Enclosure, Q};
use super::BoundsError;
use crate::field::{Field, FieldElem};
use crate::linalg::Matrix;
use crate::poly::{binom_mod_p, ExpVec, Line, MultiPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingOrder {
    pub u: u32,
    #[serde(serialize_with = "ser_q")]
    pub v: Q,
    #[serde(serialize_with = "ser_q")]
    pub gamma: Q,
}

impl VanishingOrder {
    pub fn new(u: u32, v: Q, gamma: Q) -> Result<Self, BoundsError> {
        if v.is_negative() || !gamma.is_positive() {
            return Err(BoundsError::Precondition(
                "vanishing order needs v >= 0 and gamma > 0".into(),
            ));
        }
        Ok(VanishingOrder { u, v, gamma })
    }

    /// Required line multiplicity for a horizontal derivative of order
    /// `k`: the ceiling of v - k/γ, or 0 when that is not positive.
    pub fn required(&self, k: u32) -> u32 {
        let t = &self.v - q_int(k as i64) / &self.gamma;
        if t.is_positive() {
            t.ceil().to_integer().to_u32().expect("desk-scale order")
        } else {
            0
        }
    }
}

/// Whether the last coordinate of the direction is nonzero.
fn non_horizontal(line: &Line) -> bool {
    !line.dir().last().is_some_and(|x| x.is_zero())
}

/// For every α in Z_{>=0}^{d-1} with |α| < u, the restriction of
/// H^{(α,0)} f to the line has multiplicity at p of at least v - |α|/γ.
pub fn vanishes_to_order(
    f: &MultiPoly,
    p: &[FieldElem],
    line: &Line,
    ord: &VanishingOrder,
) -> Result<bool, BoundsError> {
    let d = f.nvars();
    if d == 0 || line.ambient_dim() != d {
        return Err(BoundsError::InvalidInput(
            "line and polynomial dimensions differ".into(),
        ));
    }
    if !non_horizontal(line) {
        return Err(BoundsError::HorizontalLine(0));
    }
    if !line.contains(f.field(), p) {
        return Err(BoundsError::NotOnLine);
    }
    for alpha in ExpVec::all_below(d - 1, ord.u) {
        let need = ord.required(alpha.degree());
        if need == 0 {
            continue;
        }
        let mut full = alpha.as_slice().to_vec();
        full.push(0);
        let g = f.hasse(&ExpVec::new(full));
        if !g.mult_on_line(line, p)?.at_least(need) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A non-horizontal line with the points N_ℓ on which vanishing is imposed.
#[derive(Debug, Clone)]
pub struct LineConstraint {
    pub line: Line,
    pub points: Vec<Vec<FieldElem>>,
}

impl LineConstraint {
    /// The line with every point off the hyperplane x_d = 0.
    pub fn off_hyperplane(field: &Field, line: Line) -> Self {
        let d = line.ambient_dim();
        let points = line.points(field).into_iter().filter(|x| !x[d - 1].is_zero()).collect();
        LineConstraint { line, points }
    }
}

#[derive(Debug, Clone)]
pub struct VanishingSetup {
    pub n: u32,
    pub c: Q,
    pub eps: Q,
    /// Replaces V((1-ε)|L|^{1/(d-1)} n, (q-1) c n) by V(r, s).
    pub space_override: Option<(Q, Q)>,
    pub cap: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VanishingReport {
    pub lines: usize,
    /// Enclosure of the bound r on α_1 + ... + α_{d-1}.
    pub r: Enclosure,
    #[serde(serialize_with = "ser_q")]
    pub s: Q,
    pub dim_v: usize,
    pub equations: usize,
    pub kernel_dim: usize,
    /// Every kernel basis element rechecked with `vanishes_to_order`.
    pub verified: bool,
    #[serde(skip)]
    pub kernel: Vec<MultiPoly>,
}

/// Coefficients of Π_j (p_j + s v_j)^{e_j} below s^len.
fn line_series(f: &Field, p: &[FieldElem], v: &[FieldElem], e: &[u32], len: usize) -> Vec<FieldElem> {
    let ch = f.characteristic();
    let mut acc = vec![f.zero(); len];
    acc[0] = f.one();
    for ((&pj, &vj), &ej) in p.iter().zip(v).zip(e) {
        if ej == 0 {
            continue;
        }
        let factor: Vec<FieldElem> = (0..len.min(ej as usize + 1))
            .map(|i| {
                let b = binom_mod_p(ej as u64, i as u64, ch);
                f.mul(
                    f.from_int(b as i64),
                    f.mul(f.pow(pj, (ej as usize - i) as u64), f.pow(vj, i as u64)),
                )
            })
            .collect();
        let mut next = vec![f.zero(); len];
        for (i, &a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in factor.iter().enumerate() {
                if i + j < len {
                    next[i + j] = f.add(next[i + j], f.mul(a, b));
                }
            }
        }
        acc = next;
    }
    acc
}

/// Builds the linear conditions "f vanishes to order (n, cn; q-1) at every
/// p in N_ℓ along ℓ" over the monomial basis of V and returns the kernel.
/// The hyperplane is x_d = 0.
pub fn vanishing_lemma_instance(
    field: &Field,
    d: usize,
    constraints: &[LineConstraint],
    setup: &VanishingSetup,
) -> Result<VanishingReport, BoundsError> {
    if d < 2 {
        return Err(BoundsError::InvalidInput("d must be at least 2".into()));
    }
    for (i, con) in constraints.iter().enumerate() {
        if con.line.ambient_dim() != d {
            return Err(BoundsError::InvalidInput(format!("line {i} has the wrong dimension")));
        }
        if !non_horizontal(&con.line) {
            return Err(BoundsError::HorizontalLine(i));
        }
        for p in &con.points {
            if !con.line.contains(field, p) {
                return Err(BoundsError::NotOnLine);
            }
            if p[d - 1].is_zero() {
                return Err(BoundsError::InvalidInput(format!(
                    "a point of line {i} lies on x_d = 0"
                )));
            }
        }
    }
    let q = field.order();
    let n = setup.n;
    let nq = q_int(n as i64);
    let ord = VanishingOrder::new(n, &setup.c * &nq, q_int(q as i64 - 1))?;
    let width = super::interval::default_width();
    let (head_ok, r, s): (Box<dyn Fn(u32) -> bool>, Enclosure, Q) = match &setup.space_override {
        Some((r, s)) => {
            let r2 = r.clone();
            (
                Box::new(move |j| q_int(j as i64) < r2),
                Enclosure::point(r.clone()),
                s.clone(),
            )
        }
        None => {
            let one_minus = Q::one() - &setup.eps;
            let r_pow = q_pow(&one_minus, d as u32 - 1) * q_int(constraints.len() as i64) * q_pow(&nq, d as u32 - 1);
            let r = if one_minus.is_positive() {
                root_enclosure(&r_pow, d as u32 - 1, &width)
            } else {
                Enclosure::int(0)
            };
            let s = q_int(q as i64 - 1) * &setup.c * &nq;
            let positive = one_minus.is_positive();
            (
                Box::new(move |j| positive && q_pow(&q_int(j as i64), d as u32 - 1) < r_pow),
                r,
                s,
            )
        }
    };
    let deg_bound = if s.is_positive() {
        s.ceil().to_integer().to_u32().expect("desk-scale degree")
    } else {
        0
    };
    let basis: Vec<ExpVec> = ExpVec::all_below(d, deg_bound)
        .into_iter()
        .filter(|a| q_int(a.degree() as i64) < s && head_ok(a.as_slice()[..d - 1].iter().sum()))
        .collect();

    let orders = ExpVec::all_below(d - 1, n);
    let equations: usize = constraints
        .iter()
        .map(|con| con.points.len() * orders.iter().map(|a| ord.required(a.degree()) as usize).sum::<usize>())
        .sum();
    let entries = equations as u64 * basis.len() as u64;
    if entries > setup.cap {
        return Err(BoundsError::MatrixCap {
            entries,
            cap: setup.cap,
        });
    }
    let ch = field.characteristic();
    let mut m = Matrix::zeros(field, equations, basis.len());
    let mut row = 0;
    for con in constraints {
        let v = con.line.dir();
        for p in &con.points {
            for a in &orders {
                let need = ord.required(a.degree()) as usize;
                if need == 0 {
                    continue;
                }
                let mut shift = a.as_slice().to_vec();
                shift.push(0);
                let shift = ExpVec::new(shift);
                for (col, alpha) in basis.iter().enumerate() {
                    let Some(rest) = alpha.checked_sub(&shift) else {
                        continue;
                    };
                    let b = alpha
                        .as_slice()
                        .iter()
                        .zip(shift.as_slice())
                        .fold(1u64, |acc, (&x, &y)| acc * binom_mod_p(x as u64, y as u64, ch) % ch);
                    if b == 0 {
                        continue;
                    }
                    let series = line_series(field, p, v, rest.as_slice(), need);
                    let bq = field.from_int(b as i64);
                    for (k, &coef) in series.iter().enumerate() {
                        m.set(row + k, col, field.mul(bq, coef));
                    }
                }
                row += need;
            }
        }
    }
    debug_assert_eq!(row, equations);
    let kernel: Vec<MultiPoly> = m
        .kernel_basis()
        .into_iter()
        .map(|vec| MultiPoly::from_terms(field, d, basis.iter().cloned().zip(vec)))
        .collect::<Result<_, _>>()?;
    let mut verified = true;
    for g in &kernel {
        for con in constraints {
            for p in &con.points {
                verified &= vanishes_to_order(g, p, &con.line, &ord)?;
            }
        }
    }
    Ok(VanishingReport {
        lines: constraints.len(),
        r,
        s,
        dim_v: basis.len(),
        equations,
        kernel_dim: kernel.len(),
        verified,
        kernel,
    })
}
