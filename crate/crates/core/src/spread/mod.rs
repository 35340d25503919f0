//! Rank certificates for algebraic spreadness.
//!
//! For k points on an r-flat, the matrix `M_n` has one row per pair
//! (derivative order β with |β| < n, point p_i) and one column per monomial
//! `x^α` with |α| < D; the entry is `(H^β x^α)(p_i)`. Full column rank means
//! no nonzero polynomial of degree < D vanishes to order n at every point.
//!
//! Spreadness itself is an asymptotic statement in n and cannot be decided by
//! a finite computation. What is certified here is always the fixed-(n, D)
//! statement, plus the D*(n)/n trend reported by [`max_forced_degree`].

mod lines;

pub use lines::{find_avoiding_hyperplane, lines_to_points, AvoidingHyperplane, Hyperplane, LineFamily};

use std::collections::HashSet;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::{Embedding, Field, FieldElem, FieldError};
use crate::linalg::Matrix;
use crate::poly::{binom_mod_p, AffineMap, ExpVec, Flat, MultiPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpreadError {
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("point {0} does not lie on the flat")]
    NotOnFlat(usize),
    #[error("point {index} has {got} coordinates, expected {expected}")]
    PointDimension { index: usize, expected: usize, got: usize },
    #[error("M_n would have {entries} entries, above the cap of {cap}")]
    MatrixCap { entries: u64, cap: u64 },
    #[error("n and D must both be at least 1")]
    BadParameters,
    #[error("grid sides must all have the same size")]
    UnequalSides,
    #[error("grid side {0} repeats an element")]
    RepeatedElement(usize),
    #[error("cannot draw {k} distinct points from {available}")]
    NotEnoughPoints { k: u64, available: u64 },
    #[error("line {0} is parallel to the hyperplane")]
    ParallelLine(usize),
    #[error("lines {0} and {1} meet the hyperplane in the same point")]
    CoincidentIntersections(usize, usize),
    #[error("duplicate line {0} in family")]
    DuplicateLine(usize),
    #[error("no suitable hyperplane after {0} attempts; try a larger extension degree")]
    BudgetExhausted(u64),
    #[error("{0} rational points exceed the point cap")]
    PointCap(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// How an instance was produced. Random instances are heuristic evidence
/// for the "very generic" claim, never certificates of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceSource {
    Explicit,
    Grid { side: usize },
    Random { seed: u64, heuristic: bool },
}

/// k distinct points on an r-flat, stored in flat-local coordinates.
#[derive(Debug, Clone)]
pub struct SpreadInstance {
    field: Field,
    r: usize,
    points: Vec<Vec<FieldElem>>,
    flat: Option<Flat>,
    source: InstanceSource,
    warning: Option<String>,
}

impl SpreadInstance {
    /// Points given directly in local coordinates of F^r.
    pub fn new(field: &Field, r: usize, points: Vec<Vec<FieldElem>>) -> Result<Self, SpreadError> {
        for (i, p) in points.iter().enumerate() {
            if p.len() != r {
                return Err(SpreadError::PointDimension {
                    index: i,
                    expected: r,
                    got: p.len(),
                });
            }
            if p.iter().any(|x| x.field_id() != field.id()) {
                return Err(FieldError::ContextMismatch {
                    left: p[0].field_id().order(),
                    right: field.order(),
                }
                .into());
            }
        }
        let mut seen = std::collections::HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if let Some(j) = seen.insert(p.clone(), i) {
                return Err(SpreadError::DuplicatePoint(j, i));
            }
        }
        Ok(SpreadInstance {
            field: field.clone(),
            r,
            points,
            flat: None,
            source: InstanceSource::Explicit,
            warning: None,
        })
    }

    /// Points given in ambient coordinates, all lying on `flat`.
    pub fn on_flat(flat: &Flat, ambient: &[Vec<FieldElem>]) -> Result<Self, SpreadError> {
        let mut local = Vec::with_capacity(ambient.len());
        for (i, x) in ambient.iter().enumerate() {
            local.push(flat.local_coords(x)?.ok_or(SpreadError::NotOnFlat(i))?);
        }
        let mut inst = Self::new(flat.field(), flat.dim(), local)?;
        inst.flat = Some(flat.clone());
        Ok(inst)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn points(&self) -> &[Vec<FieldElem>] {
        &self.points
    }

    pub fn flat(&self) -> Option<&Flat> {
        self.flat.as_ref()
    }

    pub fn source(&self) -> &InstanceSource {
        &self.source
    }

    pub fn seed(&self) -> Option<u64> {
        match self.source {
            InstanceSource::Random { seed, .. } => Some(seed),
            _ => None,
        }
    }

    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    /// Image under an invertible affine map of F^r.
    pub fn map_affine(&self, t: &AffineMap) -> Self {
        assert_eq!(t.dim(), self.r);
        SpreadInstance {
            points: self.points.iter().map(|p| t.apply(p)).collect(),
            flat: None,
            ..self.clone()
        }
    }

    /// The same points viewed over an extension field.
    pub fn embed(&self, e: &Embedding) -> Result<Self, SpreadError> {
        let points = self
            .points
            .iter()
            .map(|p| e.apply_point(p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SpreadInstance {
            field: e.target().clone(),
            points,
            flat: None,
            ..self.clone()
        })
    }
}

/// The product grid `A_1 × ... × A_r`.
pub fn grid_instance(field: &Field, sides: &[Vec<FieldElem>]) -> Result<SpreadInstance, SpreadError> {
    let a = sides.first().map_or(0, Vec::len);
    if sides.iter().any(|s| s.len() != a) {
        return Err(SpreadError::UnequalSides);
    }
    for (i, s) in sides.iter().enumerate() {
        if s.iter().collect::<HashSet<_>>().len() != s.len() {
            return Err(SpreadError::RepeatedElement(i));
        }
    }
    let mut points: Vec<Vec<FieldElem>> = vec![Vec::new()];
    for side in sides {
        points = points
            .into_iter()
            .flat_map(|p| {
                side.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    if a == 0 {
        points.clear();
    }
    let mut inst = SpreadInstance::new(field, sides.len(), points)?;
    inst.source = InstanceSource::Grid { side: a };
    Ok(inst)
}

/// The grid whose sides are the first `a` field elements in canonical order.
pub fn standard_grid(field: &Field, r: usize, a: usize) -> Result<SpreadInstance, SpreadError> {
    if a as u64 > field.order() {
        return Err(SpreadError::NotEnoughPoints {
            k: a as u64,
            available: field.order(),
        });
    }
    let side: Vec<FieldElem> = field.elements().take(a).collect();
    grid_instance(field, &vec![side; r])
}

/// k distinct uniformly random points of F^r from a seeded ChaCha8 stream.
pub fn random_instance(field: &Field, k: usize, r: usize, seed: u64) -> Result<SpreadInstance, SpreadError> {
    let available = (field.order() as f64).powi(r as i32);
    if k as f64 > available {
        return Err(SpreadError::NotEnoughPoints {
            k: k as u64,
            available: available as u64,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(k);
    while points.len() < k {
        let p: Vec<FieldElem> = (0..r)
            .map(|_| field.elem(rng.random_range(0..field.order())).unwrap())
            .collect();
        if seen.insert(p.clone()) {
            points.push(p);
        }
    }
    let mut inst = SpreadInstance::new(field, r, points)?;
    // Small fields make coincidences with special configurations likely.
    let heuristic = (k as f64) * 4.0 <= available;
    inst.source = InstanceSource::Random { seed, heuristic };
    if !heuristic {
        inst.warning = Some(format!(
            "field too small for generic sampling: {k} points out of {available}"
        ));
    }
    Ok(inst)
}

fn binom_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of monomials of degree < `bound` in `r` variables: C(bound+r-1, r).
pub fn monomial_count(r: usize, bound: u32) -> u64 {
    if bound == 0 {
        return 0;
    }
    binom_u64(bound as u64 + r as u64 - 1, r as u64)
}

/// Dimensions (rows, columns) of `M_n` at degree bound `d`.
pub fn mn_shape(inst: &SpreadInstance, n: u32, d: u32) -> (u64, u64) {
    (inst.k() as u64 * monomial_count(inst.r, n), monomial_count(inst.r, d))
}

/// Builds `M_n` with rows (point-major, then β in graded-lex order) and
/// columns α in graded-lex order.
pub fn build_mn(inst: &SpreadInstance, n: u32, d: u32, cap: u64) -> Result<Matrix, SpreadError> {
    if n == 0 || d == 0 {
        return Err(SpreadError::BadParameters);
    }
    let (rows, cols) = mn_shape(inst, n, d);
    let entries = rows.saturating_mul(cols);
    if entries > cap {
        return Err(SpreadError::MatrixCap { entries, cap });
    }
    let f = &inst.field;
    let p = f.characteristic();
    let monomials = ExpVec::all_below(inst.r, d);
    let orders = ExpVec::all_below(inst.r, n);
    let mut m = Matrix::zeros(f, rows as usize, cols as usize);
    for (i, pt) in inst.points.iter().enumerate() {
        // powers[j][e] = pt[j]^e
        let powers: Vec<Vec<FieldElem>> = pt
            .iter()
            .map(|&x| {
                let mut v = Vec::with_capacity(d as usize);
                let mut cur = f.one();
                for _ in 0..d {
                    v.push(cur);
                    cur = f.mul(cur, x);
                }
                v
            })
            .collect();
        for (bi, beta) in orders.iter().enumerate() {
            let row = i * orders.len() + bi;
            for (c, alpha) in monomials.iter().enumerate() {
                let Some(rest) = alpha.checked_sub(beta) else {
                    continue;
                };
                let mut coeff = 1u64;
                for (&a, &b) in alpha.as_slice().iter().zip(beta.as_slice()) {
                    coeff = coeff * binom_mod_p(a as u64, b as u64, p) % p;
                }
                if coeff == 0 {
                    continue;
                }
                let mut v = f.from_int(coeff as i64);
                for (j, &e) in rest.as_slice().iter().enumerate() {
                    v = f.mul(v, powers[j][e as usize]);
                }
                m.set(row, c, v);
            }
        }
    }
    Ok(m)
}

/// Fixed-(n, D) rank witness. Serialised field names are part of the CLI
/// output format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpreadCertificate {
    pub k: usize,
    pub r: usize,
    pub n: u32,
    #[serde(rename = "D")]
    pub d: u32,
    pub rank: usize,
    pub columns: u64,
    pub rows: u64,
    pub full_column_rank: bool,
    pub ratio_num: u64,
    pub ratio_den: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

pub fn is_spread_at(inst: &SpreadInstance, n: u32, d: u32, cap: u64) -> Result<SpreadCertificate, SpreadError> {
    let m = build_mn(inst, n, d, cap)?;
    let rank = m.rank();
    let g = (d as u64).gcd(&(n as u64));
    Ok(SpreadCertificate {
        k: inst.k(),
        r: inst.r,
        n,
        d,
        rank,
        columns: m.cols() as u64,
        rows: m.rows() as u64,
        full_column_rank: rank == m.cols(),
        ratio_num: d as u64 / g,
        ratio_den: n as u64 / g,
        seed: inst.seed(),
    })
}

/// A nonzero polynomial of degree < D with multiplicity >= n at every
/// point, read off a kernel vector of `M_n`; `None` at full column rank.
pub fn kernel_witness(inst: &SpreadInstance, n: u32, d: u32, cap: u64) -> Result<Option<MultiPoly>, SpreadError> {
    let m = build_mn(inst, n, d, cap)?;
    let Some(v) = m.kernel_basis().into_iter().next() else {
        return Ok(None);
    };
    let monomials = ExpVec::all_below(inst.r, d);
    Ok(Some(MultiPoly::from_terms(
        &inst.field,
        inst.r,
        monomials.into_iter().zip(v),
    )?))
}

/// Checks a witness directly with the polynomial module.
pub fn verify_witness(inst: &SpreadInstance, g: &MultiPoly, n: u32, d: u32) -> bool {
    let Some(deg) = g.degree() else {
        return false;
    };
    deg < d
        && inst
            .points
            .iter()
            .all(|p| g.mult_at(p).map(|m| m.at_least(n)).unwrap_or(false))
}

#[derive(Debug, Clone, Serialize)]
pub struct ForcedDegree {
    pub n: u32,
    /// Largest D with full column rank.
    pub d_star: u32,
    pub ratio_num: u64,
    pub ratio_den: u64,
    /// k^(1/r) for comparison with D*/n; informational only.
    pub k_root: f64,
    pub certificate: SpreadCertificate,
    /// The first failing degree D* + 1, when it was computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing: Option<SpreadCertificate>,
}

/// Largest D such that `M_n` has full column rank, by binary search.
/// Full rank at D implies full rank at every smaller D (the column set
/// only shrinks), and rank <= rows bounds the search.
pub fn max_forced_degree(inst: &SpreadInstance, n: u32, cap: u64) -> Result<ForcedDegree, SpreadError> {
    if n == 0 {
        return Err(SpreadError::BadParameters);
    }
    if inst.k() == 0 {
        return Err(SpreadError::NotEnoughPoints { k: 1, available: 0 });
    }
    let rows = inst.k() as u64 * monomial_count(inst.r, n);
    let mut hi = 1u32;
    while monomial_count(inst.r, hi + 1) <= rows {
        hi += 1;
    }
    // D = 1 always has full rank: the constant column is nonzero at β = 0.
    let mut lo = 1u32;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if is_spread_at(inst, n, mid, cap)?.full_column_rank {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let certificate = is_spread_at(inst, n, lo, cap)?;
    let failing = is_spread_at(inst, n, lo + 1, cap).ok();
    let g = (lo as u64).gcd(&(n as u64));
    Ok(ForcedDegree {
        n,
        d_star: lo,
        ratio_num: lo as u64 / g,
        ratio_den: n as u64 / g,
        k_root: (inst.k() as f64).powf(1.0 / inst.r.max(1) as f64),
        certificate,
        failing,
    })
}
