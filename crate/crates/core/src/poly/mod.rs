//! Sparse multivariate polynomials over GF(q), Hasse derivatives,
//! multiplicities, and restriction to affine flats.

mod flat;
mod hasse;
mod text;

pub use flat::{AffineMap, Flat, Line};
pub use hasse::{binom_mod_p, Multiplicity};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::field::{Field, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("value belongs to a different field")]
    FieldMismatch,
    #[error("point is not on the line")]
    NotOnLine,
    #[error("direction vectors are linearly dependent")]
    DependentDirections,
    #[error("a line needs a nonzero direction")]
    ZeroDirection,
    #[error("affine map is not invertible")]
    SingularMap,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Exponent vector of a monomial. Ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpVec(Vec<u32>);

impl ExpVec {
    pub fn new(exps: Vec<u32>) -> Self {
        ExpVec(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        ExpVec(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        ExpVec(e)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree |α|.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn checked_sub(&self, other: &ExpVec) -> Option<ExpVec> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExpVec)
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All exponent vectors in `nvars` variables of total degree exactly
    /// `deg`, in increasing graded-lex order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<ExpVec> {
        fn rec(prefix: &mut Vec<u32>, left: usize, remaining: u32, out: &mut Vec<ExpVec>) {
            if left == 1 {
                prefix.push(remaining);
                out.push(ExpVec(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=remaining {
                prefix.push(e);
                rec(prefix, left - 1, remaining - e, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if deg == 0 {
                out.push(ExpVec(Vec::new()));
            }
            return out;
        }
        rec(&mut Vec::with_capacity(nvars), nvars, deg, &mut out);
        out
    }

    /// All exponent vectors of total degree `< bound`, graded-lex order.
    pub fn all_below(nvars: usize, bound: u32) -> Vec<ExpVec> {
        (0..bound).flat_map(|d| Self::all_of_degree(nvars, d)).collect()
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExpVec {
    fn from(v: Vec<u32>) -> Self {
        ExpVec(v)
    }
}

/// Polynomial in `nvars` variables over a finite field. No stored
/// coefficient is zero, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<ExpVec, FieldElem>,
}

impl MultiPoly {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: FieldElem) -> Self {
        Self::monomial(field, ExpVec::zero(nvars), c)
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `x_{i+1}` (0-based `i`).
    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::monomial(field, ExpVec::unit(nvars, i), field.one())
    }

    pub fn monomial(field: &Field, exps: ExpVec, c: FieldElem) -> Self {
        let mut p = Self::zero(field, exps.len());
        p.add_term(exps, c);
        p
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms<I>(field: &Field, nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (ExpVec, FieldElem)>,
    {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::DimensionMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            if c.field_id() != field.id() {
                return Err(PolyError::FieldMismatch);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Random polynomial of degree `<= max_deg` with each monomial present
    /// with probability `density` and a uniformly random coefficient.
    pub fn random<R: Rng>(field: &Field, nvars: usize, max_deg: u32, density: f64, rng: &mut R) -> Self {
        let mut p = Self::zero(field, nvars);
        for e in ExpVec::all_below(nvars, max_deg + 1) {
            if rng.random_bool(density) {
                let c = field.elem(rng.random_range(0..field.order())).unwrap();
                p.add_term(e, c);
            }
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: ExpVec, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.len(), self.nvars);
        let f = &self.field;
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = f.add(*old, c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &ExpVec) -> FieldElem {
        self.terms.get(e).copied().unwrap_or(self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(ExpVec::degree).max()
    }

    fn same_ring(&self, other: &MultiPoly) {
        assert!(
            self.field == other.field && self.nvars == other.nvars,
            "polynomials from different rings"
        );
    }

    pub fn scale(&self, c: FieldElem) -> MultiPoly {
        let mut out = Self::zero(&self.field, self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, &a) in &self.terms {
            out.terms.insert(e.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut acc = Self::one(&self.field, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        if point.iter().any(|x| x.field_id() != self.field.id()) {
            return Err(PolyError::FieldMismatch);
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (e, &c) in &self.terms {
            let mut m = c;
            for (&x, &k) in point.iter().zip(e.as_slice()) {
                if k > 0 {
                    m = f.mul(m, f.pow(x, k as u64));
                }
            }
            acc = f.add(acc, m);
        }
        Ok(acc)
    }

    /// Substitutes `subs[i]` for `x_{i+1}`. All substitutes must share a ring.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if subs.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: subs.len(),
            });
        }
        let target_vars = subs.first().map_or(0, MultiPoly::nvars);
        if subs.iter().any(|s| s.nvars != target_vars || s.field != self.field) {
            return Err(PolyError::FieldMismatch);
        }
        // powers[i][k] = subs[i]^k, filled lazily up to the largest exponent
        let mut powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|_| vec![MultiPoly::one(&self.field, target_vars)])
            .collect();
        let mut out = MultiPoly::zero(&self.field, target_vars);
        for (e, &c) in &self.terms {
            let mut term = MultiPoly::constant(&self.field, target_vars, c);
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.same_ring(rhs);
        let f = &self.field;
        let mut out = MultiPoly::zero(f, self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &rhs.terms {
                out.add_term(ea.add(eb), f.mul(ca, cb));
            }
        }
        out
    }
}
