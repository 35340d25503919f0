//! Exact arithmetic in GF(p) and GF(p^k).
//!
//! A [`Field`] is a cheap, shareable handle to an immutable field context.
//! Elements are small `Copy` values ([`FieldElem`]) tagged with the field they
//! belong to, so mixing elements of different fields is caught instead of
//! silently producing garbage.
//!
//! Element `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` (reduced modulo the field's
//! modulus) is indexed by `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. That index is
//! the canonical order used everywhere: enumeration, point indexing and
//! tie-breaking all follow it, and zero is always first.

mod embed;
mod fp_poly;

pub use embed::{embed, Embedding};

use std::fmt;
use std::sync::Arc;

/// Default cap on the field order `p^k`.
pub const DEFAULT_ORDER_LIMIT: u64 = 1 << 20;

/// Fields up to this order get log/antilog tables for multiplication.
const LOG_TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the limit {limit}")]
    TooLarge { p: u64, k: u32, limit: u64 },
    #[error("elements of GF({left}) and GF({right}) cannot be combined")]
    ContextMismatch { left: u64, right: u64 },
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("invalid field spec {0:?}; expected \"p^k\", \"p\" or a prime power")]
    BadSpec(String),
    #[error("cannot read {text:?} as an element of GF({q})")]
    BadElement { text: String, q: u64 },
    #[error("GF({to}) does not contain GF({from})")]
    NotAnExtension { from: u64, to: u64 },
}

/// Identifies a field by characteristic and degree. The modulus is a
/// deterministic function of `(p, k)`, so this pair identifies the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId {
    p: u32,
    k: u32,
}

impl FieldId {
    pub fn order(self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

/// An element of some GF(p^k). Ordering follows the canonical element index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    field: FieldId,
    value: u32,
}

impl FieldElem {
    /// Canonical index of the element in `0..q`.
    #[inline]
    pub fn index(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field_id(self) -> FieldId {
        self.field
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

struct LogTables {
    // exp has length 2(q-1) so log a + log b never needs a reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<LogTables>,
}

/// Handle to GF(p^k). Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.id() == other.id()
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.0.p, self.0.k)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// GF(p^k) with the default order limit.
    pub fn new(p: u64, k: u32) -> Result<Field, FieldError> {
        Self::with_limit(p, k, DEFAULT_ORDER_LIMIT)
    }

    pub fn with_limit(p: u64, k: u32, limit: u64) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let too_large = FieldError::TooLarge { p, k, limit };
        let q = p.checked_pow(k).ok_or(too_large.clone())?;
        if q > limit || q > u32::MAX as u64 {
            return Err(too_large);
        }
        let modulus = least_irreducible(p, k);
        let mut ctx = FieldCtx {
            p: p as u32,
            k,
            q: q as u32,
            modulus,
            tables: None,
        };
        if k > 1 && q <= LOG_TABLE_LIMIT {
            ctx.tables = Some(build_tables(&ctx));
        }
        Ok(Field(Arc::new(ctx)))
    }

    /// Parses `"p^k"`, `"p"`, or a prime power such as `"9"`.
    pub fn from_spec(spec: &str) -> Result<Field, FieldError> {
        Self::from_spec_with_limit(spec, DEFAULT_ORDER_LIMIT)
    }

    pub fn from_spec_with_limit(spec: &str, limit: u64) -> Result<Field, FieldError> {
        let bad = || FieldError::BadSpec(spec.to_string());
        let s = spec.trim();
        let (p, k) = match s.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                k.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let q = s.parse::<u64>().map_err(|_| bad())?;
                prime_power(q).ok_or_else(bad)?
            }
        };
        Self::with_limit(p, k, limit)
    }

    /// The field of order `q`, which must be a prime power.
    pub fn from_order(q: u64) -> Result<Field, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::BadSpec(q.to_string()))?;
        Self::new(p, k)
    }

    #[inline]
    pub fn id(&self) -> FieldId {
        FieldId {
            p: self.0.p,
            k: self.0.k,
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.0.q as u64
    }

    /// Monic modulus, lowest coefficient first (length k + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElem {
        self.wrap(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElem {
        self.wrap(1)
    }

    #[inline]
    pub(crate) fn wrap(&self, value: u32) -> FieldElem {
        debug_assert!(value < self.0.q);
        FieldElem {
            field: self.id(),
            value,
        }
    }

    /// Element with the given canonical index.
    pub fn elem(&self, index: u64) -> Result<FieldElem, FieldError> {
        if index >= self.order() {
            return Err(FieldError::BadElement {
                text: index.to_string(),
                q: self.order(),
            });
        }
        Ok(self.wrap(index as u32))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        self.wrap(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element from coefficients over GF(p), lowest degree first.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem, FieldError> {
        let c = &*self.0;
        let bad = || FieldError::BadElement {
            text: format!("{coeffs:?}"),
            q: self.order(),
        };
        if coeffs.len() > c.k as usize || coeffs.iter().any(|&x| x >= c.p) {
            return Err(bad());
        }
        Ok(self.wrap(encode(coeffs, c.p)))
    }

    /// Coefficient vector of length k, lowest degree first.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        self.check(a);
        decode(a.value, self.0.p, self.0.k)
    }

    /// All elements in canonical order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.0.q).map(move |v| self.wrap(v))
    }

    /// Nonzero elements in canonical order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (1..self.0.q).map(move |v| self.wrap(v))
    }

    #[inline]
    fn check(&self, a: FieldElem) {
        assert!(
            a.field == self.id(),
            "element of GF({}) used with GF({})",
            a.field.order(),
            self.order()
        );
    }

    fn mismatch(&self, a: FieldElem) -> Result<(), FieldError> {
        if a.field == self.id() {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch {
                left: a.field.order(),
                right: self.order(),
            })
        }
    }

    // Panicking operations: mixing fields is a programming error here.
    // The `try_*` variants report it as `ContextMismatch` instead.

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        self.wrap(self.add_raw(a.value, b.value))
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        self.wrap(self.sub_raw(a.value, b.value))
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.check(a);
        self.wrap(self.neg_raw(a.value))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        self.wrap(self.mul_raw(a.value, b.value))
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        self.mismatch(a)?;
        if a.is_zero() {
            return Err(FieldError::InverseOfZero);
        }
        Ok(self.wrap(self.inv_raw(a.value)))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        self.mismatch(a)?;
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        self.check(a);
        self.wrap(self.pow_raw(a.value, e))
    }

    pub fn try_add(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        self.mismatch(a)?;
        self.mismatch(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_sub(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        self.mismatch(a)?;
        self.mismatch(b)?;
        Ok(self.sub(a, b))
    }

    pub fn try_mul(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        self.mismatch(a)?;
        self.mismatch(b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_neg(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        self.mismatch(a)?;
        Ok(self.neg(a))
    }

    pub fn try_pow(&self, a: FieldElem, e: u64) -> Result<FieldElem, FieldError> {
        self.mismatch(a)?;
        Ok(self.pow(a, e))
    }

    // Raw index arithmetic, used by the hot loops (matrices, point sets).

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        let c = &*self.0;
        if c.k == 1 {
            let s = a as u64 + b as u64;
            let p = c.p as u64;
            (if s >= p { s - p } else { s }) as u32
        } else if c.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..c.k {
                let s = (a % c.p + b % c.p) % c.p;
                out += s * place;
                place = place.wrapping_mul(c.p);
                a /= c.p;
                b /= c.p;
            }
            out
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        let c = &*self.0;
        if c.k == 1 {
            if a == 0 {
                0
            } else {
                c.p - a
            }
        } else if c.p == 2 {
            a
        } else {
            let mut a = a;
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..c.k {
                let d = a % c.p;
                out += ((c.p - d) % c.p) * place;
                place = place.wrapping_mul(c.p);
                a /= c.p;
            }
            out
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let c = &*self.0;
        if c.k == 1 {
            return ((a as u64 * b as u64) % c.p as u64) as u32;
        }
        match &c.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => self.mul_dense(a, b),
        }
    }

    /// Reference multiplication on coefficient vectors. The table path in
    /// [`Field::mul_raw`] must agree with this bit for bit.
    pub(crate) fn mul_dense(&self, a: u32, b: u32) -> u32 {
        let c = &*self.0;
        let p = c.p as u64;
        let k = c.k as usize;
        let da = decode(a, c.p, c.k);
        let db = decode(b, c.p, c.k);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce with the monic modulus from the top down
        for top in (k..prod.len()).rev() {
            let t = prod[top];
            if t == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &m) in c.modulus.iter().enumerate().take(k) {
                let idx = top - k + j;
                prod[idx] = (prod[idx] + (p - t) * m as u64) % p;
            }
        }
        let low: Vec<u32> = prod[..k].iter().map(|&x| x as u32).collect();
        encode(&low, c.p)
    }

    pub(crate) fn pow_raw(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub(crate) fn inv_raw(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        match &self.0.tables {
            Some(t) => {
                let n = self.0.q - 1;
                t.exp[((n - t.log[a as usize]) % n) as usize]
            }
            None => self.pow_raw(a, self.order() - 2),
        }
    }

    /// Canonical text form: the decimal residue for prime fields, otherwise
    /// the coefficients lowest degree first, concatenated when p < 10 and
    /// joined by '.' otherwise.
    pub fn render(&self, a: FieldElem) -> String {
        self.check(a);
        let c = &*self.0;
        if c.k == 1 {
            return a.value.to_string();
        }
        let digits = decode(a.value, c.p, c.k);
        if c.p < 10 {
            digits.iter().map(|d| char::from(b'0' + *d as u8)).collect()
        } else {
            digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(".")
        }
    }

    /// Inverse of [`Field::render`]. Missing high coefficients read as zero.
    pub fn parse_elem(&self, text: &str) -> Result<FieldElem, FieldError> {
        let c = &*self.0;
        let t = text.trim();
        let bad = || FieldError::BadElement {
            text: text.to_string(),
            q: self.order(),
        };
        if t.is_empty() {
            return Err(bad());
        }
        if c.k == 1 {
            let v: u64 = t.parse().map_err(|_| bad())?;
            return if v < c.p as u64 {
                Ok(self.wrap(v as u32))
            } else {
                Err(bad())
            };
        }
        let digits: Vec<u32> = if c.p < 10 {
            t.chars()
                .map(|ch| ch.to_digit(10).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        } else {
            t.split('.')
                .map(|s| s.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        };
        self.from_coeffs(&digits).map_err(|_| bad())
    }
}

fn decode(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(v % p);
        v /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Lexicographically least monic irreducible of degree k over GF(p), where
/// candidates are ordered by the index of their low coefficients (the same
/// base-p order used for elements). Returned lowest degree first.
fn least_irreducible(p: u64, k: u32) -> Vec<u32> {
    let count = p.pow(k);
    for idx in 0..count {
        let mut f: Vec<u64> = decode(idx as u32, p as u32, k).into_iter().map(u64::from).collect();
        f.push(1);
        if fp_poly::is_irreducible(&f, p) {
            return f.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(ctx: &FieldCtx) -> LogTables {
    // Borrow a temporary handle so mul_dense is available.
    let tmp = Field(Arc::new(FieldCtx {
        p: ctx.p,
        k: ctx.k,
        q: ctx.q,
        modulus: ctx.modulus.clone(),
        tables: None,
    }));
    let n = (ctx.q - 1) as u64;
    let factors = prime_factors(n);
    let generator = (2..ctx.q)
        .chain(std::iter::once(1))
        .find(|&g| factors.iter().all(|&r| tmp.pow_raw(g, n / r) != 1))
        .expect("the multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![0u32; ctx.q as usize];
    let mut cur = 1u32;
    for i in 0..n as usize {
        exp[i] = cur;
        exp[i + n as usize] = cur;
        log[cur as usize] = i as u32;
        cur = tmp.mul_dense(cur, generator);
    }
    LogTables { exp, log }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(f: &[u64], p: u64) -> bool {
        // trial division by every monic polynomial of degree 1..=k/2
        let k = f.len() - 1;
        for deg in 1..=k / 2 {
            for idx in 0..p.pow(deg as u32) {
                let mut g: Vec<u64> = decode(idx as u32, p as u32, deg as u32)
                    .into_iter()
                    .map(u64::from)
                    .collect();
                g.push(1);
                if fp_poly::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn moduli_are_least_irreducibles() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let f = Field::new(p, k).unwrap();
            let m: Vec<u64> = f.modulus().iter().map(|&c| c as u64).collect();
            assert_eq!(m.len(), k as usize + 1);
            assert_eq!(*m.last().unwrap(), 1);
            assert!(brute_irreducible(&m, p), "{p}^{k}");
            // nothing earlier in the search order is irreducible
            let my_idx = encode(&f.modulus()[..k as usize], p as u32);
            for idx in 0..my_idx {
                let mut g: Vec<u64> = decode(idx, p as u32, k).into_iter().map(u64::from).collect();
                g.push(1);
                assert!(!brute_irreducible(&g, p));
            }
        }
    }

    #[test]
    fn make_field_examples() {
        assert_eq!(Field::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(Field::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(Field::new(3, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(Field::new(2, 30), Err(FieldError::TooLarge { .. })));
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.inv(f5.from_int(2)).unwrap(), f5.from_int(3));
        assert_eq!(f5.inv(f5.zero()), Err(FieldError::InverseOfZero));

        let f4 = Field::new(2, 2).unwrap();
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.mul(x, x), f4.from_coeffs(&[1, 1]).unwrap());
    }

    #[test]
    fn fermat_little_theorem() {
        for spec in ["2", "7", "2^3", "3^2", "5^2", "13"] {
            let f = Field::from_spec(spec).unwrap();
            for a in f.nonzero_elements() {
                assert_eq!(f.pow(a, f.order() - 1), f.one());
            }
        }
    }

    #[test]
    fn tables_agree_with_dense_multiplication() {
        for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3)] {
            let f = Field::new(p, k).unwrap();
            assert!(f.0.tables.is_some());
            for a in 0..f.0.q {
                for b in 0..f.0.q {
                    assert_eq!(f.mul_raw(a, b), f.mul_dense(a, b));
                }
                if a != 0 {
                    assert_eq!(f.mul_raw(a, f.inv_raw(a)), 1);
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for spec in ["2", "3", "2^2", "5", "7", "2^3", "3^2", "11", "13", "2^4"] {
            let f = Field::from_spec(spec).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                assert_eq!(f.mul(a, f.one()), a);
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    // Frobenius
                    let p = f.characteristic();
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                    for &c in &els {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_order() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.elements().map(|e| f2.render(e)).collect::<Vec<_>>(), ["0", "1"]);
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.elements().map(|e| f3.render(e)).collect::<Vec<_>>(), ["0", "1", "2"]);
        let f4 = Field::new(2, 2).unwrap();
        let els: Vec<_> = f4.elements().collect();
        assert_eq!(els.len(), 4);
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        assert!(els[0].is_zero());
    }

    #[test]
    fn context_mismatch_is_reported() {
        let f3 = Field::new(3, 1).unwrap();
        let f9 = Field::new(3, 2).unwrap();
        let a = f3.one();
        let b = f9.one();
        assert!(matches!(
            f9.try_add(a, b),
            Err(FieldError::ContextMismatch { left: 3, right: 9 })
        ));
        assert!(f3.try_mul(a, b).is_err());
        assert!(f3.inv(b).is_err());
    }

    #[test]
    #[should_panic(expected = "used with")]
    fn mixing_fields_panics_in_unchecked_ops() {
        let f3 = Field::new(3, 1).unwrap();
        let f5 = Field::new(5, 1).unwrap();
        f3.add(f3.one(), f5.one());
    }

    #[test]
    fn render_and_parse_round_trip() {
        for spec in ["7", "3^2", "11^2", "2^4"] {
            let f = Field::from_spec(spec).unwrap();
            for a in f.elements() {
                assert_eq!(f.parse_elem(&f.render(a)).unwrap(), a);
            }
        }
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.render(f9.from_coeffs(&[1, 2]).unwrap()), "12");
        let f121 = Field::new(11, 2).unwrap();
        assert_eq!(f121.render(f121.from_coeffs(&[3, 10]).unwrap()), "3.10");
        assert!(f9.parse_elem("3").is_err());
        assert!(f9.parse_elem("111").is_err());
    }

    #[test]
    fn spec_strings() {
        assert_eq!(Field::from_spec("3^2").unwrap().order(), 9);
        assert_eq!(Field::from_spec("9").unwrap().degree(), 2);
        assert_eq!(Field::from_spec("7").unwrap().order(), 7);
        assert!(Field::from_spec("6").is_err());
        assert!(Field::from_spec("x^2").is_err());
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
    }
}
