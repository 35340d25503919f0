//! Closed rational intervals and root enclosures.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Default enclosure width, 10^-12.
pub fn default_width() -> Q {
    Q::new(BigInt::one(), BigInt::from(10u64.pow(12)))
}

/// Serialises a rational as `{"num": "...", "den": "..."}`.
pub fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("num", &x.numer().to_string())?;
    st.serialize_field("den", &x.denom().to_string())?;
    st.end()
}

struct RatRef<'a>(&'a Q);

impl Serialize for RatRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_q(self.0, s)
    }
}

/// Outcome of checking an inequality on enclosures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    /// The enclosures overlap at the working precision.
    Undecided,
    /// A precondition of the inequality fails.
    NotApplicable,
}

impl Verdict {
    /// Holds if all hold; Violated if any is violated; otherwise the
    /// weakest remaining verdict.
    pub fn all(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Holds;
        for v in vs {
            out = match (out, v) {
                (Verdict::Violated, _) | (_, Verdict::Violated) => Verdict::Violated,
                (Verdict::Undecided, _) | (_, Verdict::Undecided) => Verdict::Undecided,
                (Verdict::NotApplicable, _) | (_, Verdict::NotApplicable) => Verdict::NotApplicable,
                _ => Verdict::Holds,
            };
        }
        out
    }

    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }
}

/// A closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Q,
    pub hi: Q,
}

impl Serialize for Enclosure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Enclosure", 2)?;
        st.serialize_field("lo", &RatRef(&self.lo))?;
        st.serialize_field("hi", &RatRef(&self.hi))?;
        st.end()
    }
}

impl From<Q> for Enclosure {
    fn from(x: Q) -> Self {
        Enclosure::point(x)
    }
}

impl Enclosure {
    pub fn new(lo: Q, hi: Q) -> Self {
        assert!(lo <= hi, "empty interval");
        Enclosure { lo, hi }
    }

    pub fn point(x: Q) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn int(n: i64) -> Self {
        Self::point(q_int(n))
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, o: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, o: &Enclosure) -> Enclosure {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Enclosure::new(lo, hi)
    }

    pub fn scale(&self, k: &Q) -> Enclosure {
        self.mul(&Enclosure::point(k.clone()))
    }

    /// `1 / self` for an interval not containing zero.
    pub fn recip(&self) -> Enclosure {
        assert!(self.lo.is_positive() || self.hi.is_negative(), "interval contains zero");
        Enclosure::new(self.hi.recip(), self.lo.recip())
    }

    pub fn pow(&self, e: u32) -> Enclosure {
        (0..e).fold(Enclosure::int(1), |acc, _| acc.mul(self))
    }

    pub fn max(&self, o: &Enclosure) -> Enclosure {
        Enclosure::new(self.lo.clone().max(o.lo.clone()), self.hi.clone().max(o.hi.clone()))
    }

    /// Enclosure of `self^(1/k)` for a nonnegative interval.
    pub fn root(&self, k: u32, width: &Q) -> Enclosure {
        Enclosure::new(
            root_enclosure(&self.lo, k, width).lo,
            root_enclosure(&self.hi, k, width).hi,
        )
    }

    /// Verdict for `self <= o`.
    pub fn le(&self, o: &Enclosure) -> Verdict {
        if self.hi <= o.lo {
            Verdict::Holds
        } else if self.lo > o.hi {
            Verdict::Violated
        } else {
            Verdict::Undecided
        }
    }

    /// Verdict for `self >= o`.
    pub fn ge(&self, o: &Enclosure) -> Verdict {
        o.le(self)
    }

    /// Midpoint as a float, for display only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / q_int(2)).to_f64().unwrap_or(f64::NAN)
    }
}

/// Enclosure of `x^(1/k)` for rational `x >= 0`, of width at most `width`.
/// Exact (a point) whenever `x` is a perfect k-th power.
pub fn root_enclosure(x: &Q, k: u32, width: &Q) -> Enclosure {
    assert!(!x.is_negative(), "root of a negative number");
    assert!(k >= 1 && width.is_positive());
    let a = x.numer().to_biguint().unwrap();
    let b = x.denom().to_biguint().unwrap();
    if let (Some(ra), Some(rb)) = (exact_root(&a, k), exact_root(&b, k)) {
        return Enclosure::point(Q::new(ra.into(), rb.into()));
    }
    // x^(1/k) = (a b^(k-1) 2^(sk))^(1/k) / (b 2^s)
    let mut s = 0u32;
    while Q::new(BigInt::one(), BigInt::from(&b << s)) > *width {
        s += 1;
    }
    let n = (&a * b.pow(k - 1)) << (s * k);
    let r = n.nth_root(k);
    let den = BigInt::from(&b << s);
    let lo = Q::new(BigInt::from(r.clone()), den.clone());
    match r.pow(k).cmp(&n) {
        Ordering::Equal => Enclosure::point(lo),
        _ => Enclosure::new(lo, Q::new(BigInt::from(r + 1u32), den)),
    }
}

fn exact_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = n.nth_root(k);
    (r.pow(k) == *n).then_some(r)
}

/// Exact `x^e` for rational x.
pub fn q_pow(x: &Q, e: u32) -> Q {
    num_traits::pow(x.clone(), e as usize)
}

pub fn factorial(n: u32) -> Q {
    Q::from_integer((1..=n as u64).map(BigInt::from).product())
}
