//! Hasse derivatives and multiplicities.
//!
//! `H^α f` is the coefficient of `y^α` in `f(x + y)`. On monomials
//! `H^α x^β = C(β, α) x^{β-α}` with the binomial taken per coordinate. In
//! characteristic p those binomials must be reduced with Lucas' theorem;
//! going through factorials would divide by zero.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{ExpVec, MultiPoly, PolyError};
use crate::field::FieldElem;

/// `C(n, k) mod p` for prime `p`, by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = acc * small_binom(ni, ki, p) % p;
        n /= p;
        k /= p;
    }
    acc % p
}

// C(n, k) mod p with n < p, so every factor of k! is invertible.
fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_inv(den, p) % p
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Vanishing order of a polynomial at a point. The zero polynomial has
/// infinite multiplicity everywhere; that is a distinct value, not a large
/// number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn is_infinite(self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Infinite => None,
        }
    }

    pub fn at_least(self, n: u32) -> bool {
        match self {
            Multiplicity::Finite(m) => m >= n,
            Multiplicity::Infinite => true,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(n) => s.serialize_u32(*n),
            Multiplicity::Infinite => s.serialize_str("inf"),
        }
    }
}

impl MultiPoly {
    fn hasse_coeff(&self, beta: &ExpVec, alpha: &ExpVec) -> u64 {
        let p = self.field.characteristic();
        beta.as_slice()
            .iter()
            .zip(alpha.as_slice())
            .fold(1u64, |acc, (&b, &a)| acc * binom_mod_p(b as u64, a as u64, p) % p)
    }

    /// The Hasse derivative `H^α f`.
    pub fn hasse(&self, alpha: &ExpVec) -> MultiPoly {
        assert_eq!(alpha.len(), self.nvars, "derivative order has wrong length");
        let f = &self.field;
        let mut out = MultiPoly::zero(f, self.nvars);
        for (beta, &c) in &self.terms {
            let Some(rest) = beta.checked_sub(alpha) else {
                continue;
            };
            let b = self.hasse_coeff(beta, alpha);
            if b != 0 {
                out.add_term(rest, f.mul(c, f.from_int(b as i64)));
            }
        }
        out
    }

    /// `(H^α f)(p)` without materialising the derivative.
    pub fn hasse_at(&self, alpha: &ExpVec, point: &[FieldElem]) -> Result<FieldElem, PolyError> {
        if point.len() != self.nvars || alpha.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: point.len().min(alpha.len()),
            });
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (beta, &c) in &self.terms {
            if !beta.dominates(alpha) {
                continue;
            }
            let b = self.hasse_coeff(beta, alpha);
            if b == 0 {
                continue;
            }
            let mut term = f.mul(c, f.from_int(b as i64));
            for ((&x, &be), &al) in point.iter().zip(beta.as_slice()).zip(alpha.as_slice()) {
                if be > al {
                    term = f.mul(term, f.pow(x, (be - al) as u64));
                }
            }
            acc = f.add(acc, term);
        }
        Ok(acc)
    }

    /// Largest n with `H^α f(p) = 0` for every |α| < n.
    pub fn mult_at(&self, point: &[FieldElem]) -> Result<Multiplicity, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        if point.iter().any(|x| x.field_id() != self.field.id()) {
            return Err(PolyError::FieldMismatch);
        }
        let Some(deg) = self.degree() else {
            return Ok(Multiplicity::Infinite);
        };
        // For f != 0 some derivative of order deg is a nonzero constant.
        for n in 0..=deg {
            for alpha in ExpVec::all_of_degree(self.nvars, n) {
                if !self.hasse_at(&alpha, point)?.is_zero() {
                    return Ok(Multiplicity::Finite(n));
                }
            }
        }
        unreachable!("a top-degree Hasse derivative is a nonzero constant")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;

    fn exact_binom(n: u64, k: u64) -> BigUint {
        if k > n {
            return BigUint::from(0u32);
        }
        (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn lucas_matches_exact_binomials() {
        for p in [2u64, 3, 5, 7, 11] {
            for n in 0..60u64 {
                for k in 0..=n + 2 {
                    let want = (exact_binom(n, k) % p).to_u64().unwrap();
                    assert_eq!(binom_mod_p(n, k, p), want, "C({n},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn hasse_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let x3 = MultiPoly::var(&f3, 1, 0).pow(3);
        assert!(x3.hasse(&ExpVec::new(vec![1])).is_zero());
        assert_eq!(x3.hasse(&ExpVec::new(vec![0])), x3);

        let f5 = Field::new(5, 1).unwrap();
        let x = MultiPoly::var(&f5, 1, 0);
        let d2 = x.pow(3).hasse(&ExpVec::new(vec![2]));
        assert_eq!(d2, x.scale(f5.from_int(3)));
    }

    #[test]
    fn multiplicity_examples() {
        let f7 = Field::new(7, 1).unwrap();
        let x = MultiPoly::var(&f7, 2, 0);
        let y = MultiPoly::var(&f7, 2, 1);
        let origin = [f7.zero(), f7.zero()];
        let g = &x.pow(2) * &y;
        assert_eq!(g.mult_at(&origin).unwrap(), Multiplicity::Finite(3));
        assert_eq!(
            MultiPoly::zero(&f7, 2).mult_at(&origin).unwrap(),
            Multiplicity::Infinite
        );
        let shifted = &x - &MultiPoly::one(&f7, 2);
        assert_eq!(shifted.mult_at(&origin).unwrap(), Multiplicity::Finite(0));
        assert_eq!(
            shifted.mult_at(&[f7.one(), f7.from_int(5)]).unwrap(),
            Multiplicity::Finite(1)
        );
    }

    #[test]
    fn multiplicity_in_small_characteristic() {
        // x^2 over GF(2): H^(1) x^2 = 2x = 0, yet mult at 0 is 2.
        let f2 = Field::new(2, 1).unwrap();
        let x2 = MultiPoly::var(&f2, 1, 0).pow(2);
        assert_eq!(x2.mult_at(&[f2.zero()]).unwrap(), Multiplicity::Finite(2));
        let shifted = (&MultiPoly::var(&f2, 1, 0) + &MultiPoly::one(&f2, 1)).pow(2);
        assert_eq!(shifted.mult_at(&[f2.one()]).unwrap(), Multiplicity::Finite(2));
        assert_eq!(x2.mult_at(&[f2.one()]).unwrap(), Multiplicity::Finite(0));
    }

    #[test]
    fn infinite_sorts_above_finite() {
        assert!(Multiplicity::Infinite > Multiplicity::Finite(u32::MAX));
        assert!(Multiplicity::Infinite.at_least(1_000_000));
        assert!(!Multiplicity::Finite(2).at_least(3));
    }
}
