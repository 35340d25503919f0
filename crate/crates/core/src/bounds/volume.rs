//! Lattice counts of V(r, s) and the volume formulas behind them.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::interval::{factorial, q_int, q_pow, ser_q, Enclosure, Q};
use super::BoundsError;

fn ceil_u64(x: &Q) -> u64 {
    if !x.is_positive() {
        return 0;
    }
    x.ceil().to_integer().to_u64().expect("desk-scale parameter")
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of α in Z_{>=0}^d with α_1 + ... + α_{d-1} < r and |α| < s.
pub fn dim_v(r: &Q, s: &Q, d: u32) -> BigUint {
    let big_r = ceil_u64(r);
    let big_s = ceil_u64(s);
    if d == 0 {
        return BigUint::from(u32::from(big_s > 0 && big_r > 0));
    }
    if d == 1 {
        return if big_r > 0 {
            BigUint::from(big_s)
        } else {
            BigUint::zero()
        };
    }
    // j = α_1 + ... + α_{d-1} ranges below min(R, S); α_d then has S - j values.
    (0..big_r.min(big_s))
        .map(|j| binom(j + d as u64 - 2, d as u64 - 2) * (big_s - j))
        .sum()
}

/// Volume of {a >= 0 : a_1 + ... + a_{d-1} <= u, |a| <= v} for v >= u >= 0.
pub fn vol_s(u: &Q, v: &Q, d: u32) -> Result<Q, BoundsError> {
    if u.is_negative() || v < u || d == 0 {
        return Err(BoundsError::Precondition(format!(
            "vol_S needs v >= u >= 0, d >= 1 (u = {u}, v = {v})"
        )));
    }
    Ok(q_pow(u, d) / factorial(d) + (v - u) * q_pow(u, d - 1) / factorial(d - 1))
}

/// The expanded form `-(d-1)/d! u^d + v u^(d-1)/(d-1)!`.
pub fn vol_s_expanded(u: &Q, v: &Q, d: u32) -> Q {
    -q_int(d as i64 - 1) / factorial(d) * q_pow(u, d) + v * q_pow(u, d - 1) / factorial(d - 1)
}

/// `vol(T) = vol(T1) + vol(T2)` given a rational value `root` standing for
/// m_p^(1/(d-1)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VolT {
    #[serde(serialize_with = "ser_q")]
    pub t1: Q,
    #[serde(serialize_with = "ser_q")]
    pub t2: Q,
    #[serde(serialize_with = "ser_q")]
    pub total: Q,
}

pub fn vol_t(root: &Q, c: &Q, q: u64, d: u32) -> Result<VolT, BoundsError> {
    if d < 2 || q < 2 {
        return Err(BoundsError::Precondition("vol_T needs d >= 2 and q >= 2".into()));
    }
    if !(c >= root && *root >= Q::one()) {
        return Err(BoundsError::Precondition(format!(
            "vol_T needs c >= root >= 1 (c = {c}, root = {root})"
        )));
    }
    let t1 = (c - root) / factorial(d - 1);
    let t2 = q_int(d as i64 - 1) * (Q::one() - Q::new(BigInt::one(), BigInt::from(q - 1))) / factorial(d);
    Ok(VolT {
        total: &t1 + &t2,
        t1,
        t2,
    })
}

/// Leading coefficient bound for codim C_p, in both algebraic forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodimBound {
    /// `m root / d! + m vol(T)`.
    #[serde(serialize_with = "ser_q")]
    pub assembled: Q,
    /// `-(d-1)/d! m (root - 1) + m (c/(d-1)! - (d-1)/((q-1) d!))`.
    #[serde(serialize_with = "ser_q")]
    pub rearranged: Q,
}

pub fn codim_cp_bound(m: u64, root: &Q, c: &Q, q: u64, d: u32) -> Result<CodimBound, BoundsError> {
    if m == 0 {
        return Ok(CodimBound {
            assembled: Q::zero(),
            rearranged: Q::zero(),
        });
    }
    let mq = q_int(m as i64);
    let vt = vol_t(root, c, q, d)?;
    let assembled = &mq * root / factorial(d) + &mq * vt.total;
    Ok(CodimBound {
        rearranged: codim_rearranged(&mq, root, c, q, d),
        assembled,
    })
}

fn codim_rearranged(m: &Q, root: &Q, c: &Q, q: u64, d: u32) -> Q {
    let dm1 = q_int(d as i64 - 1);
    -(&dm1 / factorial(d)) * m * (root - Q::one())
        + m * (c / factorial(d - 1) - &dm1 / (q_int(q as i64 - 1) * factorial(d)))
}

/// The rearranged form over enclosures of the root and of c. It is
/// decreasing in the root and increasing in c.
pub fn codim_cp_enclosure(m: u64, root: &Enclosure, c: &Enclosure, q: u64, d: u32) -> Enclosure {
    if m == 0 {
        return Enclosure::int(0);
    }
    let mq = q_int(m as i64);
    Enclosure::new(
        codim_rearranged(&mq, &root.hi, &c.lo, q, d),
        codim_rearranged(&mq, &root.lo, &c.hi, q, d),
    )
}

/// `|dim_V(un, vn) / n^d - vol_S(u, v, d)| / vol_S(u, v, d)`.
pub fn dim_v_relative_error(u: &Q, v: &Q, d: u32, n: u64) -> Result<Q, BoundsError> {
    let vol = vol_s(u, v, d)?;
    let nq = q_int(n as i64);
    let count = Q::from_integer(BigInt::from(dim_v(&(u * &nq), &(v * &nq), d)));
    let scaled = count / q_pow(&nq, d);
    Ok((scaled - &vol).abs() / vol)
}

#[cfg(test)]
mod tests {
    use super::super::interval::q_frac;
    use super::*;
    use proptest::prelude::*;

    fn brute_dim_v(r: &Q, s: &Q, d: u32) -> u64 {
        let bound = ceil_u64(s) as u32;
        crate::poly::ExpVec::all_below(d as usize, bound)
            .iter()
            .filter(|a| {
                let head: u32 = a.as_slice()[..d as usize - 1].iter().sum();
                q_int(head as i64) < *r && q_int(a.degree() as i64) < *s
            })
            .count() as u64
    }

    #[test]
    fn dim_v_examples() {
        assert_eq!(dim_v(&q_int(2), &q_int(3), 2), BigUint::from(5u32));
        // s <= r: only the simplex constraint matters.
        assert_eq!(dim_v(&q_int(9), &q_int(4), 3), binom(3 + 3, 3));
        assert_eq!(
            dim_v(&q_frac(5, 2), &q_frac(7, 2), 2),
            BigUint::from(brute_dim_v(&q_frac(5, 2), &q_frac(7, 2), 2))
        );
        assert_eq!(dim_v(&q_int(0), &q_int(5), 3), BigUint::zero());
    }

    #[test]
    fn dim_v_matches_enumeration() {
        for d in 2..=4 {
            for r in 0..6 {
                for s in 0..7 {
                    let (r, s) = (q_frac(r * 2 + 1, 2), q_int(s));
                    assert_eq!(dim_v(&r, &s, d), BigUint::from(brute_dim_v(&r, &s, d)), "{r} {s} {d}");
                }
            }
        }
    }

    #[test]
    fn vol_s_examples() {
        assert_eq!(vol_s(&q_int(1), &q_int(2), 2).unwrap(), q_frac(3, 2));
        assert_eq!(vol_s(&q_int(2), &q_int(2), 3).unwrap(), q_frac(8, 6));
        assert!(vol_s(&q_int(2), &q_int(1), 2).is_err());
    }

    #[test]
    fn dim_v_converges_to_volume() {
        for (u, v, d) in [(1, 2, 2), (1, 2, 3), (2, 3, 3)] {
            let errs: Vec<Q> = [10, 20, 40]
                .iter()
                .map(|&n| dim_v_relative_error(&q_int(u), &q_int(v), d, n).unwrap())
                .collect();
            assert!(errs[0] > errs[1] && errs[1] > errs[2], "{u} {v} {d}");
            assert!(errs[2] < q_frac(15, 100), "{u} {v} {d}");
        }
        // The 5% figure at n = 40 for (1, 2, 2).
        assert!(dim_v_relative_error(&q_int(1), &q_int(2), 2, 40).unwrap() < q_frac(5, 100));
    }

    #[test]
    fn vol_t_examples() {
        let v = vol_t(&q_int(1), &q_int(3), 4, 2).unwrap();
        assert_eq!(v.total, q_frac(7, 3));
        assert_eq!(v.t1, q_int(2));
        let v = vol_t(&q_int(2), &q_int(2), 5, 3).unwrap();
        assert_eq!(v.t1, Q::zero());
        assert_eq!(v.total, q_int(2) * q_frac(3, 4) / q_int(6));
        assert_eq!(vol_t(&q_int(1), &q_int(2), 2, 3).unwrap().t2, Q::zero());
        assert!(vol_t(&q_int(3), &q_int(2), 5, 2).is_err());
        assert!(vol_t(&q_frac(1, 2), &q_int(2), 5, 2).is_err());
    }

    #[test]
    fn codim_limit_and_zero() {
        assert_eq!(
            codim_cp_bound(0, &q_int(0), &q_int(1), 5, 3).unwrap().assembled,
            Q::zero()
        );
        for d in 2..6 {
            let target = Q::one() / factorial(d - 1);
            let gap = |q: u64| {
                let b = codim_cp_bound(1, &q_int(1), &q_int(1), q, d).unwrap();
                (target.clone() - b.assembled).abs()
            };
            assert!(gap(1000) < gap(10));
            assert!(gap(1_000_000) < q_frac(1, 100_000));
        }
    }

    proptest! {
        #[test]
        fn vol_s_forms_agree(a in 0i64..40, b in 0i64..40, den in 1i64..12, d in 1u32..6) {
            let u = q_frac(a, den);
            let v = &u + q_frac(b, den);
            prop_assert_eq!(vol_s(&u, &v, d).unwrap(), vol_s_expanded(&u, &v, d));
        }

        #[test]
        fn codim_forms_agree(m in 1u64..50, r in 0i64..30, extra in 0i64..30, den in 1i64..8, q in 2u64..40, d in 2u32..6) {
            let root = Q::one() + q_frac(r, den);
            let c = &root + q_frac(extra, den);
            let b = codim_cp_bound(m, &root, &c, q, d).unwrap();
            prop_assert_eq!(&b.assembled, &b.rearranged);
            let enc = codim_cp_enclosure(m, &Enclosure::point(root), &Enclosure::point(c), q, d);
            prop_assert_eq!(enc, Enclosure::point(b.assembled));
        }
    }
}
