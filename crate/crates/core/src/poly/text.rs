//! Text form `c*x1^e1*...*xd^ed + ...`, highest graded-lex term first.

use std::fmt;

use super::{ExpVec, MultiPoly, PolyError};
use crate::field::Field;

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, &c)) in self.terms().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&self.field().render(c))?;
            for (v, &k) in e.as_slice().iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", v + 1)?,
                    _ => write!(f, "*x{}^{}", v + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    /// Reads the text form produced by `Display`. A coefficient may be
    /// omitted (it defaults to 1), as may `^1`.
    pub fn parse(field: &Field, nvars: usize, text: &str) -> Result<MultiPoly, PolyError> {
        let err = |msg: String| PolyError::Parse(msg);
        let mut out = MultiPoly::zero(field, nvars);
        if text.trim().is_empty() {
            return Err(err("empty input".into()));
        }
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(err("empty term".into()));
            }
            let mut coeff = None;
            let mut exps = vec![0u32; nvars];
            for factor in term.split('*') {
                let factor = factor.trim();
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, e)) => (
                            i,
                            e.parse::<u32>()
                                .map_err(|_| err(format!("bad exponent in {factor:?}")))?,
                        ),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err(format!("bad variable {factor:?}")))?;
                    if idx == 0 || idx > nvars {
                        return Err(err(format!("variable {factor:?} out of range 1..={nvars}")));
                    }
                    exps[idx - 1] += pow;
                } else {
                    if coeff.is_some() {
                        return Err(err(format!("two coefficients in {term:?}")));
                    }
                    coeff = Some(field.parse_elem(factor).map_err(|e| err(e.to_string()))?);
                }
            }
            out.add_term(ExpVec::new(exps), coeff.unwrap_or(field.one()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn printing() {
        let f = Field::new(7, 1).unwrap();
        let x = MultiPoly::var(&f, 2, 0);
        let y = MultiPoly::var(&f, 2, 1);
        let g = &(&x.pow(2) * &y).scale(f.from_int(3)) + &MultiPoly::constant(&f, 2, f.from_int(5));
        assert_eq!(g.to_string(), "3*x1^2*x2 + 5");
        assert_eq!(MultiPoly::zero(&f, 2).to_string(), "0");
    }

    #[test]
    fn parsing_variants_and_errors() {
        let f = Field::new(7, 1).unwrap();
        let a = MultiPoly::parse(&f, 2, "x1*x2 + 2*x1^1 + 6").unwrap();
        assert_eq!(a.to_string(), "1*x1*x2 + 2*x1 + 6");
        assert_eq!(MultiPoly::parse(&f, 2, "0").unwrap(), MultiPoly::zero(&f, 2));
        assert!(MultiPoly::parse(&f, 2, "x3").is_err());
        assert!(MultiPoly::parse(&f, 2, "2*3*x1").is_err());
        assert!(MultiPoly::parse(&f, 2, "1 + ").is_err());
        assert!(MultiPoly::parse(&f, 2, "9").is_err());
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(seed in any::<u64>(), spec in prop::sample::select(vec!["5", "3^2", "11^2"])) {
            let f = Field::from_spec(spec).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = MultiPoly::random(&f, 3, 4, 0.3, &mut rng);
            let back = MultiPoly::parse(&f, 3, &g.to_string()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
