use super::{Field, FieldElem, FieldError, DEFAULT_ORDER_LIMIT};

/// Field homomorphism GF(p^k) -> GF(p^{km}).
///
/// The generator `x` of the source maps to the least root (in canonical
/// order) of the source modulus inside the target, so the map is fixed by
/// `(p, k, m)` alone.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    // images of 1, x, x^2, ..., x^{k-1}
    basis: Vec<FieldElem>,
}

impl Embedding {
    pub fn new(source: &Field, m: u32) -> Result<Self, FieldError> {
        Self::with_limit(source, m, DEFAULT_ORDER_LIMIT)
    }

    pub fn with_limit(source: &Field, m: u32, limit: u64) -> Result<Self, FieldError> {
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let target = Field::with_limit(source.characteristic(), source.degree() * m, limit)?;
        Self::between(source, &target)
    }

    /// Embedding into an existing field of the same characteristic.
    pub fn between(source: &Field, target: &Field) -> Result<Self, FieldError> {
        if source.characteristic() != target.characteristic() || !target.degree().is_multiple_of(source.degree()) {
            return Err(FieldError::NotAnExtension {
                from: source.order(),
                to: target.order(),
            });
        }
        let k = source.degree() as usize;
        let generator = if k == 1 {
            target.one()
        } else {
            let modulus: Vec<FieldElem> = source.modulus().iter().map(|&c| target.from_int(c as i64)).collect();
            target
                .elements()
                .find(|&b| {
                    // Horner evaluation of the source modulus at b
                    let v = modulus
                        .iter()
                        .rev()
                        .fold(target.zero(), |acc, &c| target.add(target.mul(acc, b), c));
                    v.is_zero()
                })
                .expect("the modulus splits in an extension of divisible degree")
        };
        let mut basis = Vec::with_capacity(k);
        let mut cur = target.one();
        for _ in 0..k {
            basis.push(cur);
            cur = target.mul(cur, generator);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            basis,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        if a.field_id() != self.source.id() {
            return Err(FieldError::ContextMismatch {
                left: a.field_id().order(),
                right: self.source.order(),
            });
        }
        let t = &self.target;
        let coeffs = self.source.coeffs(a);
        Ok(coeffs
            .iter()
            .zip(&self.basis)
            .fold(t.zero(), |acc, (&c, &b)| t.add(acc, t.mul(t.from_int(c as i64), b))))
    }

    /// Applies the embedding coordinatewise.
    pub fn apply_point(&self, point: &[FieldElem]) -> Result<Vec<FieldElem>, FieldError> {
        point.iter().map(|&a| self.apply(a)).collect()
    }
}

/// Embeds a single element of `source` into GF(p^{k m}).
pub fn embed(a: FieldElem, source: &Field, m: u32) -> Result<FieldElem, FieldError> {
    Embedding::new(source, m)?.apply(a)
}
