//! Line families and their intersections with a hyperplane.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SpreadError, SpreadInstance};
use crate::field::{Embedding, Field, FieldElem};
use crate::poly::{Flat, Line, PolyError};

/// The hyperplane `normal · x = offset`, normalised so the first nonzero
/// normal coordinate (the pivot) is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    normal: Vec<FieldElem>,
    offset: FieldElem,
}

impl Hyperplane {
    pub fn new(field: &Field, normal: &[FieldElem], offset: FieldElem) -> Result<Self, PolyError> {
        let pivot = normal
            .iter()
            .position(|x| !x.is_zero())
            .ok_or(PolyError::ZeroDirection)?;
        if normal.iter().chain([&offset]).any(|x| x.field_id() != field.id()) {
            return Err(PolyError::FieldMismatch);
        }
        let s = field.inv(normal[pivot]).expect("nonzero");
        Ok(Hyperplane {
            normal: normal.iter().map(|&x| field.mul(x, s)).collect(),
            offset: field.mul(offset, s),
        })
    }

    /// `x_i = c`.
    pub fn coordinate(field: &Field, d: usize, i: usize, c: FieldElem) -> Result<Self, PolyError> {
        let mut normal = vec![field.zero(); d];
        normal[i] = field.one();
        Self::new(field, &normal, c)
    }

    pub fn normal(&self) -> &[FieldElem] {
        &self.normal
    }

    pub fn offset(&self) -> FieldElem {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn pivot(&self) -> usize {
        self.normal.iter().position(|x| !x.is_zero()).expect("normalised")
    }

    fn dot(&self, field: &Field, x: &[FieldElem]) -> FieldElem {
        self.normal
            .iter()
            .zip(x)
            .fold(field.zero(), |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
    }

    pub fn contains(&self, field: &Field, x: &[FieldElem]) -> bool {
        self.dot(field, x) == self.offset
    }

    /// Parameterisation whose local coordinates are the non-pivot
    /// coordinates of the ambient point.
    pub fn as_flat(&self, field: &Field) -> Flat {
        let j = self.pivot();
        let d = self.dim();
        let mut base = vec![field.zero(); d];
        base[j] = self.offset;
        let dirs = (0..d)
            .filter(|&i| i != j)
            .map(|i| {
                let mut v = vec![field.zero(); d];
                v[i] = field.one();
                v[j] = field.neg(self.normal[i]);
                v
            })
            .collect();
        Flat::new(field, base, dirs).expect("independent by construction")
    }
}

/// Pairwise distinct lines in F^d.
#[derive(Debug, Clone)]
pub struct LineFamily {
    field: Field,
    d: usize,
    lines: Vec<Line>,
}

impl LineFamily {
    pub fn new(field: &Field, d: usize, lines: Vec<Line>) -> Result<Self, SpreadError> {
        let mut seen = std::collections::HashSet::new();
        for (i, l) in lines.iter().enumerate() {
            if l.ambient_dim() != d {
                return Err(PolyError::DimensionMismatch {
                    expected: d,
                    got: l.ambient_dim(),
                }
                .into());
            }
            if !seen.insert(l) {
                return Err(SpreadError::DuplicateLine(i));
            }
        }
        Ok(LineFamily {
            field: field.clone(),
            d,
            lines,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// The same lines over an extension field.
    pub fn embed(&self, e: &Embedding) -> Result<Self, SpreadError> {
        let t = e.target();
        let lines = self
            .lines
            .iter()
            .map(|l| Ok(Line::new(t, &e.apply_point(l.base())?, &e.apply_point(l.dir())?)?))
            .collect::<Result<Vec<_>, SpreadError>>()?;
        Self::new(t, self.d, lines)
    }

    /// Intersection of line `i` with `h`.
    pub fn meet(&self, i: usize, h: &Hyperplane) -> Result<Vec<FieldElem>, SpreadError> {
        let f = &self.field;
        let l = &self.lines[i];
        let rate = h.dot(f, l.dir());
        if rate.is_zero() {
            return Err(SpreadError::ParallelLine(i));
        }
        let t = f.div(f.sub(h.offset, h.dot(f, l.base())), rate)?;
        Ok(l.point_at(f, t))
    }
}

/// The points `ℓ ∩ H`, one per line, as an instance on `H` in local
/// coordinates (the non-pivot coordinates).
pub fn lines_to_points(family: &LineFamily, h: &Hyperplane) -> Result<SpreadInstance, SpreadError> {
    if h.dim() != family.d {
        return Err(PolyError::DimensionMismatch {
            expected: family.d,
            got: h.dim(),
        }
        .into());
    }
    if h.normal.iter().any(|x| x.field_id() != family.field.id()) {
        return Err(PolyError::FieldMismatch.into());
    }
    let pts = (0..family.len())
        .map(|i| family.meet(i, h))
        .collect::<Result<Vec<_>, _>>()?;
    SpreadInstance::on_flat(&h.as_flat(&family.field), &pts).map_err(|e| match e {
        SpreadError::DuplicatePoint(i, j) => SpreadError::CoincidentIntersections(i, j),
        other => other,
    })
}

#[derive(Debug, Clone)]
pub struct AvoidingHyperplane {
    pub hyperplane: Hyperplane,
    /// The family over the extension field.
    pub family: LineFamily,
    pub instance: SpreadInstance,
    pub attempts: u64,
}

/// Seeded random search over GF(q^m) for a hyperplane containing no point
/// of F_q^d, parallel to no line of the family, and meeting the lines in
/// distinct points.
pub fn find_avoiding_hyperplane(
    family: &LineFamily,
    m: u32,
    seed: u64,
    budget: u64,
    point_cap: u64,
) -> Result<AvoidingHyperplane, SpreadError> {
    let base = &family.field;
    let d = family.d;
    let npoints = (base.order() as f64).powi(d as i32);
    if npoints > point_cap as f64 {
        return Err(SpreadError::PointCap(npoints as u64));
    }
    let e = Embedding::new(base, m)?;
    let big = e.target().clone();
    let embedded = family.embed(&e)?;
    let mut rational: Vec<Vec<FieldElem>> = vec![Vec::new()];
    for _ in 0..d {
        rational = rational
            .into_iter()
            .flat_map(|p| {
                base.elements().map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    let rational: Vec<Vec<FieldElem>> = rational.iter().map(|p| e.apply_point(p)).collect::<Result<_, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = big.order();
    for attempt in 1..=budget {
        let normal: Vec<FieldElem> = (0..d).map(|_| big.elem(rng.random_range(0..q)).unwrap()).collect();
        let offset = big.elem(rng.random_range(0..q)).unwrap();
        let Ok(h) = Hyperplane::new(&big, &normal, offset) else {
            continue;
        };
        if rational.iter().any(|x| h.contains(&big, x)) {
            continue;
        }
        if let Ok(instance) = lines_to_points(&embedded, &h) {
            return Ok(AvoidingHyperplane {
                hyperplane: h,
                family: embedded,
                instance,
                attempts: attempt,
            });
        }
    }
    Err(SpreadError::BudgetExhausted(budget))
}
