//! Affine flats, canonical lines, invertible affine maps, and the
//! polynomial operations that go with them.

use rand::Rng;

use super::{ExpVec, MultiPoly, Multiplicity, PolyError};
use crate::field::{Field, FieldElem};
use crate::linalg::Matrix;

fn check_field(field: &Field, xs: &[FieldElem]) -> Result<(), PolyError> {
    if xs.iter().all(|x| x.field_id() == field.id()) {
        Ok(())
    } else {
        Err(PolyError::FieldMismatch)
    }
}

/// Linear polynomial `c + Σ coeffs[i] t_i` in `coeffs.len()` variables.
fn linear_poly(field: &Field, c: FieldElem, coeffs: &[FieldElem]) -> MultiPoly {
    let r = coeffs.len();
    let mut p = MultiPoly::constant(field, r, c);
    for (i, &a) in coeffs.iter().enumerate() {
        p.add_term(ExpVec::unit(r, i), a);
    }
    p
}

/// The affine subspace `{ base + t_1 b_1 + ... + t_r b_r }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    field: Field,
    base: Vec<FieldElem>,
    dirs: Vec<Vec<FieldElem>>,
}

impl Flat {
    pub fn new(field: &Field, base: Vec<FieldElem>, dirs: Vec<Vec<FieldElem>>) -> Result<Self, PolyError> {
        let d = base.len();
        check_field(field, &base)?;
        for b in &dirs {
            if b.len() != d {
                return Err(PolyError::DimensionMismatch {
                    expected: d,
                    got: b.len(),
                });
            }
            check_field(field, b)?;
        }
        if dirs.len() > d || (!dirs.is_empty() && Matrix::from_rows(field, &dirs).rank() < dirs.len()) {
            return Err(PolyError::DependentDirections);
        }
        Ok(Flat {
            field: field.clone(),
            base,
            dirs,
        })
    }

    /// The whole space F^d with the standard parameterisation.
    pub fn whole_space(field: &Field, d: usize) -> Self {
        let dirs = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        Flat {
            field: field.clone(),
            base: vec![field.zero(); d],
            dirs,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    pub fn base(&self) -> &[FieldElem] {
        &self.base
    }

    pub fn dirs(&self) -> &[Vec<FieldElem>] {
        &self.dirs
    }

    pub fn point_at(&self, t: &[FieldElem]) -> Result<Vec<FieldElem>, PolyError> {
        if t.len() != self.dim() {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim(),
                got: t.len(),
            });
        }
        let f = &self.field;
        let mut x = self.base.clone();
        for (ti, b) in t.iter().zip(&self.dirs) {
            for (xj, &bj) in x.iter_mut().zip(b) {
                *xj = f.add(*xj, f.mul(*ti, bj));
            }
        }
        Ok(x)
    }

    /// Flat-local coordinates of `point`, or `None` if it is not on the flat.
    pub fn local_coords(&self, point: &[FieldElem]) -> Result<Option<Vec<FieldElem>>, PolyError> {
        let d = self.ambient_dim();
        if point.len() != d {
            return Err(PolyError::DimensionMismatch {
                expected: d,
                got: point.len(),
            });
        }
        check_field(&self.field, point)?;
        let f = &self.field;
        let r = self.dim();
        // Solve [b_1 .. b_r] t = point - base via the augmented system.
        let rows: Vec<Vec<FieldElem>> = (0..d)
            .map(|j| {
                let mut row: Vec<FieldElem> = self.dirs.iter().map(|b| b[j]).collect();
                row.push(f.sub(point[j], self.base[j]));
                row
            })
            .collect();
        let mut m = Matrix::from_rows(f, &rows);
        let pivots = m.echelon(true);
        if pivots.last() == Some(&r) {
            return Ok(None);
        }
        let mut t = vec![f.zero(); r];
        for (i, &c) in pivots.iter().enumerate() {
            t[c] = m.get(i, r);
        }
        Ok(Some(t))
    }
}

/// A line in canonical form: the direction's first nonzero coordinate is 1
/// and the base point is the lexicographically least point of the line
/// (its coordinate at that pivot is 0). Equal point sets give equal values,
/// and the derived ordering is the canonical line order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    base: Vec<FieldElem>,
    dir: Vec<FieldElem>,
}

impl Line {
    /// The line through `point` with direction `dir`.
    pub fn new(field: &Field, point: &[FieldElem], dir: &[FieldElem]) -> Result<Self, PolyError> {
        if point.len() != dir.len() {
            return Err(PolyError::DimensionMismatch {
                expected: point.len(),
                got: dir.len(),
            });
        }
        check_field(field, point)?;
        check_field(field, dir)?;
        let pivot = dir.iter().position(|x| !x.is_zero()).ok_or(PolyError::ZeroDirection)?;
        let scale = field.inv(dir[pivot]).expect("pivot is nonzero");
        let dir: Vec<FieldElem> = dir.iter().map(|&x| field.mul(x, scale)).collect();
        let shift = point[pivot];
        let base = point
            .iter()
            .zip(&dir)
            .map(|(&x, &v)| field.sub(x, field.mul(shift, v)))
            .collect();
        Ok(Line { base, dir })
    }

    pub fn through_points(field: &Field, a: &[FieldElem], b: &[FieldElem]) -> Result<Self, PolyError> {
        if a.len() != b.len() {
            return Err(PolyError::DimensionMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        let dir: Vec<FieldElem> = b.iter().zip(a).map(|(&y, &x)| field.sub(y, x)).collect();
        Self::new(field, a, &dir)
    }

    pub fn base(&self) -> &[FieldElem] {
        &self.base
    }

    pub fn dir(&self) -> &[FieldElem] {
        &self.dir
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    /// Index of the first nonzero direction coordinate.
    pub fn pivot(&self) -> usize {
        self.dir.iter().position(|x| !x.is_zero()).expect("canonical")
    }

    pub fn point_at(&self, field: &Field, t: FieldElem) -> Vec<FieldElem> {
        self.base
            .iter()
            .zip(&self.dir)
            .map(|(&b, &v)| field.add(b, field.mul(t, v)))
            .collect()
    }

    /// Parameter `t` with `point = base + t dir`, if the point is on the line.
    pub fn param_of(&self, field: &Field, point: &[FieldElem]) -> Option<FieldElem> {
        if point.len() != self.base.len() {
            return None;
        }
        let t = point[self.pivot()];
        (self.point_at(field, t) == point).then_some(t)
    }

    pub fn contains(&self, field: &Field, point: &[FieldElem]) -> bool {
        self.param_of(field, point).is_some()
    }

    /// All q points, in parameter order.
    pub fn points(&self, field: &Field) -> Vec<Vec<FieldElem>> {
        field.elements().map(|t| self.point_at(field, t)).collect()
    }

    pub fn to_flat(&self, field: &Field) -> Flat {
        Flat {
            field: field.clone(),
            base: self.base.clone(),
            dirs: vec![self.dir.clone()],
        }
    }
}

/// Invertible affine map `x -> A x + b`.
#[derive(Clone, Debug)]
pub struct AffineMap {
    field: Field,
    matrix: Matrix,
    inverse: Matrix,
    shift: Vec<FieldElem>,
}

impl AffineMap {
    pub fn new(field: &Field, rows: &[Vec<FieldElem>], shift: Vec<FieldElem>) -> Result<Self, PolyError> {
        let d = shift.len();
        check_field(field, &shift)?;
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(PolyError::DimensionMismatch {
                expected: d,
                got: rows.len(),
            });
        }
        for r in rows {
            check_field(field, r)?;
        }
        let matrix = Matrix::from_rows(field, rows);
        let inverse = matrix.inverse().ok_or(PolyError::SingularMap)?;
        Ok(AffineMap {
            field: field.clone(),
            matrix,
            inverse,
            shift,
        })
    }

    pub fn identity(field: &Field, d: usize) -> Self {
        AffineMap {
            field: field.clone(),
            matrix: Matrix::identity(field, d),
            inverse: Matrix::identity(field, d),
            shift: vec![field.zero(); d],
        }
    }

    pub fn translation(field: &Field, shift: Vec<FieldElem>) -> Self {
        let d = shift.len();
        AffineMap {
            shift,
            ..Self::identity(field, d)
        }
    }

    /// Uniformly random invertible map (rejection sampling on the matrix).
    pub fn random<R: Rng>(field: &Field, d: usize, rng: &mut R) -> Self {
        let q = field.order();
        loop {
            let rows: Vec<Vec<FieldElem>> = (0..d)
                .map(|_| (0..d).map(|_| field.elem(rng.random_range(0..q)).unwrap()).collect())
                .collect();
            let shift = (0..d).map(|_| field.elem(rng.random_range(0..q)).unwrap()).collect();
            if let Ok(t) = Self::new(field, &rows, shift) {
                return t;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn matrix_row(&self, r: usize) -> Vec<FieldElem> {
        self.matrix.row(r)
    }

    pub fn apply(&self, x: &[FieldElem]) -> Vec<FieldElem> {
        let f = &self.field;
        self.matrix
            .mul_vec(x)
            .into_iter()
            .zip(&self.shift)
            .map(|(y, &b)| f.add(y, b))
            .collect()
    }

    pub fn inverse(&self) -> AffineMap {
        let f = &self.field;
        let neg_shift: Vec<FieldElem> = self
            .inverse
            .mul_vec(&self.shift)
            .into_iter()
            .map(|x| f.neg(x))
            .collect();
        AffineMap {
            field: f.clone(),
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
            shift: neg_shift,
        }
    }
}

impl MultiPoly {
    /// `f(a + b_1 t_1 + ... + b_r t_r)` as a polynomial in `t_1..t_r`.
    pub fn restrict(&self, flat: &Flat) -> Result<MultiPoly, PolyError> {
        if flat.ambient_dim() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: flat.ambient_dim(),
            });
        }
        if flat.field != self.field {
            return Err(PolyError::FieldMismatch);
        }
        let subs: Vec<MultiPoly> = (0..self.nvars)
            .map(|j| {
                let coeffs: Vec<FieldElem> = flat.dirs.iter().map(|b| b[j]).collect();
                linear_poly(&self.field, flat.base[j], &coeffs)
            })
            .collect();
        self.compose(&subs)
    }

    /// Multiplicity of `f|_ℓ` at the parameter of `point`.
    pub fn mult_on_line(&self, line: &Line, point: &[FieldElem]) -> Result<Multiplicity, PolyError> {
        if line.ambient_dim() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: line.ambient_dim(),
            });
        }
        check_field(&self.field, point)?;
        let t = line.param_of(&self.field, point).ok_or(PolyError::NotOnLine)?;
        self.restrict(&line.to_flat(&self.field))?.mult_at(&[t])
    }

    /// The composition `f ∘ T`.
    pub fn apply_affine(&self, map: &AffineMap) -> Result<MultiPoly, PolyError> {
        if map.dim() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: map.dim(),
            });
        }
        if map.field != self.field {
            return Err(PolyError::FieldMismatch);
        }
        let subs: Vec<MultiPoly> = (0..self.nvars)
            .map(|j| linear_poly(&self.field, map.shift[j], &map.matrix.row(j)))
            .collect();
        self.compose(&subs)
    }
}
