//! Point sets in F_q^d and the Nikodym / weak Nikodym / Kakeya predicates.
//!
//! Points are indexed mixed-radix over the canonical element order, most
//! significant coordinate first, so index order is lexicographic order.

mod io;
mod nikodym;
mod search;

pub use io::{read_point_set, write_point_set};
pub use nikodym::{
    instance_mp, is_kakeya, is_nikodym, is_weak_nikodym, KakeyaCheck, NikodymCheck, NikodymInstance, TieBreak,
};
pub use search::{min_set, min_weak_nikodym, SearchMode, SearchResult};

use bitvec::prelude::*;

use crate::field::{Field, FieldElem, FieldError};
use crate::poly::{Line, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("space has {points} points, above the cap of {cap}")]
    PointCap { points: u64, cap: u64 },
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("point sets live in different spaces")]
    SpaceMismatch,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("budget must be positive")]
    ZeroBudget,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// F_q^d with a point-count cap already enforced.
#[derive(Debug, Clone)]
pub struct Space {
    field: Field,
    d: usize,
    size: u64,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.d == other.d
    }
}

impl Eq for Space {}

impl Space {
    pub fn new(field: &Field, d: usize, cap: u64) -> Result<Self, GeometryError> {
        let q = field.order();
        let size = (0..d).try_fold(1u64, |acc, _| acc.checked_mul(q)).unwrap_or(u64::MAX);
        if size > cap {
            return Err(GeometryError::PointCap { points: size, cap });
        }
        Ok(Space {
            field: field.clone(),
            d,
            size,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    /// Number of points q^d.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn index(&self, x: &[FieldElem]) -> u64 {
        debug_assert_eq!(x.len(), self.d);
        let q = self.q();
        x.iter().fold(0u64, |acc, e| acc * q + e.index() as u64)
    }

    pub fn point(&self, index: u64) -> Vec<FieldElem> {
        let mut x = vec![self.field.zero(); self.d];
        self.fill_digits(&mut x, index);
        x
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<FieldElem>> + '_ {
        (0..self.size).map(|i| self.point(i))
    }

    /// Canonical directions: first nonzero coordinate equal to 1, in
    /// lexicographic order. There are (q^d - 1)/(q - 1) of them.
    pub fn directions(&self) -> Vec<Vec<FieldElem>> {
        self.points()
            .filter(|v| v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.index() == 1))
            .collect()
    }

    /// Every line of the space, in canonical order.
    pub fn all_lines(&self) -> Vec<Line> {
        let mut lines: Vec<Line> = self.lines().collect();
        lines.sort();
        lines
    }

    /// Every line exactly once, generated lazily as (direction, base) pairs
    /// with the base zero at the pivot; not in canonical order.
    pub fn lines(&self) -> impl Iterator<Item = Line> + '_ {
        let q = self.q();
        let d = self.d;
        (0..d).flat_map(move |pivot| {
            let tail = q.pow((d - pivot - 1) as u32);
            let rest = q.pow((d - 1) as u32);
            (0..tail).flat_map(move |t| {
                let mut dir = vec![self.field.zero(); d];
                dir[pivot] = self.field.one();
                self.fill_digits(&mut dir[pivot + 1..], t);
                (0..rest).map(move |b| {
                    let mut base = vec![self.field.zero(); d];
                    let mut others: Vec<FieldElem> = vec![self.field.zero(); d - 1];
                    self.fill_digits(&mut others, b);
                    let mut it = others.into_iter();
                    for (i, slot) in base.iter_mut().enumerate() {
                        if i != pivot {
                            *slot = it.next().unwrap();
                        }
                    }
                    Line::new(&self.field, &base, &dir).expect("nonzero direction")
                })
            })
        })
    }

    /// Writes `index` in base q into `out`, most significant first.
    fn fill_digits(&self, out: &mut [FieldElem], mut index: u64) {
        let q = self.q();
        for slot in out.iter_mut().rev() {
            *slot = self.field.elem(index % q).expect("in range");
            index /= q;
        }
    }

    /// Point indices of a line in parameter order.
    pub fn line_indices(&self, line: &Line) -> Vec<u64> {
        line.points(&self.field).iter().map(|x| self.index(x)).collect()
    }

    /// Expected line count q^{d-1} (q^d - 1)/(q - 1).
    pub fn line_count(&self) -> u64 {
        let q = self.q();
        if self.d == 0 {
            return 0;
        }
        q.pow(self.d as u32 - 1) * ((self.size - 1) / (q - 1))
    }
}

/// `all_lines` with the cap applied.
pub fn all_lines(field: &Field, d: usize, cap: u64) -> Result<Vec<Line>, GeometryError> {
    Ok(Space::new(field, d, cap)?.all_lines())
}

/// A subset of F_q^d as a bitset over point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    space: Space,
    bits: BitVec<u64, Lsb0>,
}

impl PointSet {
    pub fn empty(space: &Space) -> Self {
        PointSet {
            space: space.clone(),
            bits: bitvec![u64, Lsb0; 0; space.size as usize],
        }
    }

    pub fn full(space: &Space) -> Self {
        PointSet {
            space: space.clone(),
            bits: bitvec![u64, Lsb0; 1; space.size as usize],
        }
    }

    pub fn from_indices(space: &Space, indices: impl IntoIterator<Item = u64>) -> Self {
        let mut s = Self::empty(space);
        for i in indices {
            s.bits.set(i as usize, true);
        }
        s
    }

    pub fn from_points(space: &Space, points: &[Vec<FieldElem>]) -> Result<Self, GeometryError> {
        let mut s = Self::empty(space);
        for p in points {
            s.insert(p)?;
        }
        Ok(s)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    pub fn contains_index(&self, i: u64) -> bool {
        self.bits[i as usize]
    }

    fn check(&self, x: &[FieldElem]) -> Result<(), GeometryError> {
        if x.len() != self.space.d {
            return Err(GeometryError::DimensionMismatch {
                expected: self.space.d,
                got: x.len(),
            });
        }
        if x.iter().any(|e| e.field_id() != self.space.field.id()) {
            return Err(PolyError::FieldMismatch.into());
        }
        Ok(())
    }

    pub fn contains(&self, x: &[FieldElem]) -> Result<bool, GeometryError> {
        self.check(x)?;
        Ok(self.contains_index(self.space.index(x)))
    }

    pub fn insert(&mut self, x: &[FieldElem]) -> Result<bool, GeometryError> {
        self.check(x)?;
        let i = self.space.index(x) as usize;
        let was = self.bits.replace(i, true);
        Ok(!was)
    }

    pub fn remove(&mut self, x: &[FieldElem]) -> Result<bool, GeometryError> {
        self.check(x)?;
        let i = self.space.index(x) as usize;
        Ok(self.bits.replace(i, false))
    }

    pub fn set_index(&mut self, i: u64, value: bool) {
        self.bits.set(i as usize, value);
    }

    /// Member indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones().map(|i| i as u64)
    }

    pub fn points(&self) -> Vec<Vec<FieldElem>> {
        self.indices().map(|i| self.space.point(i)).collect()
    }

    pub fn complement(&self) -> Self {
        PointSet {
            space: self.space.clone(),
            bits: !self.bits.clone(),
        }
    }

    /// Whether every point of the line lies in the set, optionally
    /// ignoring one point.
    pub fn covers_line(&self, line: &Line, except: Option<u64>) -> bool {
        line.points(&self.space.field)
            .iter()
            .map(|x| self.space.index(x))
            .all(|i| Some(i) == except || self.contains_index(i))
    }
}
