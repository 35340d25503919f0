use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{GeometryError, PointSet, Space};
use crate::field::FieldElem;
use crate::poly::Line;

/// Which valid line to associate with a point when several qualify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum TieBreak {
    /// The least valid line in canonical order.
    #[default]
    Canonical,
    /// Uniform among valid lines, drawn from one ChaCha8 stream visiting
    /// points in index order.
    Seeded { seed: u64 },
}

/// A set together with one associated line per covered point.
#[derive(Debug, Clone)]
pub struct NikodymInstance {
    set: PointSet,
    assoc: BTreeMap<u64, Line>,
    strong: bool,
    policy: TieBreak,
}

impl NikodymInstance {
    pub fn set(&self) -> &PointSet {
        &self.set
    }

    /// Point index to associated line.
    pub fn assoc(&self) -> &BTreeMap<u64, Line> {
        &self.assoc
    }

    /// True when every point of the space has a line, not only those
    /// outside the set.
    pub fn is_strong(&self) -> bool {
        self.strong
    }

    pub fn policy(&self) -> TieBreak {
        self.policy
    }

    /// The associated lines of points outside the set; distinct points give
    /// distinct lines since each such line meets the complement only once.
    pub fn line_family(&self) -> Vec<&Line> {
        self.assoc
            .iter()
            .filter(|(x, _)| !self.set.contains_index(**x))
            .map(|(_, l)| l)
            .collect()
    }

    /// Rechecks every association point by point.
    pub fn verify(&self) -> Result<(), GeometryError> {
        let space = self.set.space();
        let f = space.field();
        let bad = |m: String| Err(GeometryError::InvalidInstance(m));
        for i in 0..space.size() {
            let required = self.strong || !self.set.contains_index(i);
            if required != self.assoc.contains_key(&i) {
                return bad(format!("point {i} has the wrong association status"));
            }
        }
        for (&i, line) in &self.assoc {
            let x = space.point(i);
            if !line.contains(f, &x) {
                return bad(format!("point {i} is not on its line"));
            }
            for p in line.points(f) {
                let j = space.index(&p);
                if j != i && !self.set.contains_index(j) {
                    return bad(format!("line of point {i} leaves the set at point {j}"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum NikodymCheck {
    Holds(NikodymInstance),
    /// A point with no line whose other points all lie in the set.
    Refuted {
        index: u64,
        point: Vec<FieldElem>,
    },
}

impl NikodymCheck {
    pub fn holds(&self) -> bool {
        matches!(self, NikodymCheck::Holds(_))
    }

    pub fn instance(&self) -> Option<&NikodymInstance> {
        match self {
            NikodymCheck::Holds(inst) => Some(inst),
            NikodymCheck::Refuted { .. } => None,
        }
    }
}

/// Directions `v` for which every point `x + t v`, t != 0, is in `set`.
fn punctured_directions<'a>(set: &PointSet, x: &[FieldElem], dirs: &'a [Vec<FieldElem>]) -> Vec<&'a Vec<FieldElem>> {
    let space = set.space();
    let f = space.field();
    dirs.iter()
        .filter(|v| {
            f.nonzero_elements().all(|t| {
                let p: Vec<FieldElem> = x.iter().zip(v.iter()).map(|(&a, &b)| f.add(a, f.mul(t, b))).collect();
                set.contains_index(space.index(&p))
            })
        })
        .collect()
}

fn check(set: &PointSet, policy: TieBreak, strong: bool) -> NikodymCheck {
    let space: &Space = set.space();
    let f = space.field();
    let dirs = space.directions();
    let mut rng = match policy {
        TieBreak::Seeded { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        TieBreak::Canonical => None,
    };
    let mut assoc = BTreeMap::new();
    for i in 0..space.size() {
        if !strong && set.contains_index(i) {
            continue;
        }
        let x = space.point(i);
        let mut valid: Vec<Line> = punctured_directions(set, &x, &dirs)
            .into_iter()
            .map(|v| Line::new(f, &x, v).expect("nonzero direction"))
            .collect();
        if valid.is_empty() {
            return NikodymCheck::Refuted { index: i, point: x };
        }
        let chosen = match rng.as_mut() {
            None => valid.into_iter().min().unwrap(),
            Some(r) => {
                valid.sort();
                let k = r.random_range(0..valid.len());
                valid.swap_remove(k)
            }
        };
        assoc.insert(i, chosen);
    }
    NikodymCheck::Holds(NikodymInstance {
        set: set.clone(),
        assoc,
        strong,
        policy,
    })
}

/// Every point outside the set has a line whose other points lie inside.
pub fn is_weak_nikodym(set: &PointSet, policy: TieBreak) -> NikodymCheck {
    check(set, policy, false)
}

/// Every point of the space has such a line.
pub fn is_nikodym(set: &PointSet, policy: TieBreak) -> NikodymCheck {
    check(set, policy, true)
}

#[derive(Debug, Clone)]
pub struct KakeyaCheck {
    /// Each canonical direction with the least contained line, if any.
    pub witnesses: Vec<(Vec<FieldElem>, Option<Line>)>,
}

impl KakeyaCheck {
    pub fn holds(&self) -> bool {
        self.witnesses.iter().all(|(_, l)| l.is_some())
    }

    pub fn missing(&self) -> Vec<&Vec<FieldElem>> {
        self.witnesses
            .iter()
            .filter(|(_, l)| l.is_none())
            .map(|(v, _)| v)
            .collect()
    }
}

pub fn is_kakeya(set: &PointSet) -> KakeyaCheck {
    let space = set.space();
    let f = space.field();
    let witnesses = space
        .directions()
        .into_iter()
        .map(|v| {
            let pivot = v.iter().position(|x| !x.is_zero()).unwrap();
            let line = space
                .points()
                .filter(|b| b[pivot].is_zero())
                .map(|b| Line::new(f, &b, &v).expect("nonzero direction"))
                .find(|l| set.covers_line(l, None));
            (v, line)
        })
        .collect();
    KakeyaCheck { witnesses }
}

/// For each point p of the set, the number of associated lines (of points
/// outside the set) passing through p.
pub fn instance_mp(inst: &NikodymInstance) -> BTreeMap<u64, u64> {
    let space = inst.set.space();
    let mut mp: BTreeMap<u64, u64> = inst.set.indices().map(|i| (i, 0)).collect();
    for (x, line) in &inst.assoc {
        if inst.set.contains_index(*x) {
            continue;
        }
        for j in space.line_indices(line) {
            if j != *x {
                *mp.get_mut(&j).expect("punctured line inside the set") += 1;
            }
        }
    }
    mp
}
