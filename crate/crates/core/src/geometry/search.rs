//! Smallest sets satisfying a predicate: exhaustive for tiny spaces, a
//! seeded greedy upper bound otherwise.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{is_kakeya, is_nikodym, is_weak_nikodym, GeometryError, PointSet, Space, TieBreak};

/// Largest space searched exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Weak,
    Nikodym,
    Kakeya,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub mode: SearchMode,
    /// A set satisfying the predicate.
    pub set: PointSet,
    /// True only when every smaller subset was checked and rejected.
    pub exact: bool,
    /// Every set of size below this was checked and rejected.
    pub lower_bound: usize,
    pub evaluations: u64,
}

impl SearchResult {
    pub fn size(&self) -> usize {
        self.set.len()
    }
}

/// Line masks for spaces of at most 16 points.
struct Masks {
    n: u32,
    /// For each direction, the masks of its parallel lines.
    by_direction: Vec<Vec<u32>>,
}

impl Masks {
    fn new(space: &Space) -> Self {
        let lines = space.all_lines();
        let mut by_direction: Vec<(Vec<_>, Vec<u32>)> = Vec::new();
        for l in &lines {
            let m = space.line_indices(l).iter().fold(0u32, |a, &i| a | 1 << i);
            match by_direction.iter_mut().find(|(d, _)| d.as_slice() == l.dir()) {
                Some((_, v)) => v.push(m),
                None => by_direction.push((l.dir().to_vec(), vec![m])),
            }
        }
        Masks {
            n: space.size() as u32,
            by_direction: by_direction.into_iter().map(|(_, v)| v).collect(),
        }
    }

    fn holds(&self, mode: SearchMode, s: u32) -> bool {
        let lines = || self.by_direction.iter().flatten();
        match mode {
            SearchMode::Kakeya => self.by_direction.iter().all(|ls| ls.iter().any(|&l| l & !s == 0)),
            SearchMode::Weak | SearchMode::Nikodym => (0..self.n).all(|x| {
                let bit = 1u32 << x;
                (mode == SearchMode::Weak && s & bit != 0)
                    || lines().any(|&l| l & bit != 0 && (l & !bit) & s == l & !bit)
            }),
        }
    }
}

fn holds(mode: SearchMode, set: &PointSet) -> bool {
    match mode {
        SearchMode::Weak => is_weak_nikodym(set, TieBreak::Canonical).holds(),
        SearchMode::Nikodym => is_nikodym(set, TieBreak::Canonical).holds(),
        SearchMode::Kakeya => is_kakeya(set).holds(),
    }
}

/// Removes points one at a time in a seeded random order, keeping each
/// removal that preserves the predicate. The result always satisfies it.
fn greedy(space: &Space, mode: SearchMode, budget: &mut u64, seed: u64) -> PointSet {
    let mut order: Vec<u64> = (0..space.size()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut set = PointSet::full(space);
    for i in order {
        if *budget == 0 {
            break;
        }
        *budget -= 1;
        set.set_index(i, false);
        if !holds(mode, &set) {
            set.set_index(i, true);
        }
    }
    set
}

/// Advances `c` to the next k-combination of 0..n in lexicographic order.
fn next_combination(c: &mut [u32], n: u32) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - (k - i) as u32 {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Smallest set for `mode`. Spaces of at most [`EXHAUSTIVE_LIMIT`] points
/// are searched exhaustively by increasing size, returning the
/// lexicographically first minimum; larger spaces, or an exhausted budget,
/// yield a greedy upper bound with `exact == false`.
pub fn min_set(space: &Space, mode: SearchMode, budget: u64, seed: u64) -> Result<SearchResult, GeometryError> {
    if budget == 0 {
        return Err(GeometryError::ZeroBudget);
    }
    let mut left = budget;
    let upper = greedy(space, mode, &mut left, seed);
    let mut result = SearchResult {
        mode,
        lower_bound: 0,
        set: upper,
        exact: false,
        evaluations: 0,
    };
    if space.size() <= EXHAUSTIVE_LIMIT && left > 0 {
        let masks = Masks::new(space);
        let n = masks.n;
        'sizes: for k in 0..=result.set.len() as u32 {
            let mut c: Vec<u32> = (0..k).collect();
            loop {
                if left == 0 {
                    break 'sizes;
                }
                left -= 1;
                let s = c.iter().fold(0u32, |a, &i| a | 1 << i);
                if masks.holds(mode, s) {
                    result.set = PointSet::from_indices(space, c.iter().map(|&i| i as u64));
                    result.exact = true;
                    result.lower_bound = k as usize;
                    break 'sizes;
                }
                if !next_combination(&mut c, n) {
                    break;
                }
            }
            result.lower_bound = k as usize + 1;
        }
    }
    result.evaluations = budget - left;
    Ok(result)
}

pub fn min_weak_nikodym(space: &Space, budget: u64, seed: u64) -> Result<SearchResult, GeometryError> {
    min_set(space, SearchMode::Weak, budget, seed)
}
