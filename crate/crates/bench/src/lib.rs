//! Seeded inputs shared by the benchmarks.

use nikodym_core::geometry::{PointSet, Space};
use nikodym_core::spread::{random_instance, SpreadInstance};
use nikodym_core::{Field, FieldElem, MultiPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` uniformly random field elements.
pub fn elements(field: &Field, n: usize, seed: u64) -> Vec<FieldElem> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| field.elem(r.random_range(0..field.order())).unwrap())
        .collect()
}

/// A dense random polynomial of the given degree.
pub fn dense_poly(field: &Field, nvars: usize, deg: u32, seed: u64) -> MultiPoly {
    MultiPoly::random(field, nvars, deg, 1.0, &mut rng(seed))
}

pub fn spread_fixture(field: &Field, k: usize, r: usize, seed: u64) -> SpreadInstance {
    random_instance(field, k, r, seed).expect("fixture fits the field")
}

/// The whole space with `holes` points removed at random.
pub fn punctured(space: &Space, holes: usize, seed: u64) -> PointSet {
    let mut r = rng(seed);
    let mut set = PointSet::full(space);
    for _ in 0..holes {
        set.set_index(r.random_range(0..space.size()), false);
    }
    set
}
