use nikodym_core::field::prime_power;
use nikodym_core::geometry::{instance_mp, is_nikodym, is_weak_nikodym, PointSet, Space, TieBreak};
use nikodym_core::Field;
use proptest::prelude::*;

#[test]
fn line_count_formula_up_to_ten_thousand_points() {
    for d in 1..=13usize {
        for q in 2..=100u64 {
            if prime_power(q).is_none() || (q as f64).powi(d as i32) > 1e4 {
                continue;
            }
            let s = Space::new(&Field::from_order(q).unwrap(), d, 10_000).unwrap();
            let want = q.pow(d as u32 - 1) * (q.pow(d as u32) - 1) / (q - 1);
            let mut count = 0u64;
            for l in s.lines() {
                // Canonical form: direction starts with 1, base is 0 there.
                let p = l.pivot();
                assert!(l.dir()[p].index() == 1 && l.base()[p].is_zero());
                count += 1;
            }
            assert_eq!(count, want, "q = {q}, d = {d}");
            assert_eq!(s.line_count(), want);
            if want <= 20_000 {
                let distinct: std::collections::HashSet<Vec<u64>> = s
                    .lines()
                    .map(|l| {
                        let mut pts = s.line_indices(&l);
                        pts.sort();
                        pts
                    })
                    .collect();
                assert_eq!(distinct.len() as u64, want, "distinct point sets, q = {q}, d = {d}");
            }
        }
    }
}

fn small_space() -> impl Strategy<Value = (u64, usize)> {
    prop::sample::select(vec![(2u64, 2usize), (3, 2), (2, 3), (4, 2), (3, 3), (5, 2)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nikodym_sets_are_weak_nikodym((q, d) in small_space(), bits in prop::collection::vec(prop::bool::weighted(0.85), 125)) {
        let s = Space::new(&Field::from_order(q).unwrap(), d, 1000).unwrap();
        let set = PointSet::from_indices(&s, (0..s.size()).filter(|&i| bits[i as usize]));
        let strong = is_nikodym(&set, TieBreak::Canonical);
        let weak = is_weak_nikodym(&set, TieBreak::Canonical);
        if strong.holds() {
            prop_assert!(weak.holds());
        }
        for check in [&strong, &weak] {
            if let Some(inst) = check.instance() {
                prop_assert!(inst.verify().is_ok());
            }
        }
        if let Some(inst) = weak.instance() {
            let total: u64 = instance_mp(inst).values().sum();
            prop_assert_eq!(total, (q - 1) * inst.line_family().len() as u64);
            prop_assert_eq!(inst.line_family().len(), s.size() as usize - set.len());
        }
    }

    #[test]
    fn seeded_tie_break_gives_valid_instances((q, d) in small_space(), seed in any::<u64>(), bits in prop::collection::vec(prop::bool::weighted(0.9), 125)) {
        let s = Space::new(&Field::from_order(q).unwrap(), d, 1000).unwrap();
        let set = PointSet::from_indices(&s, (0..s.size()).filter(|&i| bits[i as usize]));
        let canonical = is_weak_nikodym(&set, TieBreak::Canonical);
        let seeded = is_weak_nikodym(&set, TieBreak::Seeded { seed });
        prop_assert_eq!(canonical.holds(), seeded.holds());
        if let Some(inst) = seeded.instance() {
            prop_assert!(inst.verify().is_ok());
        }
    }
}
