//! Structural invariants on seeded generated families.

use proptest::prelude::*;

use shadowlab::canonical::frankl_family;
use shadowlab::structure::{
    base_decomposition, height, is_pseudo_t_intersecting, split_inside, tail_partition, width,
};
use shadowlab::verify::checks::{self, Outcome};
use shadowlab::verify::generate::random_semistar;
use shadowlab::verify::{random_shifted_t_intersecting, CheckParams, Profile};
use shadowlab::{binomial, is_shifted, is_t_intersecting, shadow_j, Family, KSet};

/// `(n, k, t)` with `1 <= t < k` and `2k - t < n <= 3k`.
fn params() -> impl Strategy<Value = (usize, usize, usize)> {
    (2usize..=6)
        .prop_flat_map(|k| (Just(k), 1..k))
        .prop_flat_map(|(k, t)| (2 * k - t + 1..=3 * k, Just(k), Just(t)))
}

fn generated() -> impl Strategy<Value = (usize, usize, usize, Family)> {
    (params(), any::<u64>(), 0usize..4).prop_map(|((n, k, t), seed, p)| {
        let f = random_shifted_t_intersecting(n, k, t, seed, Profile::ALL[p]).unwrap();
        (n, k, t, f)
    })
}

fn holds(o: Outcome) -> bool {
    matches!(o, Outcome::Holds { .. } | Outcome::Vacuous)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn shifted_intersecting_is_pseudo((_, _, t, f) in generated()) {
        prop_assert!(is_shifted(&f) && is_t_intersecting(&f, t));
        prop_assert!(is_pseudo_t_intersecting(&f, t));
    }

    #[test]
    fn tail_classes_partition_and_stay_disjoint((n, k, t, f) in generated()) {
        let part = tail_partition(&f, t).unwrap();
        prop_assert_eq!(part.total_members(), f.len());
        for j in 1..=t.min(k - 1) {
            let shadows = part.restricted_shadows(j);
            let total: usize = shadows.values().map(Family::len).sum();
            prop_assert!(total <= shadow_j(&f, j).unwrap().len());
            let o = checks::partition_outcome(&f, &part, j).unwrap();
            prop_assert!(holds(o.clone()), "{:?}", o);
        }
        let o = checks::width_shadow(&f, &CheckParams::new(n, k, t), false).unwrap();
        prop_assert!(holds(o.clone()), "{:?}", o);
    }

    #[test]
    fn heights_respect_width((_, _, t, f) in generated()) {
        let w = width(&f, t).unwrap();
        for &m in &f {
            let h = height(m, t, w).unwrap();
            prop_assert!(h <= w);
            prop_assert!(m.prefix_count(t + 2 * h) >= t + h);
        }
    }

    #[test]
    fn full_width_outer_part((_, k, t, f) in generated()) {
        if k >= t + 2 && width(&f, t).unwrap() == k - t {
            let (_, outside) = split_inside(&f, t);
            prop_assert!(is_pseudo_t_intersecting(&outside, t + 1));
            prop_assert!(width(&outside, t + 1).unwrap() <= k - t - 2);
        }
    }

    #[test]
    fn base_levels_bounded((n, k, t, f) in generated()) {
        let base = base_decomposition(&f, t).unwrap();
        for (&ell, level) in &base.levels {
            prop_assert!(ell >= t);
            let cap = binomial((2 * k - t) as u64, (ell - t) as i64);
            prop_assert!(num_bigint::BigUint::from(level.len()) <= cap);
        }
        let o = checks::base_properties(&f, &CheckParams::new(n, k, t), false).unwrap();
        prop_assert!(holds(o.clone()), "{:?}", o);
    }

    #[test]
    fn wide_families_contain_the_witness((n, k, t, f) in generated()) {
        let o = checks::width_dichotomy(&f, &CheckParams::new(n, k, t), false).unwrap();
        prop_assert!(holds(o.clone()), "{:?}", o);
    }

    #[test]
    fn large_level_families_beat_the_star((n, k, t, f) in generated()) {
        let o = checks::large_level_shadow(&f, &CheckParams::new(n, k, t), false).unwrap();
        prop_assert!(holds(o.clone()), "{:?}", o);
    }

    #[test]
    fn balanced_width_bound((n, k, t, f) in generated()) {
        let o = checks::balanced_width_shadow(&f, &CheckParams::new(n, k, t), false).unwrap();
        prop_assert!(holds(o.clone()), "{:?}", o);
    }

    #[test]
    fn semistars_meet_their_bound(seed in any::<u64>(), t in 3usize..=4, extra in 1usize..=2, slack in 1usize..=3) {
        let k = t + extra;
        let n = 2 * k - t + slack;
        let f = random_semistar(n, k, t, seed).unwrap();
        let o = checks::semistar_shadow(&f, &CheckParams::new(n, k, t), false).unwrap();
        prop_assert!(matches!(o, Outcome::Holds { .. }), "{:?}", o);
    }

    #[test]
    fn frankl_families_are_shifted_and_intersecting((n, k, t) in params(), h in 0usize..6) {
        let h = h.min(k - t);
        let a = frankl_family(n, k, t, h).unwrap();
        prop_assert!(is_shifted(&a));
        prop_assert!(is_t_intersecting(&a, t));
        prop_assert!(a.contains(KSet::prefix(k)));
    }
}
