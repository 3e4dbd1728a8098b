mod common;

use common::*;
use pmod::interleaving::{
    interval_distance, interval_interleaved, is_trivial, left_interleaved, oracle_interleaving_exists,
    oracle_module_distance, pair_distance, pair_interleaved, DEFAULT_BUDGET,
};
use pmod::{Barcode, FieldChar, IntervalSet};
use proptest::prelude::*;

fn arb_rect() -> impl Strategy<Value = IntervalSet> {
    (-8i64..=8, -8i64..=8, 0i64..6, 0i64..6).prop_map(|(x, y, w, h)| rect((x, y), (x + w, y + h)))
}

fn one(i: &IntervalSet) -> Barcode {
    Barcode::new(2, vec![i.clone()]).unwrap()
}

#[test]
fn hook_leg_is_not_close_to_the_hook() {
    let (m, n) = pmod::construct::instability_instance(4).unwrap();
    for eps in 0..2 {
        assert!(!pair_interleaved(Some(&m[0]), Some(&n[0]), eps).unwrap());
    }
}

#[test]
fn fallback_agrees_with_oracle_on_multi_component_pairs() {
    for (a, b) in multi_component_pairs().iter().take(20) {
        let d = interval_distance(Some(a), Some(b)).unwrap();
        let oracle = oracle_module_distance(&one(a), &one(b), FieldChar::F3, DEFAULT_BUDGET).unwrap();
        assert_eq!(d, oracle);
        assert_eq!(interval_distance(Some(b), Some(a)).unwrap(), d);
    }
}

#[test]
fn witness_is_independent_of_thread_count() {
    let (m, n) = pmod::construct::instability_instance(4).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| oracle_interleaving_exists(&m, &n, 1, FieldChar::F3, DEFAULT_BUDGET).unwrap())
    };
    let a = run(1).unwrap();
    let b = run(4).unwrap();
    assert!(a.verify().unwrap());
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn criterion_matches_oracle(a in arb_rect(), b in arb_rect(), eps in 0u64..5) {
        let w = oracle_interleaving_exists(&one(&a), &one(&b), eps, FieldChar::F2, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(pair_interleaved(Some(&a), Some(&b), eps).unwrap(), w.is_some());
        if let Some(w) = w {
            prop_assert!(w.verify().unwrap());
        }
    }

    #[test]
    fn significant_left_interleaving_suffices(a in arb_rect(), b in arb_rect(), eps in 0u64..4) {
        if !is_trivial(&a, 4 * eps) && left_interleaved(&a, &b, eps).unwrap() {
            prop_assert!(pair_interleaved(Some(&a), Some(&b), eps).unwrap());
        }
    }

    #[test]
    fn interleaving_is_monotone(a in arb_rect(), b in arb_rect(), eps in 0u64..6) {
        if pair_interleaved(Some(&a), Some(&b), eps).unwrap() {
            prop_assert!(pair_interleaved(Some(&a), Some(&b), eps + 1).unwrap());
        }
    }

    #[test]
    fn pair_distance_is_a_pseudometric(a in arb_rect(), b in arb_rect(), c in arb_rect()) {
        let d = |x: Option<&IntervalSet>, y: Option<&IntervalSet>| pair_distance(x, y).unwrap();
        prop_assert_eq!(d(Some(&a), Some(&a)), 0);
        prop_assert_eq!(d(Some(&a), Some(&b)), d(Some(&b), Some(&a)));
        prop_assert!(d(Some(&a), Some(&c)) <= d(Some(&a), Some(&b)) + d(Some(&b), Some(&c)));
        prop_assert!(d(Some(&a), None) <= d(Some(&a), Some(&b)) + d(Some(&b), None));
    }

    #[test]
    fn pair_distance_is_shift_invariant(a in arb_rect(), b in arb_rect(), t in -20i64..20) {
        let (sa, sb) = (a.shift(t).unwrap(), b.shift(t).unwrap());
        prop_assert_eq!(pair_distance(Some(&a), Some(&b)).unwrap(), pair_distance(Some(&sa), Some(&sb)).unwrap());
    }

    #[test]
    fn fallback_is_transparent_on_rects(a in arb_rect(), b in arb_rect(), eps in 0u64..5) {
        prop_assert_eq!(
            interval_interleaved(Some(&a), Some(&b), eps).unwrap(),
            pair_interleaved(Some(&a), Some(&b), eps).unwrap()
        );
    }
}
