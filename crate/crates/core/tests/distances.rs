mod common;

use common::*;
use pmod::distance::{
    bottleneck, bottleneck_with_witness, check_hausdorff_le_bottleneck, hausdorff, hausdorff_with_witness,
    verify_stability, Matching, Verdict,
};
use pmod::interleaving::DEFAULT_BUDGET;
use pmod::interval::flow_closure_violation;
use pmod::{Barcode, FieldChar, IntervalSet};
use proptest::prelude::*;

fn arb_rect() -> impl Strategy<Value = IntervalSet> {
    (-6i64..=6, -6i64..=6, 0i64..5, 0i64..5).prop_map(|(x, y, w, h)| rect((x, y), (x + w, y + h)))
}

fn arb_barcode() -> impl Strategy<Value = Barcode> {
    prop::collection::vec(arb_rect(), 0..4).prop_map(|v| Barcode::new(2, v).unwrap())
}

#[test]
fn instability_bottleneck_equals_hausdorff() {
    let (m, n) = pmod::construct::instability_instance(4).unwrap();
    let (b, w) = bottleneck_with_witness(&m, &n).unwrap();
    assert_eq!(b, hausdorff(&m, &n).unwrap());
    assert!(w.pairs.len() <= 1);
    assert!(w.verify(&m, &n).unwrap());
}

#[test]
fn instability_is_outside_the_hypothesis() {
    for a in [2, 4, 8] {
        let (m, n) = pmod::construct::instability_instance(a).unwrap();
        let bars: Vec<IntervalSet> = m.iter().chain(n.iter()).cloned().collect();
        let v = flow_closure_violation(&bars).unwrap().unwrap();
        // the hook meets its own shift in its two arms
        assert_eq!((v.first, v.second, v.components), (2, 2, 2));
        let r = verify_stability(&m, &n, FieldChar::F2, DEFAULT_BUDGET).unwrap();
        assert!(!r.flow_closed);
        let expect = if a <= 4 { Verdict::Pass } else { Verdict::NotClosed };
        assert_eq!(r.verdict, expect);
    }
}

#[test]
fn same_window_uppersets_are_flow_closed() {
    for seed in 0..20 {
        let u = pmod::construct::random_upperset_barcode(4, &pt(0, 0), &pt(6, 6), 3, seed).unwrap();
        let bars: Vec<IntervalSet> = u.iter().cloned().collect();
        assert_eq!(flow_closure_violation(&bars).unwrap(), None);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distances_are_pseudometrics(a in arb_barcode(), b in arb_barcode(), c in arb_barcode()) {
        for d in [hausdorff, bottleneck] {
            prop_assert_eq!(d(&a, &a).unwrap(), 0);
            prop_assert_eq!(d(&a, &b).unwrap(), d(&b, &a).unwrap());
            prop_assert!(d(&a, &c).unwrap() <= d(&a, &b).unwrap() + d(&b, &c).unwrap());
        }
    }

    #[test]
    fn hausdorff_at_most_bottleneck(a in arb_barcode(), b in arb_barcode()) {
        prop_assert!(check_hausdorff_le_bottleneck(&a, &b).unwrap().holds());
    }

    #[test]
    fn witnesses_verify_and_persist(a in arb_barcode(), b in arb_barcode()) {
        let (h, c) = hausdorff_with_witness(&a, &b).unwrap();
        prop_assert!(c.verify(&a, &b).unwrap());
        let (d, w) = bottleneck_with_witness(&a, &b).unwrap();
        prop_assert!(w.verify(&a, &b).unwrap());
        // monotone feasibility: the same matching works at larger eps
        let later = Matching { pairs: w.pairs.clone(), eps: d + 1 };
        prop_assert!(later.verify(&a, &b).unwrap());
        if d > 0 {
            let (_, earlier) = bottleneck_with_witness(&a, &b).unwrap();
            let tighter = Matching { pairs: earlier.pairs, eps: d - 1 };
            prop_assert!(!tighter.verify(&a, &b).unwrap());
        }
        prop_assert!(h <= d);
    }

    #[test]
    fn distances_are_shift_invariant(a in arb_barcode(), b in arb_barcode(), t in -10i64..10) {
        let (sa, sb) = (a.shift(t).unwrap(), b.shift(t).unwrap());
        prop_assert_eq!(hausdorff(&a, &b).unwrap(), hausdorff(&sa, &sb).unwrap());
        prop_assert_eq!(bottleneck(&a, &b).unwrap(), bottleneck(&sa, &sb).unwrap());
    }

    #[test]
    fn stability_holds(a in arb_barcode(), b in arb_barcode()) {
        let r = verify_stability(&a, &b, FieldChar::F2, DEFAULT_BUDGET).unwrap();
        prop_assert!(r.flow_closed);
        prop_assert!(matches!(r.verdict, Verdict::Pass | Verdict::Inconclusive));
    }
}
