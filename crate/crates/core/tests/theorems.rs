//! Every statement checker runs clean at a representative parameter point.

use shadowlab::verify::{check_theorem, CheckParams, TheoremId, Verdict};

fn point(id: TheoremId) -> CheckParams {
    use TheoremId::*;
    let p = match id {
        IntersectingShadow => CheckParams::new(5, 2, 1),
        SharpenedShadow => CheckParams::new(12, 4, 2),
        FranklUnionShadow | StarShadowIdentity => CheckParams::new(9, 4, 3),
        SemistarShadow => CheckParams::new(9, 5, 3),
        SemistarCoreBalance => CheckParams::new(9, 5, 3),
        LargeFamilyShadow => CheckParams::new(10, 3, 1),
        NonStarMaximum => CheckParams::new(6, 3, 1),
        MaximumIsFrankl => CheckParams::new(6, 3, 2),
        SizeConditionNeeded => {
            let mut p = CheckParams::new(44, 9, 3).with_j(1);
            p.s_range = Some((0, 0));
            p.n_range = Some((43, 45));
            p
        }
        GeneralWidthShadow => CheckParams::new(20, 5, 2),
        _ => CheckParams::new(12, 5, 2),
    };
    p.with_samples(120)
}

#[test]
fn every_statement_holds_at_its_point() {
    for id in TheoremId::ALL {
        let p = point(id);
        let r = check_theorem(id, &p).unwrap_or_else(|e| panic!("{id}: {e}"));
        assert!(r.passed(), "{id} at {p}: {} {:?}", r.verdict, r.detail);
        if id == TheoremId::SizeConditionNeeded {
            assert!(r.witness.is_some());
        }
    }
}

#[test]
fn exhaustive_points_report_it() {
    let r = check_theorem(TheoremId::ShiftedIsPseudo, &CheckParams::new(6, 3, 1)).unwrap();
    assert!(r.exhaustive);
    assert!(r.checked > 0);
    let r = check_theorem(TheoremId::ShiftedIsPseudo, &CheckParams::new(9, 4, 2).with_samples(50)).unwrap();
    assert!(!r.exhaustive);
}

#[test]
fn general_bound_is_vacuous_at_small_n() {
    // Twice the size threshold exceeds every t-intersecting family here.
    let r = check_theorem(TheoremId::GeneralWidthShadow, &CheckParams::new(12, 5, 2).with_samples(50)).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    assert_eq!(r.checked, 0);
}

#[test]
fn seeds_change_the_sample_but_not_the_verdict() {
    for seed in [0, 7, 1 << 40] {
        let r = check_theorem(TheoremId::WidthShadow, &CheckParams::new(10, 4, 2).with_samples(60).with_seed(seed)).unwrap();
        assert!(r.passed());
    }
}
