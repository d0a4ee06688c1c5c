//! Brackets, catalog data and the classification checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use wald_core::bounds::{
    certify, detect_period, ev_lower_bound, upper_bound, LowerFormula, Status,
};
use wald_core::catalog::{self, Provenance};
use wald_core::engine::{Engine, Mode, ModePolicy};
use wald_core::geometry::Config;
use wald_core::verify::{
    classify_small, five_halves_check, longest_two_run, subset_survey, two_run_check, Outcome,
    RunVerdict, Verdict,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

const CERTIFIED: ModePolicy = ModePolicy::Fixed(Mode::Certified);

#[test]
fn certify_quadrilateral() {
    let (_, st) = certify(
        &Engine::default(),
        &catalog::build("H6_10").unwrap(),
        4,
        CERTIFIED,
    )
    .unwrap();
    assert_eq!(st.status, Status::ExactCertified);
    assert_eq!(st.value, Some(q(2, 1)));
    assert_eq!(st.upper_witness.m, 2);
    assert_eq!(
        (st.lower_witness.k, st.lower_witness.formula),
        (1, LowerFormula::EsnaultViehweg)
    );
}

#[test]
fn certify_line() {
    let (_, st) = certify(
        &Engine::default(),
        &catalog::build("LINE(5)").unwrap(),
        2,
        CERTIFIED,
    )
    .unwrap();
    assert_eq!(
        (st.status, st.value),
        (Status::ExactCertified, Some(q(1, 1)))
    );
}

#[test]
fn certify_triangle_with_side_points() {
    let (seq, st) = certify(
        &Engine::default(),
        &catalog::build("H6_9").unwrap(),
        8,
        CERTIFIED,
    )
    .unwrap();
    assert_eq!(st.status, Status::PeriodConjectured);
    assert_eq!(st.value, Some(q(9, 4)));
    assert_eq!((st.upper.clone(), st.upper_witness.m), (q(9, 4), 4));
    assert!(st.lower < q(9, 4));
    // every EV instance in the window stays strictly below
    for (i, &a) in seq.values().iter().enumerate() {
        assert!(ev_lower_bound(a, i as u32 + 1, 2).unwrap() < q(9, 4));
    }
}

#[test]
fn heuristic_upper_witness_is_recertified() {
    let z = catalog::build("H6_9").unwrap();
    let (seq, st) = certify(
        &Engine::default(),
        &z,
        8,
        ModePolicy::Fixed(Mode::Heuristic),
    )
    .unwrap();
    let witness = &seq.entries[st.upper_witness.m as usize - 1];
    assert_eq!(witness.certainty, wald_core::engine::Certainty::Certified);
    assert_eq!(st.upper_certainty, wald_core::engine::Certainty::Certified);
}

#[test]
fn catalog_periods_are_self_consistent() {
    for name in catalog::list().iter().filter(|n| !n.ends_with("(s)")) {
        let e = catalog::expected(name).unwrap();
        if let Some(p) = &e.period {
            assert_eq!(e.period_provenance, Provenance::Published);
            let mean = q(p.iter().sum::<u32>() as i64, p.len() as i64);
            assert_eq!(mean, e.alphahat, "{name}");
        }
    }
    assert_eq!(
        catalog::expected("NEAR_PENCIL(5)").unwrap().alphahat,
        q(7, 4)
    );
}

#[test]
fn catalog_builds_are_deterministic() {
    for name in catalog::list().iter().filter(|n| !n.ends_with("(s)")) {
        let a = catalog::build(name).unwrap();
        let b = catalog::build(name).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonical_hash(), b.canonical_hash());
    }
}

#[test]
fn two_run_examples() {
    assert_eq!(longest_two_run(&[3, 2, 2, 3, 2, 2, 2]), (3, Some(5)));
    assert_eq!(longest_two_run(&[3, 1, 3, 1]), (0, None));
    assert_eq!(longest_two_run(&[2, 2, 2, 2, 2]), (5, Some(1)));

    let e = Engine::default();
    let r = two_run_check(
        &e,
        &catalog::build("H6_9").unwrap(),
        8,
        ModePolicy::default(),
    )
    .unwrap();
    assert_eq!(
        (r.max_run, r.on_conic, r.verdict),
        (3, false, RunVerdict::Consistent)
    );
    let r = two_run_check(
        &e,
        &catalog::build("CONIC(6)").unwrap(),
        6,
        ModePolicy::default(),
    )
    .unwrap();
    assert!(r.max_run >= 4 && r.on_conic);
    assert_eq!(r.verdict, RunVerdict::Consistent);
    let r = two_run_check(
        &e,
        &catalog::build("LINE(5)").unwrap(),
        6,
        ModePolicy::default(),
    )
    .unwrap();
    assert_eq!(r.diffs, vec![1; 6]);
    assert_eq!(r.verdict, RunVerdict::Consistent);
    assert!(two_run_check(
        &e,
        &catalog::build("LINE(5)").unwrap(),
        4,
        ModePolicy::default()
    )
    .is_err());
}

#[test]
fn nine_point_survey() {
    let nine = catalog::entry("NINE_17_7").unwrap();
    let survey = subset_survey(&nine.realization).unwrap();
    for sv in survey {
        let label = nine.pattern.labels[sv.dropped].as_str();
        let want = match label {
            "B" | "D" | "E" => Verdict::ConicContained,
            "A" | "C" | "G" => Verdict::CatalogType("H8_136".into()),
            _ => Verdict::CatalogType("H8_137".into()),
        };
        assert_eq!(sv.verdict.verdict, want, "dropping {label}");
    }
}

#[test]
fn five_halves_examples() {
    let e = Engine::default();
    let nine = five_halves_check(
        &e,
        &catalog::build("NINE_17_7").unwrap(),
        7,
        ModePolicy::default(),
    )
    .unwrap();
    assert_eq!(nine.outcome, Outcome::Pass);
    assert_eq!(nine.bounds.upper, q(17, 7));
    assert_eq!(
        nine.structure.unwrap().verdict,
        Verdict::CatalogType("NINE_17_7".into())
    );
    for name in ["CONIC(10)", "NEAR_PENCIL(9)"] {
        let r = five_halves_check(&e, &catalog::build(name).unwrap(), 4, ModePolicy::default())
            .unwrap();
        assert_eq!(r.outcome, Outcome::Pass, "{name}");
        assert_eq!(r.structure.unwrap().verdict, Verdict::ConicContained);
    }
    assert!(five_halves_check(
        &e,
        &catalog::build("H8_118").unwrap(),
        4,
        ModePolicy::default()
    )
    .is_err());
}

#[test]
fn five_points_lie_on_a_conic() {
    let z = Config::from_triples(
        "five",
        &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [3, -2, 5]],
    )
    .unwrap();
    assert_eq!(classify_small(&z).verdict, Verdict::ConicContained);
}

fn periodic(pre: Vec<u32>, period: Vec<u32>, reps: usize, extra: usize) -> Vec<u32> {
    let mut v = pre;
    for i in 0..reps * period.len() + extra {
        v.push(period[i % period.len()]);
    }
    v
}

proptest! {
    #[test]
    fn detected_period_reproduces_the_data(
        period in proptest::collection::vec(1u32..4, 1..5),
        reps in 2usize..4,
        extra in 0usize..3,
    ) {
        let diffs = periodic(vec![], period.clone(), reps, extra);
        let g = detect_period(&diffs).expect("a pure periodic list has a period");
        prop_assert!(g.period.len() <= period.len());
        prop_assert_eq!(period.len() % g.period.len(), 0);
        prop_assert_eq!(g.extend(diffs.len()), diffs);
        prop_assert!(g.repetitions >= 2);
    }

    #[test]
    fn upper_bound_is_the_minimum_ratio(values in proptest::collection::vec(1u32..100, 1..12)) {
        let (best, m) = upper_bound(&values).unwrap();
        for (i, &a) in values.iter().enumerate() {
            let r = q(a as i64, i as i64 + 1);
            prop_assert!(best <= r);
            if (i as u32) + 1 < m {
                prop_assert!(best < r);
            }
        }
        prop_assert_eq!(best, q(values[m as usize - 1] as i64, m as i64));
    }
}
