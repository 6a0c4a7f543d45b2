//! Randomized invariants of the closed forms, the text formats and the maps.

mod common;

use fuzzylim::certalg::MonotoneMap;
use fuzzylim::format::{load, render, Document};
use fuzzylim::funlim::{
    admissible_set, is_qr_limit_discrete, qr_defect_discrete, qr_limit_set, weak_qr_defect_discrete, Expr,
    FunctionModel,
};
use fuzzylim::scalar::{dist, rat, Scalar, XScalar};
use fuzzylim::seqlim::{
    defect_of, interleave, is_r_limit, r_limit_set, set_defect, weak_defect, SequenceSet, SequenceSpec,
};
use proptest::prelude::*;

fn scalar(lo: i64, hi: i64) -> impl Strategy<Value = Scalar> {
    (1i64..=6).prop_flat_map(move |den| (lo * den..=hi * den).prop_map(move |num| rat(num, den)))
}

fn non_negative() -> impl Strategy<Value = Scalar> {
    scalar(0, 12)
}

fn sequence() -> impl Strategy<Value = SequenceSpec> {
    any::<u64>().prop_map(|seed| common::sequence(&mut common::rng(seed)))
}

fn finite(x: XScalar) -> Scalar {
    x.finite().cloned().expect("finite targets give finite defects")
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![Just(Expr::X), scalar(-4, 4).prop_map(Expr::Const)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |e| Expr::Neg(b(e))),
            inner.clone().prop_map(move |e| Expr::Abs(b(e))),
            inner.clone().prop_map(move |e| Expr::Sign(b(e))),
            inner.clone().prop_map(move |e| Expr::Floor(b(e))),
            inner.clone().prop_map(move |e| Expr::Recip(b(e))),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::plus(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::minus(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::times(l, r)),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| Expr::Min(b(l), b(r))),
            (inner.clone(), inner).prop_map(|(l, r)| Expr::max(l, r)),
        ]
    })
}

/// Strictly monotone piecewise-linear maps with up to three breakpoints.
fn monotone_map() -> impl Strategy<Value = MonotoneMap> {
    (prop::collection::btree_set(-8i64..=8, 0..=3), any::<bool>(), scalar(-5, 5)).prop_flat_map(
        |(breaks, increasing, intercept)| {
            let n = breaks.len() + 1;
            prop::collection::vec(scalar(1, 4), n).prop_map(move |mags| {
                let slopes = mags.into_iter().map(|m| if increasing { m } else { -m }).collect();
                let breaks = breaks.iter().map(|&b| rat(b, 1)).collect();
                MonotoneMap::new(breaks, slopes, intercept.clone(), None).unwrap()
            })
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn r_limits_persist_as_r_grows(seq in sequence(), a in scalar(-12, 12), r in non_negative(), extra in non_negative()) {
        let a = XScalar::Finite(a);
        if is_r_limit(&a, &r, &seq).unwrap() {
            prop_assert!(is_r_limit(&a, &(&r + &extra), &seq).unwrap());
        }
    }

    #[test]
    fn defect_is_one_lipschitz_in_the_point(seq in sequence(), a in scalar(-12, 12), b in scalar(-12, 12)) {
        let da = finite(defect_of(&a, &seq));
        let db = finite(defect_of(&b, &seq));
        prop_assert!(dist(&da, &db) <= dist(&a, &b));
    }

    #[test]
    fn dropping_strands_never_raises_the_defect(seq in sequence(), a in scalar(-12, 12), mask in 1u8..16) {
        let kept: Vec<_> = seq.strands().iter().enumerate()
            .filter(|(i, _)| mask >> (i % 4) & 1 == 1)
            .map(|(_, s)| s.clone())
            .collect();
        prop_assume!(!kept.is_empty());
        let sub = SequenceSpec::new(Vec::new(), kept).unwrap();
        prop_assert!(defect_of(&a, &sub) <= defect_of(&a, &seq));
        prop_assert!(weak_defect(&a, &sub) >= weak_defect(&a, &seq));
    }

    #[test]
    fn weak_defect_is_at_most_strong(seq in sequence(), a in scalar(-12, 12)) {
        prop_assert!(weak_defect(&a, &seq) <= defect_of(&a, &seq));
    }

    #[test]
    fn r_limit_set_is_exactly_the_r_limits(seq in sequence(), r in non_negative(), probe in scalar(-24, 24)) {
        let inside = defect_of(&probe, &seq).le(&r);
        match r_limit_set(&r, &seq).unwrap() {
            Some(set) => {
                prop_assert!(set.length() <= &r + &r);
                prop_assert!(defect_of(set.lo(), &seq).le(&r));
                prop_assert!(defect_of(set.hi(), &seq).le(&r));
                prop_assert_eq!(set.contains(&probe), inside);
            }
            None => prop_assert!(!inside),
        }
    }

    #[test]
    fn set_defect_matches_the_interleaving(seeds in prop::collection::vec(any::<u64>(), 1..=4), a in scalar(-12, 12)) {
        let members = seeds.iter().map(|&s| common::sequence(&mut common::rng(s))).collect();
        let set = SequenceSet::new(members).unwrap();
        prop_assert_eq!(set_defect(&a, &set), defect_of(&a, &interleave(&set)));
    }

    #[test]
    fn table_weak_defect_is_at_most_strong(seed in any::<u64>(), a in scalar(-6, 6), q in non_negative(), b in scalar(-10, 10)) {
        let f = common::table(&mut common::rng(seed), 10);
        prop_assume!(!admissible_set(&f, &a, &q).is_empty());
        prop_assert!(weak_qr_defect_discrete(&f, &a, &q, &b).unwrap() <= qr_defect_discrete(&f, &a, &q, &b).unwrap());
    }

    #[test]
    fn table_defects_are_monotone_in_q(seed in any::<u64>(), a in scalar(-6, 6), q in non_negative(), extra in non_negative(), b in scalar(-10, 10)) {
        let f = common::table(&mut common::rng(seed), 10);
        prop_assume!(!admissible_set(&f, &a, &q).is_empty());
        let wider = &q + &extra;
        prop_assert!(qr_defect_discrete(&f, &a, &q, &b).unwrap() <= qr_defect_discrete(&f, &a, &wider, &b).unwrap());
        prop_assert!(weak_qr_defect_discrete(&f, &a, &q, &b).unwrap() >= weak_qr_defect_discrete(&f, &a, &wider, &b).unwrap());
    }

    #[test]
    fn table_limit_set_is_exactly_the_limits(seed in any::<u64>(), a in scalar(-6, 6), q in non_negative(), r in non_negative(), b in scalar(-12, 12)) {
        let f = common::table(&mut common::rng(seed), 10);
        prop_assume!(!admissible_set(&f, &a, &q).is_empty());
        let holds = is_qr_limit_discrete(&f, &a, &q, &r, &b).unwrap();
        let inside = qr_limit_set(&f, &a, &q, &r).unwrap().is_some_and(|s| s.contains(&b));
        prop_assert_eq!(holds, inside);
    }

    #[test]
    fn expressions_round_trip_through_text(e in expr(), x in scalar(-6, 6)) {
        // `-c` reads back as one literal, so the first trip may fold negated
        // constants; after that the tree is a fixed point.
        let back = Expr::parse(&e.to_string()).unwrap();
        prop_assert_eq!(back.eval(&x), e.eval(&x));
        prop_assert_eq!(Expr::parse(&back.to_string()).unwrap(), back);
    }

    #[test]
    fn sequences_round_trip_through_text(seq in sequence()) {
        let doc = Document::Sequence(seq);
        prop_assert_eq!(load(&render(&doc)).unwrap(), doc);
    }

    #[test]
    fn tables_round_trip_through_text(seed in any::<u64>(), size in 1usize..12) {
        let f = common::table(&mut common::rng(seed), size);
        let doc = Document::Function(FunctionModel::table(f).unwrap());
        prop_assert_eq!(load(&render(&doc)).unwrap(), doc);
    }

    #[test]
    fn generators_round_trip_through_text(e in expr()) {
        let doc = Document::Function(FunctionModel::expr(&e.to_string()).unwrap());
        prop_assert_eq!(load(&render(&doc)).unwrap(), doc);
    }

    #[test]
    fn automata_round_trip_through_text(seed in any::<u64>()) {
        let doc = Document::Automaton(common::automaton(&mut common::rng(seed), 4));
        prop_assert_eq!(load(&render(&doc)).unwrap(), doc);
    }

    #[test]
    fn monotone_maps_invert(g in monotone_map(), x in scalar(-16, 16)) {
        let y = g.apply(&x);
        prop_assert_eq!(g.inverse(&y), Some(x.clone()));
        prop_assert_eq!(g.to_expr().eval(&x), Some(y));
        prop_assert_eq!(MonotoneMap::parse(&g.to_string()).unwrap(), g);
    }
}
