use std::collections::BTreeSet;

use ordcalc::crosscheck::{self, CrosscheckConfig};
use ordcalc::freegroup::{ball, ReducedWord, Sign};
use ordcalc::rightorder::{
    cis, close_truncated, extend_right_order, initial_subterms, pivot_pool, rg_refute_bounded, sign_search, Extension,
    HmOutcome, LeafWitness, PivotSet, RefutationTree, RgBounds,
};
use ordcalc::{decide_lg_cs, decide_lg_hm, decide_rg, Execution, Status, Verdict, Witness};
use proptest::prelude::*;

fn ws(items: &[&str]) -> Vec<ReducedWord> {
    items.iter().map(|s| s.parse().unwrap()).collect()
}

fn set(items: &[&str]) -> BTreeSet<ReducedWord> {
    ws(items).into_iter().collect()
}

/// Naive fixpoint: add every product of length ≤ level until nothing changes.
fn closure_oracle(s: &[ReducedWord], level: usize) -> BTreeSet<ReducedWord> {
    let mut cur: BTreeSet<ReducedWord> = s.iter().cloned().collect();
    loop {
        let mut next = cur.clone();
        for a in &cur {
            for b in &cur {
                let p = a.mul(b);
                if p.len() <= level {
                    next.insert(p);
                }
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[test]
fn closure_examples() {
    assert_eq!(close_truncated(&ws(&["xx", "yy", "x'y'"]), 2), set(&["xx", "yy", "x'y'", "xy'", "x'y", "xy"]));
    assert_eq!(close_truncated(&ws(&["xx", "xy", "yx'"]), 2), set(&["xx", "xy", "yx'", "yx", "yy"]));
    assert_eq!(close_truncated(&ws(&["x"]), 1), set(&["x"]));
}

#[test]
fn closure_matches_fixpoint_oracle() {
    let pool: Vec<ReducedWord> = ball(2, 2).into_iter().skip(1).collect();
    for i in 0..pool.len() {
        for j in i..pool.len() {
            let s = vec![pool[i].clone(), pool[j].clone()];
            for level in 2..=3 {
                assert_eq!(close_truncated(&s, level), closure_oracle(&s, level), "{s:?} at {level}");
            }
        }
    }
}

#[test]
fn extension_examples() {
    let s = ws(&["xx", "yy", "x'y'"]);
    match extend_right_order(&s, 2) {
        Extension::Refuted(t) => t.verify(&s).unwrap(),
        Extension::Order(o) => panic!("S extends? {o:?}"),
    }
    let t = ws(&["xx", "xy", "yx'"]);
    match extend_right_order(&t, 2) {
        Extension::Order(o) => {
            assert_eq!(o.level, 2);
            assert_eq!(o.elements, set(&["xx", "xy", "yx'", "yx", "yy", "x", "y"]));
            o.verify().unwrap();
        }
        Extension::Refuted(_) => panic!("T should extend"),
    }
    match extend_right_order(&ws(&["x"]), 2) {
        Extension::Order(o) => {
            assert_eq!(o.level, 1);
            assert_eq!(o.elements, set(&["x"]));
        }
        Extension::Refuted(_) => panic!(),
    }
}

#[test]
fn every_single_word_up_to_length_three_extends() {
    for w in ball(2, 3).into_iter().skip(1) {
        match extend_right_order(std::slice::from_ref(&w), 2) {
            Extension::Order(o) => {
                o.verify().unwrap();
                assert!(o.contains(&w));
            }
            Extension::Refuted(_) => panic!("{w} should extend"),
        }
        assert_eq!(decide_lg_cs(std::slice::from_ref(&w), 2).status(), Status::Invalid);
    }
}

#[test]
fn cis_examples() {
    assert_eq!(initial_subterms(&ws(&["xx"])), set(&["e", "x", "xx"]));
    assert_eq!(cis(&ws(&["xx"])), set(&["x", "x'", "xx", "x'x'"]));
    assert_eq!(cis(&ws(&["x"])), set(&["x", "x'"]));
}

#[test]
fn sign_search_examples() {
    let s = ws(&["xx", "yy", "x'y'"]);
    assert!(matches!(sign_search(&s), HmOutcome::Refuted(_)));
    match sign_search(&ws(&["xx", "xy", "yx'"])) {
        HmOutcome::Extends(a) => {
            assert_eq!(a.0.get(&"x".parse().unwrap()), Some(&Sign::Plus));
            assert_eq!(a.0.get(&"y".parse().unwrap()), Some(&Sign::Plus));
            assert!(a.verify(&ws(&["xx", "xy", "yx'"])));
        }
        HmOutcome::Refuted(_) => panic!(),
    }
    assert_eq!(decide_lg_hm(&ws(&["e"]), 1).status(), Status::Valid);
    assert_eq!(pivot_pool(&ws(&["x"])), ws(&["x"]));
}

#[test]
fn representable_examples() {
    let b0 = RgBounds { conjugator_length: 0, pivots: PivotSet::Cis };
    let t = rg_refute_bounded(&ws(&["x", "x'"]), 1, &b0).unwrap();
    assert_eq!(t, RefutationTree::Leaf(LeafWitness::Conjugates(ordcalc::rightorder::ConjugateProduct {
        factors: vec![
            ordcalc::rightorder::ConjugateFactor { conjugator: ReducedWord::identity(), generator: 0 },
            ordcalc::rightorder::ConjugateFactor { conjugator: ReducedWord::identity(), generator: 1 },
        ]
    })));
    let words = ws(&["xyx'", "y'"]);
    let t = rg_refute_bounded(&words, 2, &RgBounds { conjugator_length: 1, pivots: PivotSet::None }).unwrap();
    t.verify(&words).unwrap();
    assert!(rg_refute_bounded(&ws(&["x", "xyx'y'x'", "e"]), 2, &RgBounds::default()).is_ok());

    assert_eq!(decide_rg(&ws(&["x", "x'"]), 1, &RgBounds::default()).status(), Status::Valid);
    assert_eq!(decide_rg(&ws(&["x"]), 1, &RgBounds::default()), Verdict::Invalid(Witness::Countermodel(vec![-1])));
    let commutator = ws(&["x'y'xy"]);
    assert_eq!(decide_rg(&commutator, 2, &RgBounds::default()).status(), Status::Unknown);
}

#[test]
fn small_corpus_agrees() {
    let summary = crosscheck::run(&CrosscheckConfig { arity: 2, max_len: 2, max_size: 2 }, Execution::Parallel);
    assert_eq!(summary.instances, 136);
    assert!(summary.all_agree(), "{:?}", summary.disagreements);
    let singles = crosscheck::run_reports(&CrosscheckConfig { arity: 2, max_len: 2, max_size: 1 }, Execution::Sequential);
    assert!(singles.iter().all(|r| r.cs == Status::Invalid));
    assert_eq!(crosscheck::run(&CrosscheckConfig { arity: 2, max_len: 0, max_size: 3 }, Execution::Parallel).instances, 0);
}

fn arb_word() -> impl Strategy<Value = ReducedWord> {
    prop::collection::vec((1u32..=2, any::<bool>()), 1..4).prop_map(|v| {
        ReducedWord::reduce(v.into_iter().map(|(g, p)| if p { ordcalc::Literal::pos(g) } else { ordcalc::Literal::neg(g) }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cis_is_closed_under_inverse(s in prop::collection::vec(arb_word(), 1..4)) {
        let c = cis(&s);
        prop_assert!(c.iter().all(|w| c.contains(&w.inv())));
    }

    #[test]
    fn procedures_agree_and_certificates_verify(s in prop::collection::vec(arb_word(), 1..4)) {
        prop_assume!(s.iter().all(|w| !w.is_identity()));
        let cs = decide_lg_cs(&s, 2);
        let hm = decide_lg_hm(&s, 2);
        prop_assert_eq!(cs.status(), hm.status());
        prop_assert!(cs.verify(&s).is_ok());
        prop_assert!(hm.verify(&s).is_ok());
        let extends = matches!(extend_right_order(&s, 2), Extension::Order(_));
        prop_assert_eq!(extends, cs.status() == Status::Invalid);
    }
}
