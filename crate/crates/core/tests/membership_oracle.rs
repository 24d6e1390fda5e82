use ordcalc::freegroup::{ball, ReducedWord};
use ordcalc::membership::{build_flower, contains_identity, contains_identity_conjugates, decide, BASE};
use proptest::prelude::*;

fn ws(items: &[&str]) -> Vec<ReducedWord> {
    items.iter().map(|s| s.parse().unwrap()).collect()
}

/// Whether some product of at most `bound` factors reduces to `e`,
/// by breadth-first search over reached elements.
fn bounded_oracle(gens: &[ReducedWord], bound: usize) -> bool {
    let mut frontier: Vec<ReducedWord> = gens.to_vec();
    let mut seen: std::collections::HashSet<ReducedWord> = frontier.iter().cloned().collect();
    for _ in 0..bound {
        if frontier.iter().any(|w| w.is_identity()) {
            return true;
        }
        let mut next = Vec::new();
        for a in &frontier {
            for g in gens {
                let p = a.mul(g);
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    false
}

#[test]
fn flower_shapes() {
    let a = build_flower(&ws(&["x"])).unwrap();
    assert_eq!(a.cycles_at_base(), 1);
    assert_eq!(a.state_count(), 1);
    let a = build_flower(&ws(&["xy", "y'"])).unwrap();
    assert_eq!(a.cycles_at_base(), 2);
    assert_eq!(a.state_count(), 2);
    let a = build_flower(&[]).unwrap();
    assert_eq!(a.state_count(), 1);
    assert_eq!(a.saturate().epsilon_count(), 0);
    assert!(build_flower(&ws(&["e"])).is_err());
}

#[test]
fn saturation_examples() {
    assert!(build_flower(&ws(&["x", "x'"])).unwrap().saturate().has_epsilon(BASE, BASE));
    assert_eq!(build_flower(&ws(&["x"])).unwrap().saturate().epsilon_count(), 0);
    let gens = ws(&["xxy", "y'x'", "x'"]);
    assert!(build_flower(&gens).unwrap().saturate().has_epsilon(BASE, BASE));
    assert!(bounded_oracle(&gens, 4));
}

#[test]
fn membership_examples() {
    let (found, f) = decide(&ws(&["xy", "y'x'"]));
    assert!(found);
    assert_eq!(f.unwrap().factors, vec![0, 1]);
    assert_eq!(decide(&ws(&["x"])), (false, None));
    let star = ws(&["xx", "yy", "x'y'", "xy'", "x'y", "xy", "x'"]);
    let f = contains_identity(&star).unwrap();
    assert!(f.verify(&star));
}

#[test]
fn agrees_with_bounded_search_on_small_sets() {
    let words: Vec<ReducedWord> = ball(2, 2).into_iter().skip(1).collect();
    let mut checked = 0;
    for i in 0..words.len() {
        for j in i..words.len() {
            for k in j..words.len() {
                let gens = vec![words[i].clone(), words[j].clone(), words[k].clone()];
                let got = contains_identity(&gens);
                if let Some(f) = &got {
                    assert!(f.verify(&gens), "{gens:?}");
                }
                if bounded_oracle(&gens, 6) {
                    assert!(got.is_some(), "missed e in {gens:?}");
                }
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 816);
}

#[test]
fn conjugate_automaton_matches_explicit_conjugates() {
    let pool: Vec<ReducedWord> = ball(2, 2).into_iter().skip(1).collect();
    let conjugators = ball(2, 1);
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            let gens = vec![pool[i].clone(), pool[j].clone()];
            let explicit: Vec<(ReducedWord, usize)> =
                conjugators.iter().flat_map(|q| (0..gens.len()).map(move |g| (q.clone(), g))).collect();
            let words: Vec<ReducedWord> = explicit.iter().map(|(q, g)| gens[*g].conjugate_by(q)).collect();
            let expected = contains_identity(&words).is_some();
            let got = contains_identity_conjugates(&gens, &conjugators);
            assert_eq!(got.is_some(), expected, "{gens:?}");
            if let Some(f) = got {
                let p = f.iter().fold(ReducedWord::identity(), |acc, (q, g)| acc.mul(&gens[*g].conjugate_by(q)));
                assert!(p.is_identity());
            }
        }
    }
}

fn arb_word() -> impl Strategy<Value = ReducedWord> {
    prop::collection::vec((1u32..=2, any::<bool>()), 1..4).prop_map(|v| {
        ReducedWord::reduce(v.into_iter().map(|(g, p)| {
            if p {
                ordcalc::Literal::pos(g)
            } else {
                ordcalc::Literal::neg(g)
            }
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn witnesses_verify_and_membership_is_monotone(
        s in prop::collection::vec(arb_word(), 1..4),
        extra in prop::collection::vec(arb_word(), 0..3),
    ) {
        if let Some(f) = contains_identity(&s) {
            prop_assert!(f.verify(&s));
            let mut bigger = s.clone();
            bigger.extend(extra);
            prop_assert!(contains_identity(&bigger).is_some());
        }
    }
}
