//! Extension to right orders via N-truncated right orders.
//!
//! A finite `S` with `N = max |s|` extends to a right order of F(k) iff it
//! extends to an N-truncated right order. The search closes `S` under
//! products of length at most N, stops as soon as `e` appears, and otherwise
//! branches on the ShortLex-least undetermined element of F_{N-1}(k) ∖ {e}.

use std::collections::{BTreeSet, HashMap};

use crate::freegroup::{arity_of, ball, ReducedWord};
use crate::membership::Factorization;

use super::{LeafWitness, RefutationTree, TruncatedRightOrder};

/// Result of [`extend_right_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Order(TruncatedRightOrder),
    Refuted(RefutationTree),
}

#[derive(Clone, Debug)]
enum Origin {
    Generator(usize),
    Product(ReducedWord, ReducedWord),
}

/// Length-bounded product closure, remembering how every element arose.
#[derive(Clone, Debug)]
struct Closure {
    level: usize,
    order: Vec<ReducedWord>,
    origin: HashMap<ReducedWord, Origin>,
}

impl Closure {
    fn new(level: usize) -> Self {
        Closure { level, order: Vec::new(), origin: HashMap::new() }
    }

    /// Adds generator `index` and closes. With `stop_at_identity`, returns a
    /// factorization of `e` as soon as one is found.
    fn add(&mut self, word: ReducedWord, index: usize, stop_at_identity: bool) -> Option<Factorization> {
        if word.is_identity() {
            return Some(Factorization { factors: vec![index] });
        }
        if self.origin.contains_key(&word) {
            return None;
        }
        self.origin.insert(word.clone(), Origin::Generator(index));
        self.order.push(word);
        let mut next = self.order.len() - 1;
        while next < self.order.len() {
            let u = self.order[next].clone();
            next += 1;
            let mut i = 0;
            while i < next {
                let v = self.order[i].clone();
                i += 1;
                for (a, b) in [(&u, &v), (&v, &u)] {
                    let p = a.mul(b);
                    if p.len() > self.level || self.origin.contains_key(&p) {
                        continue;
                    }
                    if p.is_identity() && stop_at_identity {
                        let mut factors = self.expand(a);
                        factors.extend(self.expand(b));
                        return Some(Factorization { factors });
                    }
                    self.origin.insert(p.clone(), Origin::Product(a.clone(), b.clone()));
                    self.order.push(p);
                }
            }
        }
        None
    }

    fn expand(&self, w: &ReducedWord) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![w];
        while let Some(w) = stack.pop() {
            match &self.origin[w] {
                Origin::Generator(i) => out.push(*i),
                Origin::Product(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }

    fn contains(&self, w: &ReducedWord) -> bool {
        self.origin.contains_key(w)
    }
}

/// Least superset of `set` closed under products of length at most `level`.
pub fn close_truncated(set: &[ReducedWord], level: usize) -> BTreeSet<ReducedWord> {
    let mut c = Closure::new(level);
    let mut has_identity = false;
    for (i, w) in set.iter().enumerate() {
        if w.is_identity() {
            has_identity = true;
        } else {
            c.add(w.clone(), i, false);
        }
    }
    let mut out: BTreeSet<ReducedWord> = c.order.into_iter().collect();
    if has_identity {
        out.insert(ReducedWord::identity());
    }
    out
}

/// Decides whether `words` extends to a right order of F(arity), at the
/// natural level `N = max |w|`.
pub fn extend_right_order(words: &[ReducedWord], arity: usize) -> Extension {
    let level = words.iter().map(|w| w.len()).max().unwrap_or(0);
    extend_right_order_at(words, arity, level)
}

/// As [`extend_right_order`] at an explicit level, which must be at least the
/// longest input. Larger levels are sound but rarely useful.
pub fn extend_right_order_at(words: &[ReducedWord], arity: usize, level: usize) -> Extension {
    assert!(words.iter().all(|w| w.len() <= level), "level below the longest input");
    let arity = arity.max(arity_of(words));
    let mut closure = Closure::new(level);
    for (i, w) in words.iter().enumerate() {
        if let Some(f) = closure.add(w.clone(), i, true) {
            return Extension::Refuted(RefutationTree::Leaf(LeafWitness::from_factorization(f)));
        }
    }
    let pivots: Vec<ReducedWord> = if level == 0 { Vec::new() } else { ball(arity, level - 1).into_iter().skip(1).collect() };
    match search(&closure, words.len(), &pivots) {
        Ok(elements) => Extension::Order(TruncatedRightOrder { arity, level, elements }),
        Err(tree) => Extension::Refuted(tree),
    }
}

fn search(closure: &Closure, generator_count: usize, pivots: &[ReducedWord]) -> Result<BTreeSet<ReducedWord>, RefutationTree> {
    let Some(pos) = pivots.iter().position(|s| !closure.contains(s) && !closure.contains(&s.inv())) else {
        return Ok(closure.order.iter().cloned().collect());
    };
    let pivot = &pivots[pos];
    let rest = &pivots[pos + 1..];
    let attempt = |w: ReducedWord| {
        let mut c = closure.clone();
        match c.add(w, generator_count, true) {
            Some(f) => Err(RefutationTree::Leaf(LeafWitness::from_factorization(f))),
            None => search(&c, generator_count + 1, rest),
        }
    };
    let positive = match attempt(pivot.clone()) {
        Ok(order) => return Ok(order),
        Err(t) => t,
    };
    let negative = match attempt(pivot.inv()) {
        Ok(order) => return Ok(order),
        Err(t) => t,
    };
    Err(RefutationTree::branch(pivot.clone(), positive, negative))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(items: &[&str]) -> Vec<ReducedWord> {
        items.iter().map(|s| ReducedWord::parse(s).unwrap()).collect()
    }

    #[test]
    fn closure_of_x_at_level_two() {
        let c = close_truncated(&ws(&["x"]), 2);
        assert_eq!(c, ws(&["x", "xx"]).into_iter().collect());
    }

    #[test]
    fn closure_respects_level() {
        let c = close_truncated(&ws(&["xy", "y'"]), 2);
        assert!(c.contains(&ReducedWord::parse("x").unwrap()));
        assert!(c.iter().all(|w| w.len() <= 2));
    }

    #[test]
    fn commutator_extends() {
        let words = ws(&["xyx'y'"]);
        match extend_right_order(&words, 2) {
            Extension::Order(t) => {
                assert_eq!(t.verify(), Ok(()));
                assert!(t.contains(&words[0]));
            }
            Extension::Refuted(_) => panic!("commutator should extend"),
        }
    }

    #[test]
    fn identity_input_is_an_immediate_leaf() {
        let words = ws(&["x", "e"]);
        assert_eq!(
            extend_right_order(&words, 1),
            Extension::Refuted(RefutationTree::Leaf(LeafWitness::Product { factors: vec![1] }))
        );
    }

    #[test]
    fn inverse_pair_refutes_directly() {
        match extend_right_order(&ws(&["xy", "y'x'"]), 2) {
            Extension::Refuted(t) => {
                assert_eq!(t.depth(), 0);
                t.verify(&ws(&["xy", "y'x'"])).unwrap();
            }
            Extension::Order(_) => panic!(),
        }
    }
}
