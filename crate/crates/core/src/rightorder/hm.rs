//! The initial-subterm procedure.
//!
//! `S` extends to a right order iff for every sign assignment to the pivot
//! pool `cis(S)` the enlarged set still generates a subsemigroup omitting `e`.
//! The search is depth-first with pruning: once `e` is reachable in a branch,
//! every further refinement of that branch is also refuted.

use std::collections::{BTreeMap, BTreeSet};

use crate::freegroup::{ReducedWord, Sign};
use crate::membership::contains_identity;

use super::{LeafWitness, RefutationTree, SignAssignment};

/// Initial segments of the words of `words`, including `e`.
pub fn initial_subterms(words: &[ReducedWord]) -> BTreeSet<ReducedWord> {
    words.iter().flat_map(|w| w.prefixes()).collect()
}

/// `{ s⁻¹ t : s, t initial subterms } ∖ {e}`.
pub fn cis(words: &[ReducedWord]) -> BTreeSet<ReducedWord> {
    let is: Vec<ReducedWord> = initial_subterms(words).into_iter().collect();
    let mut out = BTreeSet::new();
    for s in &is {
        let si = s.inv();
        for t in &is {
            let w = si.mul(t);
            if !w.is_identity() {
                out.insert(w);
            }
        }
    }
    out
}

/// One representative (the ShortLex-smaller) per inverse pair of `cis(words)`.
pub fn pivot_pool(words: &[ReducedWord]) -> Vec<ReducedWord> {
    let set: BTreeSet<ReducedWord> = cis(words).into_iter().map(|w| w.clone().min(w.inv())).collect();
    set.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HmOutcome {
    /// Every sign assignment reaches `e`: the words do not extend.
    Refuted(RefutationTree),
    /// A full sign assignment under which `e` stays out of reach.
    Extends(SignAssignment),
}

/// Decides extension to a right order by branching on signs of `pivot_pool`.
pub fn sign_search(words: &[ReducedWord]) -> HmOutcome {
    let pivots = pivot_pool(words);
    match branch_on_signs(words, &pivots, |gens| contains_identity(gens).map(LeafWitness::from_factorization)) {
        Ok(tree) => HmOutcome::Refuted(tree),
        Err(assignment) => HmOutcome::Extends(assignment),
    }
}

/// Depth-first sign search shared with the representable procedure.
///
/// `leaf` is asked for a witness at every node; when it has none, the next
/// pivot not already a generator (up to sign) is branched on. Returns the
/// first surviving assignment if some branch never closes.
pub(crate) fn branch_on_signs<F>(roots: &[ReducedWord], pivots: &[ReducedWord], leaf: F) -> Result<RefutationTree, SignAssignment>
where
    F: Fn(&[ReducedWord]) -> Option<LeafWitness>,
{
    let mut gens = roots.to_vec();
    let mut signs = BTreeMap::new();
    explore(&mut gens, pivots, &mut signs, &leaf)
}

fn explore<F>(gens: &mut Vec<ReducedWord>, pivots: &[ReducedWord], signs: &mut BTreeMap<ReducedWord, Sign>, leaf: &F) -> Result<RefutationTree, SignAssignment>
where
    F: Fn(&[ReducedWord]) -> Option<LeafWitness>,
{
    if let Some(w) = leaf(gens) {
        return Ok(RefutationTree::Leaf(w));
    }
    let mut forced = Vec::new();
    let mut next = None;
    for (i, s) in pivots.iter().enumerate() {
        if gens.contains(s) {
            forced.push((s.clone(), Sign::Plus));
        } else if gens.contains(&s.inv()) {
            forced.push((s.clone(), Sign::Minus));
        } else {
            next = Some(i);
            break;
        }
    }
    let result = match next {
        None => {
            let mut full = signs.clone();
            full.extend(forced.iter().cloned());
            Err(SignAssignment(full))
        }
        Some(i) => {
            for (s, d) in &forced {
                signs.insert(s.clone(), *d);
            }
            let pivot = &pivots[i];
            let rest = &pivots[i + 1..];
            let mut child = |w: ReducedWord, d: Sign| {
                gens.push(w);
                signs.insert(pivot.clone(), d);
                let r = explore(gens, rest, signs, leaf);
                signs.remove(pivot);
                gens.pop();
                r
            };
            let positive = child(pivot.clone(), Sign::Plus);
            let r = match positive {
                Ok(p) => child(pivot.inv(), Sign::Minus).map(|n| RefutationTree::branch(pivot.clone(), p, n)),
                Err(a) => Err(a),
            };
            for (s, _) in &forced {
                signs.remove(s);
            }
            r
        }
    };
    result
}
