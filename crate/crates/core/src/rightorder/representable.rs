//! Bounded refutation search modulo conjugation.
//!
//! Validity in representable ℓ-groups corresponds to: every sign choice
//! makes `e` a product of conjugates of the current generators. Only the
//! positive half is searched, with conjugators of length at most L, so a
//! failure to find a tree proves nothing.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::freegroup::{arity_of, ball, ReducedWord};
use crate::membership::contains_identity_conjugates;

use super::hm::{branch_on_signs, pivot_pool};
use super::{ConjugateFactor, ConjugateProduct, LeafWitness, RefutationTree, SignAssignment};

/// Where branching pivots come from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PivotSet {
    /// One representative per inverse pair of `cis(S)`.
    #[default]
    Cis,
    /// No branching: only a direct product of conjugates is sought.
    None,
    Explicit(Vec<ReducedWord>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RgBounds {
    pub conjugator_length: usize,
    pub pivots: PivotSet,
}

impl Default for RgBounds {
    fn default() -> Self {
        RgBounds { conjugator_length: 3, pivots: PivotSet::Cis }
    }
}

impl RgBounds {
    pub fn pivot_list(&self, words: &[ReducedWord]) -> Vec<ReducedWord> {
        match &self.pivots {
            PivotSet::Cis => pivot_pool(words),
            PivotSet::None => Vec::new(),
            PivotSet::Explicit(p) => {
                let mut seen = HashSet::new();
                p.iter().filter(|w| !w.is_identity() && seen.insert(ReducedWord::clone(w).min(w.inv()))).cloned().collect()
            }
        }
    }
}

/// A product of conjugates `q g q⁻¹` (`|q| ≤ max_conjugator`) equal to `e`.
pub fn conjugate_product(gens: &[ReducedWord], arity: usize, max_conjugator: usize) -> Option<ConjugateProduct> {
    let conjugators = ball(arity, max_conjugator);
    let factors = contains_identity_conjugates(gens, &conjugators)?;
    Some(ConjugateProduct {
        factors: factors.into_iter().map(|(conjugator, generator)| ConjugateFactor { conjugator, generator }).collect(),
    })
}

/// Searches for a refutation tree whose leaves are products of conjugates.
/// On failure, returns the sign assignment of the first open branch.
pub fn rg_refute_bounded(words: &[ReducedWord], arity: usize, bounds: &RgBounds) -> Result<RefutationTree, SignAssignment> {
    let arity = arity.max(arity_of(words));
    let pivots = bounds.pivot_list(words);
    branch_on_signs(words, &pivots, |gens| {
        conjugate_product(gens, arity, bounds.conjugator_length).map(LeafWitness::Conjugates)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(items: &[&str]) -> Vec<ReducedWord> {
        items.iter().map(|s| ReducedWord::parse(s).unwrap()).collect()
    }

    #[test]
    fn conjugate_pair_is_a_direct_leaf() {
        let words = ws(&["xyx'", "y'"]);
        let bounds = RgBounds { conjugator_length: 1, pivots: PivotSet::None };
        let tree = rg_refute_bounded(&words, 2, &bounds).unwrap();
        assert_eq!(tree.depth(), 0);
        assert!(tree.uses_conjugation());
        tree.verify(&words).unwrap();
    }

    #[test]
    fn without_conjugators_nothing_is_found() {
        let words = ws(&["xyx'", "y'"]);
        let bounds = RgBounds { conjugator_length: 0, pivots: PivotSet::None };
        assert!(rg_refute_bounded(&words, 2, &bounds).is_err());
    }
}
