//! Order-extension engines over free groups.
//!
//! * [`truncated`]: branching over truncated right orders. Decides whether a
//!   finite set extends to a right order, with either an N-truncated order or a
//!   refutation tree as evidence.
//! * [`hm`]: the initial-subterm procedure. An independent decision for the
//!   same question, branching on signs of the pivot pool `cis(S)`.
//! * [`representable`]: bounded search for refutations modulo conjugation, the
//!   VALID half of a semi-decision for representable ℓ-groups.

pub mod hm;
pub mod representable;
pub mod truncated;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::freegroup::{ball, ReducedWord, Sign};
use crate::membership::Factorization;

pub use hm::{cis, initial_subterms, pivot_pool, sign_search, HmOutcome};
pub use representable::{rg_refute_bounded, PivotSet, RgBounds};
pub use truncated::{close_truncated, extend_right_order, extend_right_order_at, Extension};

/// A finite fragment of a right order's positive cone inside the ball F_N(k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedRightOrder {
    pub arity: usize,
    #[serde(rename = "N")]
    pub level: usize,
    pub elements: BTreeSet<ReducedWord>,
}

impl TruncatedRightOrder {
    pub fn contains(&self, w: &ReducedWord) -> bool {
        self.elements.contains(w)
    }

    /// Checks the defining conditions: `e` omitted, lengths bounded by N,
    /// closed under products that stay in the ball, total on F_{N-1}(k) ∖ {e}.
    pub fn verify(&self) -> Result<(), String> {
        if self.elements.contains(&ReducedWord::identity()) {
            return Err("contains e".into());
        }
        if let Some(w) = self.elements.iter().find(|w| w.len() > self.level) {
            return Err(format!("{w} is longer than N = {}", self.level));
        }
        if let Some(w) = self.elements.iter().find(|w| w.max_generator() as usize > self.arity) {
            return Err(format!("{w} uses a generator beyond arity {}", self.arity));
        }
        let elems: Vec<&ReducedWord> = self.elements.iter().collect();
        let missing = crate::par::find_map_any(&elems, |s| {
            elems.iter().find_map(|t| {
                let p = s.mul(t);
                (p.len() <= self.level && !self.elements.contains(&p)).then(|| format!("{s} · {t} = {p} is missing"))
            })
        });
        if let Some(msg) = missing {
            return Err(msg);
        }
        if self.level >= 1 {
            for w in ball(self.arity, self.level - 1).into_iter().skip(1) {
                if !self.elements.contains(&w) && !self.elements.contains(&w.inv()) {
                    return Err(format!("neither {w} nor its inverse is present"));
                }
            }
        }
        Ok(())
    }
}

/// A conjugate `q · g · q⁻¹` of generator `generator` of the current list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateFactor {
    pub conjugator: ReducedWord,
    pub generator: usize,
}

/// A product of conjugates of current generators that reduces to `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateProduct {
    pub factors: Vec<ConjugateFactor>,
}

impl ConjugateProduct {
    pub fn verify(&self, generators: &[ReducedWord]) -> bool {
        if self.factors.is_empty() {
            return false;
        }
        let mut acc = ReducedWord::identity();
        for f in &self.factors {
            let Some(g) = generators.get(f.generator) else { return false };
            acc = acc.mul(&g.conjugate_by(&f.conjugator));
        }
        acc.is_identity()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LeafWitness {
    Product { factors: Vec<usize> },
    Conjugates(ConjugateProduct),
}

impl LeafWitness {
    pub fn from_factorization(f: Factorization) -> Self {
        LeafWitness::Product { factors: f.factors }
    }

    fn verify(&self, generators: &[ReducedWord]) -> bool {
        match self {
            LeafWitness::Product { factors } => Factorization { factors: factors.clone() }.verify(generators),
            LeafWitness::Conjugates(c) => c.verify(generators),
        }
    }

    pub fn uses_conjugation(&self) -> bool {
        matches!(self, LeafWitness::Conjugates(c) if c.factors.iter().any(|f| !f.conjugator.is_identity()))
    }
}

/// Evidence that no sign choice for the pivots avoids `e`.
///
/// The generators at a node are the root words followed by `pivot^δ` for each
/// branch taken on the way down (`δ = +1` on `positive`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefutationTree {
    Leaf(LeafWitness),
    Branch { pivot: ReducedWord, positive: Box<RefutationTree>, negative: Box<RefutationTree> },
}

impl RefutationTree {
    pub fn branch(pivot: ReducedWord, positive: RefutationTree, negative: RefutationTree) -> Self {
        RefutationTree::Branch { pivot, positive: Box::new(positive), negative: Box::new(negative) }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            RefutationTree::Leaf(_) => 1,
            RefutationTree::Branch { positive, negative, .. } => positive.leaf_count() + negative.leaf_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            RefutationTree::Leaf(_) => 0,
            RefutationTree::Branch { positive, negative, .. } => 1 + positive.depth().max(negative.depth()),
        }
    }

    pub fn uses_conjugation(&self) -> bool {
        match self {
            RefutationTree::Leaf(l) => l.uses_conjugation(),
            RefutationTree::Branch { positive, negative, .. } => positive.uses_conjugation() || negative.uses_conjugation(),
        }
    }

    /// Checks every leaf against the generators on its path, that pivots are
    /// nonidentity, and that no pivot (or its inverse) is chosen twice on a path.
    pub fn verify(&self, roots: &[ReducedWord]) -> Result<(), String> {
        let mut gens = roots.to_vec();
        let mut used = BTreeSet::new();
        self.verify_at(&mut gens, &mut used, &mut Vec::new())
    }

    fn verify_at(&self, gens: &mut Vec<ReducedWord>, used: &mut BTreeSet<ReducedWord>, path: &mut Vec<usize>) -> Result<(), String> {
        match self {
            RefutationTree::Leaf(w) => {
                if w.verify(gens) {
                    Ok(())
                } else {
                    Err(format!("leaf at {path:?} does not multiply to e"))
                }
            }
            RefutationTree::Branch { pivot, positive, negative } => {
                if pivot.is_identity() {
                    return Err(format!("pivot at {path:?} is e"));
                }
                let key = pivot.clone().min(pivot.inv());
                if !used.insert(key.clone()) {
                    return Err(format!("pivot {pivot} at {path:?} repeats on its path"));
                }
                for (i, (child, w)) in [(positive, pivot.clone()), (negative, pivot.inv())].into_iter().enumerate() {
                    gens.push(w);
                    path.push(i);
                    let r = child.verify_at(gens, used, path);
                    path.pop();
                    gens.pop();
                    r?;
                }
                used.remove(&key);
                Ok(())
            }
        }
    }
}

/// Signs for a set of pivots; the failing branch of a sign search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignAssignment(pub BTreeMap<ReducedWord, Sign>);

impl SignAssignment {
    pub fn signed_words(&self) -> impl Iterator<Item = ReducedWord> + '_ {
        self.0.iter().map(|(w, s)| match s {
            Sign::Plus => w.clone(),
            Sign::Minus => w.inv(),
        })
    }

    /// True when `words` together with the signed pivots generate a
    /// subsemigroup omitting `e`.
    pub fn verify(&self, words: &[ReducedWord]) -> bool {
        if self.0.keys().any(|w| w.is_identity()) {
            return false;
        }
        let mut gens = words.to_vec();
        gens.extend(self.signed_words());
        crate::membership::contains_identity(&gens).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s).unwrap()
    }

    #[test]
    fn truncated_order_verification() {
        let t = TruncatedRightOrder {
            arity: 2,
            level: 2,
            elements: ["xx", "xy", "yx'", "yx", "yy", "x", "y"].iter().map(|s| w(s)).collect(),
        };
        assert_eq!(t.verify(), Ok(()));
        let mut bad = t.clone();
        bad.elements.remove(&w("y"));
        assert!(bad.verify().is_err());
        let mut bad = t.clone();
        bad.elements.insert(w("e"));
        assert!(bad.verify().is_err());
    }

    #[test]
    fn tree_verification_catches_repeats_and_identity_pivots() {
        let leaf = |f: Vec<usize>| RefutationTree::Leaf(LeafWitness::Product { factors: f });
        let roots = vec![w("x")];
        let ok = RefutationTree::branch(w("x"), leaf(vec![0, 1]), leaf(vec![0, 1]));
        // x · x ≠ e, so the positive leaf fails
        assert!(ok.verify(&roots).is_err());
        let roots = vec![w("x'")];
        let t = RefutationTree::branch(w("x"), leaf(vec![0, 1]), leaf(vec![0, 1]));
        assert!(t.verify(&roots).is_err());
        let t = RefutationTree::branch(w("y"), leaf(vec![1]), leaf(vec![0, 1]));
        assert!(t.verify(&[w("y")]).is_err());
        let t = RefutationTree::branch(w("y"), leaf(vec![0, 1]), leaf(vec![0, 0]));
        assert!(t.verify(&[w("y'")]).is_err());
        let t = RefutationTree::branch(w("x"), leaf(vec![0, 1]), leaf(vec![1, 0, 1, 0]));
        assert!(t.verify(&[w("x'")]).is_err());
        let t = RefutationTree::branch(w("e"), leaf(vec![0]), leaf(vec![0]));
        assert!(t.verify(&[w("e")]).is_err());
        let t = RefutationTree::branch(
            w("y"),
            RefutationTree::branch(w("y'"), leaf(vec![0]), leaf(vec![0])),
            leaf(vec![0]),
        );
        assert!(t.verify(&[w("e")]).unwrap_err().contains("repeats"));
    }
}
