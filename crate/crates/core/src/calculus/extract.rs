//! Derivations built from decision certificates.
//!
//! Construction first keeps the whole target hypersequent as context at every
//! node; a final pass shrinks each context to what the rule instances above
//! and below actually need, so no sequent is carried along idly.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::freegroup::{Literal, ReducedWord};
use crate::rightorder::{LeafWitness, RefutationTree};

use super::check::{actives, check};
use super::syntax::{CalculusId, Derivation, Hypersequent, Lits, RuleInstance};

/// GA derivation of `words` from a positive integer combination `lambda` of
/// their exponent vectors summing to zero.
pub fn derive_ga(words: &[ReducedWord], lambda: &[u64]) -> Result<Derivation> {
    if words.len() != lambda.len() {
        return Err(Error::Certificate(format!("{} coefficients for {} words", lambda.len(), words.len())));
    }
    let goal = Hypersequent::new(words.iter().cloned());
    let blocks: Vec<Lits> = words
        .iter()
        .zip(lambda)
        .flat_map(|(w, &n)| std::iter::repeat_n(Lits::from(w), n as usize))
        .collect();
    derive_ga_blocks(&goal, &blocks)
}

/// GA derivation of `goal` from blocks whose reduced words all lie in `goal`
/// and whose concatenation is balanced (each generator occurs as often
/// positively as negatively).
pub fn derive_ga_blocks(goal: &Hypersequent, blocks: &[Lits]) -> Result<Derivation> {
    if blocks.is_empty() {
        return Err(Error::Certificate("empty combination".into()));
    }
    if let Some(b) = blocks.iter().find(|b| !goal.contains(&b.reduced())) {
        return Err(Error::Certificate(format!("block `{b}` is not a sequent of the goal")));
    }
    let target: Vec<Literal> = blocks.iter().flat_map(|b| b.0.iter().copied()).collect();
    let arity = target.iter().map(|l| l.generator).max().unwrap_or(0) as usize;
    if ReducedWord::reduce(target.iter().copied()).abelianize(arity).iter().any(|&c| c != 0) {
        return Err(Error::Certificate("blocks are not balanced".into()));
    }
    // Axiom: all positive literals of the target, then their inverses mirrored.
    let positives = Lits(target.iter().copied().filter(|l| l.sign == crate::freegroup::Sign::Plus).collect());
    let axiom = RuleInstance::id_for(&positives);
    let RuleInstance::Id { sequent } = &axiom else { unreachable!() };
    let mut current = sequent.0.clone();
    let mut d = Derivation::leaf(goal.with([sequent.reduced()]), axiom);
    // Bring each target literal to the front of the unsorted suffix.
    for j in 0..target.len() {
        let p = current[j..].iter().position(|&l| l == target[j]).expect("balanced sequences are permutations");
        if p == 0 {
            continue;
        }
        let pi = Lits(current[..j].to_vec());
        let delta = Lits(current[j..j + p].to_vec());
        let gamma = Lits(current[j + p..].to_vec());
        current = Lits::concat(&[&pi, &gamma, &delta]).0;
        let conclusion = goal.with([ReducedWord::reduce(current.iter().copied())]);
        d = Derivation::node(conclusion, RuleInstance::Ex { pi, gamma, delta }, vec![d]);
    }
    debug_assert_eq!(current, target);
    Ok(fit(goal, &split_off(goal, blocks, d)))
}

/// Splits `blocks[0]`, `blocks[1]`, … off the bottom of `d`, whose conclusion
/// must be `goal ∪ {concat(blocks)}`.
fn split_off(goal: &Hypersequent, blocks: &[Lits], mut d: Derivation) -> Derivation {
    for i in 0..blocks.len().saturating_sub(1) {
        let gamma = blocks[i].clone();
        let rest: Vec<&Lits> = blocks[i + 1..].iter().collect();
        let delta = Lits::concat(&rest);
        let conclusion = goal.with([delta.reduced()]);
        d = Derivation::node(conclusion, RuleInstance::Split { gamma, delta }, vec![d]);
    }
    d
}

/// GLG* derivation of `words` from a refutation tree with product leaves.
pub fn derive_glgstar(words: &[ReducedWord], tree: &RefutationTree) -> Result<Derivation> {
    tree.verify(words).map_err(Error::Certificate)?;
    if tree.uses_conjugation() {
        return Err(Error::Certificate("conjugate leaves need GRG*".into()));
    }
    build(words, tree)
}

/// GRG* derivation of `words` from a refutation tree whose leaves are
/// products of conjugates.
pub fn derive_grgstar(words: &[ReducedWord], tree: &RefutationTree) -> Result<Derivation> {
    tree.verify(words).map_err(Error::Certificate)?;
    build(words, tree)
}

fn build(words: &[ReducedWord], tree: &RefutationTree) -> Result<Derivation> {
    let mut gens = words.to_vec();
    let goal = Hypersequent::new(words.iter().cloned());
    Ok(fit(&goal, &build_at(&mut gens, goal.clone(), tree)?))
}

fn build_at(gens: &mut Vec<ReducedWord>, goal: Hypersequent, tree: &RefutationTree) -> Result<Derivation> {
    match tree {
        RefutationTree::Leaf(w) => {
            let factors: Vec<(ReducedWord, &ReducedWord)> = match w {
                LeafWitness::Product { factors } => factors.iter().map(|&i| (ReducedWord::identity(), &gens[i])).collect(),
                LeafWitness::Conjugates(c) => c.factors.iter().map(|f| (f.conjugator.clone(), &gens[f.generator])).collect(),
            };
            conjugate_leaf(&goal, &factors)
        }
        RefutationTree::Branch { pivot, positive, negative } => {
            let mut premises = Vec::with_capacity(2);
            for (child, w) in [(positive, pivot.clone()), (negative, pivot.inv())] {
                gens.push(w.clone());
                let r = build_at(gens, goal.with([w]), child);
                gens.pop();
                premises.push(r?);
            }
            Ok(Derivation::node(goal, RuleInstance::Star { delta: Lits::from(pivot) }, premises))
        }
    }
}

/// `goal` from `q₁g₁q₁⁻¹ ⋯ qₘgₘqₘ⁻¹ = e` with every `gᵢ ∈ goal`: a Gv axiom on
/// the raw concatenation, then Split off each block and Cycle it back to `gᵢ`.
fn conjugate_leaf(goal: &Hypersequent, factors: &[(ReducedWord, &ReducedWord)]) -> Result<Derivation> {
    let blocks: Vec<Lits> = factors
        .iter()
        .map(|(q, g)| Lits::concat(&[&Lits::from(q), &Lits::from(*g), &Lits::from(&q.inv())]))
        .collect();
    let all = Lits::concat(&blocks.iter().collect::<Vec<_>>());
    let mut d = Derivation::leaf(goal.with([all.reduced()]), RuleInstance::Gv { gamma: all });
    for i in 0..blocks.len() {
        let (q, g) = &factors[i];
        let rest = Lits::concat(&blocks[i + 1..].iter().collect::<Vec<_>>());
        if i + 1 < blocks.len() {
            let conclusion = goal.with([blocks[i].reduced(), rest.reduced()]);
            d = Derivation::node(conclusion, RuleInstance::Split { gamma: blocks[i].clone(), delta: rest.clone() }, vec![d]);
        }
        if !q.is_identity() {
            let conclusion = if i + 1 < blocks.len() { goal.with([rest.reduced()]) } else { goal.clone() };
            let gamma = Lits::concat(&[&Lits::from(*g), &Lits::from(&q.inv())]);
            d = Derivation::node(conclusion, RuleInstance::Cycle { gamma, delta: Lits::from(q) }, vec![d]);
        }
    }
    Ok(d)
}

/// Adds `extra` to every hypersequent of a GLG or GRG derivation, which is
/// again a derivation there since no rule inspects its context.
pub fn admissible_ew_expand(calculus: CalculusId, d: &Derivation, extra: &[ReducedWord]) -> Result<Derivation> {
    if !matches!(calculus, CalculusId::GLG | CalculusId::GRG) {
        return Err(Error::Unsupported(format!("external weakening expansion in {calculus}")));
    }
    check(calculus, d, &d.conclusion)?;
    Ok(widen(d, extra))
}

/// Adds `extra` to the conclusion of `d` and, recursively, to premises that
/// lack it. Sound for any rule here, as all of them leave their context
/// unconstrained; a subderivation already concluding a word keeps it as is.
fn widen(d: &Derivation, extra: &[ReducedWord]) -> Derivation {
    let missing: Vec<ReducedWord> = extra.iter().filter(|w| !d.conclusion.contains(w)).cloned().collect();
    if missing.is_empty() {
        return d.clone();
    }
    Derivation {
        conclusion: d.conclusion.with(missing.iter().cloned()),
        rule: d.rule.clone(),
        premises: d.premises.iter().map(|p| widen(p, &missing)).collect(),
    }
}

/// Rebuilds `d` bottom-up with the smallest contexts its rule instances
/// allow: leaves conclude only their actives, and a node's context is what
/// its premises carry beyond their own actives. Premises missing part of
/// that context are widened.
fn tighten(d: &Derivation) -> Derivation {
    let shape = actives(&d.rule).expect("extracted rule instances meet their side conditions");
    let mut premises: Vec<Derivation> = d.premises.iter().map(tighten).collect();
    let context: BTreeSet<ReducedWord> = premises
        .iter()
        .zip(&shape.premises)
        .flat_map(|(p, act)| p.conclusion.words().filter(|w| !act.contains(w)).cloned().collect::<Vec<_>>())
        .collect();
    for (p, act) in premises.iter_mut().zip(&shape.premises) {
        let missing: Vec<ReducedWord> = context.iter().chain(act).filter(|w| !p.conclusion.contains(w)).cloned().collect();
        if !missing.is_empty() {
            *p = widen(p, &missing);
        }
    }
    Derivation::node(Hypersequent::new(context.into_iter().chain(shape.conclusion)), d.rule.clone(), premises)
}

/// `d` with minimal contexts, widened back to conclude exactly `goal`.
fn fit(goal: &Hypersequent, d: &Derivation) -> Derivation {
    let t = tighten(d);
    debug_assert!(t.conclusion.words().all(|w| goal.contains(w)));
    let extra: Vec<ReducedWord> = goal.words().filter(|w| !t.conclusion.contains(w)).cloned().collect();
    if extra.is_empty() {
        t
    } else {
        widen(&t, &extra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::check::check;
    use crate::rightorder::{extend_right_order, rg_refute_bounded, Extension, PivotSet, RgBounds};

    fn ws(items: &[&str]) -> Vec<ReducedWord> {
        items.iter().map(|s| ReducedWord::parse(s).unwrap()).collect()
    }

    #[test]
    fn ga_from_combination() {
        let words = ws(&["xx", "yy", "x'y'"]);
        let d = derive_ga(&words, &[1, 1, 2]).unwrap();
        let goal = Hypersequent::new(words.iter().cloned());
        assert_eq!(check(CalculusId::GA, &d, &goal), Ok(()));
    }

    #[test]
    fn ga_rejects_unbalanced() {
        assert!(derive_ga(&ws(&["x"]), &[1]).is_err());
    }

    #[test]
    fn glgstar_from_tree() {
        let words = ws(&["xy", "y'x'"]);
        let Extension::Refuted(tree) = extend_right_order(&words, 2) else { panic!() };
        let d = derive_glgstar(&words, &tree).unwrap();
        assert_eq!(check(CalculusId::GLGstar, &d, &Hypersequent::new(words)), Ok(()));
    }

    #[test]
    fn grgstar_from_conjugates() {
        let words = ws(&["xyx'", "y'"]);
        let tree = rg_refute_bounded(&words, 2, &RgBounds { conjugator_length: 1, pivots: PivotSet::None }).unwrap();
        let d = derive_grgstar(&words, &tree).unwrap();
        assert_eq!(check(CalculusId::GRGstar, &d, &Hypersequent::new(words.clone())), Ok(()));
        assert!(derive_glgstar(&words, &tree).is_err());
    }

    #[test]
    fn ew_expansion_only_in_cut_calculi() {
        let d = Derivation::leaf(Hypersequent::new(ws(&["e"])), RuleInstance::Gv { gamma: Lits::default() });
        let wide = admissible_ew_expand(CalculusId::GLG, &d, &ws(&["x"])).unwrap();
        assert_eq!(check(CalculusId::GLG, &wide, &Hypersequent::new(ws(&["e", "x"]))), Ok(()));
        assert!(admissible_ew_expand(CalculusId::GLGstar, &d, &ws(&["x"])).is_err());
    }
}
