use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::freegroup::ReducedWord;

use super::syntax::{rule_name, CalculusId, Derivation, Hypersequent, Lits, RuleInstance};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckErrorKind {
    #[error("root concludes `{found}` but the goal is `{expected}`")]
    GoalMismatch { expected: Hypersequent, found: Hypersequent },
    #[error("rule {rule} is not a rule of {calculus}")]
    RuleNotInCalculus { rule: &'static str, calculus: CalculusId },
    #[error("rule {rule} takes {expected} premise(s), found {found}")]
    PremiseCount { rule: &'static str, expected: usize, found: usize },
    #[error("empty hypersequent")]
    EmptyHypersequent,
    #[error("{0}")]
    SideCondition(String),
    #[error("{0}")]
    Mismatch(String),
}

/// A rejected node, located by the child indices leading to it from the root.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct CheckError {
    pub path: Vec<usize>,
    pub kind: CheckErrorKind,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {:?}: {}", self.path, self.kind)
    }
}

/// Checks `d` in `calculus` and that it concludes `goal`. Reports the first
/// failure in pre-order.
pub fn check(calculus: CalculusId, d: &Derivation, goal: &Hypersequent) -> Result<(), CheckError> {
    match check_all(calculus, d, goal).into_iter().next() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Every failure, in pre-order.
pub fn check_all(calculus: CalculusId, d: &Derivation, goal: &Hypersequent) -> Vec<CheckError> {
    let mut errors = Vec::new();
    if &d.conclusion != goal {
        errors.push(CheckError {
            path: Vec::new(),
            kind: CheckErrorKind::GoalMismatch { expected: goal.clone(), found: d.conclusion.clone() },
        });
    }
    for (path, node) in d.nodes() {
        if let Err(kind) = check_node(calculus, node) {
            errors.push(CheckError { path, kind });
        }
    }
    errors
}

/// Checks one rule application against its premises' conclusions.
pub fn check_node(calculus: CalculusId, d: &Derivation) -> Result<(), CheckErrorKind> {
    let tag = d.rule.tag();
    let rule = rule_name(tag);
    if !calculus.admits(tag) {
        return Err(CheckErrorKind::RuleNotInCalculus { rule, calculus });
    }
    if d.premises.len() != d.rule.premise_count() {
        return Err(CheckErrorKind::PremiseCount { rule, expected: d.rule.premise_count(), found: d.premises.len() });
    }
    if d.conclusion.is_empty() {
        return Err(CheckErrorKind::EmptyHypersequent);
    }
    let shape = actives(&d.rule)?;
    let mut all = vec![(&d.conclusion, &shape.conclusion)];
    all.extend(d.premises.iter().map(|p| &p.conclusion).zip(shape.premises.iter()));
    // The shared context is whatever is not active somewhere; every
    // hypersequent must then be exactly context plus its own actives.
    let context: BTreeSet<&ReducedWord> =
        all.iter().flat_map(|(h, act)| h.words().filter(move |w| !act.contains(w))).collect();
    for (i, (h, act)) in all.iter().enumerate() {
        let expected: BTreeSet<&ReducedWord> = context.iter().copied().chain(act.iter()).collect();
        let found: BTreeSet<&ReducedWord> = h.words().collect();
        if expected != found {
            let which = if i == 0 { "conclusion".to_string() } else { format!("premise {}", i - 1) };
            let missing: Vec<String> = expected.difference(&found).map(|w| w.to_string()).collect();
            let extra: Vec<String> = found.difference(&expected).map(|w| w.to_string()).collect();
            return Err(CheckErrorKind::Mismatch(format!(
                "{rule}: {which} does not match the rule instance (missing [{}], unexpected [{}])",
                missing.join(", "),
                extra.join(", ")
            )));
        }
    }
    Ok(())
}

/// Active words of a rule instance: those of the conclusion and of each premise.
pub(crate) struct Shape {
    pub(crate) conclusion: Vec<ReducedWord>,
    pub(crate) premises: Vec<Vec<ReducedWord>>,
}

fn r(parts: &[&Lits]) -> ReducedWord {
    Lits::concat(parts).reduced()
}

pub(crate) fn actives(rule: &RuleInstance) -> Result<Shape, CheckErrorKind> {
    let side = |msg: &str| Err(CheckErrorKind::SideCondition(msg.to_string()));
    let shape = |c: Vec<ReducedWord>, p: Vec<Vec<ReducedWord>>| Ok(Shape { conclusion: c, premises: p });
    match rule {
        RuleInstance::Id { sequent } => {
            let s = &sequent.0;
            let n = s.len();
            if n % 2 != 0 || (0..n / 2).any(|i| s[i] != s[n - 1 - i].inverse()) {
                return side("Id: the active sequent is not of the form Δ, Δ⁻¹");
            }
            shape(vec![sequent.reduced()], vec![])
        }
        RuleInstance::Gv { gamma } => {
            if !gamma.reduced().is_identity() {
                return side("Gv: Γ does not reduce to e");
            }
            shape(vec![ReducedWord::identity()], vec![])
        }
        RuleInstance::Em { delta } => shape(vec![delta.reduced(), delta.reduced().inv()], vec![]),
        RuleInstance::Ex { pi, gamma, delta } => shape(vec![r(&[pi, gamma, delta])], vec![vec![r(&[pi, delta, gamma])]]),
        RuleInstance::Split { gamma, delta } => shape(vec![gamma.reduced(), delta.reduced()], vec![vec![r(&[gamma, delta])]]),
        RuleInstance::Cut { gamma, delta, sigma } => shape(
            vec![r(&[gamma, sigma])],
            vec![vec![r(&[gamma, delta])], vec![r(&[&delta.inverse(), sigma])]],
        ),
        RuleInstance::Star { delta } => {
            let d = delta.reduced();
            if d.is_identity() {
                return side("Star: Δ is group-valid");
            }
            let di = d.inv();
            shape(vec![], vec![vec![d], vec![di]])
        }
        RuleInstance::Cycle { gamma, delta } => shape(vec![r(&[gamma, delta])], vec![vec![r(&[delta, gamma])]]),
        RuleInstance::Mix { gamma, delta } => {
            shape(vec![r(&[gamma, delta])], vec![vec![gamma.reduced()], vec![delta.reduced()]])
        }
        RuleInstance::Com { gamma, delta, pi, sigma } => shape(
            vec![r(&[gamma, delta]), r(&[pi, sigma])],
            vec![vec![r(&[gamma, sigma])], vec![r(&[pi, delta])]],
        ),
    }
}
