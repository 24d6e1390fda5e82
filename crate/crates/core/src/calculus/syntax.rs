use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::freegroup::{format_literals, parse_literals, Literal, ReducedWord};

/// A sequent, identified with its reduced word. `raw` keeps the literal
/// sequence as typed, when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub word: ReducedWord,
    pub raw: Option<Vec<Literal>>,
}

impl Sequent {
    pub fn from_word(word: ReducedWord) -> Self {
        Sequent { word, raw: None }
    }

    pub fn from_raw(raw: Vec<Literal>) -> Self {
        Sequent { word: ReducedWord::reduce(raw.iter().copied()), raw: Some(raw) }
    }

    pub fn literals(&self) -> &[Literal] {
        self.raw.as_deref().unwrap_or(self.word.literals())
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_literals(self.literals()))
    }
}

/// A finite set of sequents, read as `e ≤ Γ₁ ∨ … ∨ Γₙ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hypersequent(pub BTreeSet<ReducedWord>);

impl Hypersequent {
    pub fn new<I: IntoIterator<Item = ReducedWord>>(words: I) -> Self {
        Hypersequent(words.into_iter().collect())
    }

    pub fn words(&self) -> impl Iterator<Item = &ReducedWord> {
        self.0.iter()
    }

    pub fn to_vec(&self) -> Vec<ReducedWord> {
        self.0.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &ReducedWord) -> bool {
        self.0.contains(w)
    }

    pub fn with<I: IntoIterator<Item = ReducedWord>>(&self, extra: I) -> Hypersequent {
        let mut s = self.0.clone();
        s.extend(extra);
        Hypersequent(s)
    }
}

impl fmt::Display for Hypersequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        f.write_str(&parts.join(" | "))
    }
}

/// A raw literal sequence, written like a word but never reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lits(pub Vec<Literal>);

impl Lits {
    pub fn reduced(&self) -> ReducedWord {
        ReducedWord::reduce(self.0.iter().copied())
    }

    pub fn inverse(&self) -> Lits {
        Lits(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(parts: &[&Lits]) -> Lits {
        Lits(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }
}

impl From<&ReducedWord> for Lits {
    fn from(w: &ReducedWord) -> Self {
        Lits(w.literals().to_vec())
    }
}

impl From<Vec<Literal>> for Lits {
    fn from(v: Vec<Literal>) -> Self {
        Lits(v)
    }
}

impl fmt::Display for Lits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_literals(&self.0))
    }
}

impl FromStr for Lits {
    type Err = crate::error::ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_literals(s).map(Lits)
    }
}

impl Serialize for Lits {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Lits {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A proof system: its set of admitted rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CalculusId {
    GA,
    GLG,
    #[serde(rename = "GLG*")]
    GLGstar,
    GRG,
    #[serde(rename = "GRG*")]
    GRGstar,
    #[serde(rename = "GLG-analytic")]
    GLGanalytic,
}

impl CalculusId {
    pub const ALL: [CalculusId; 6] =
        [CalculusId::GA, CalculusId::GLG, CalculusId::GLGstar, CalculusId::GRG, CalculusId::GRGstar, CalculusId::GLGanalytic];

    pub fn name(self) -> &'static str {
        match self {
            CalculusId::GA => "GA",
            CalculusId::GLG => "GLG",
            CalculusId::GLGstar => "GLG*",
            CalculusId::GRG => "GRG",
            CalculusId::GRGstar => "GRG*",
            CalculusId::GLGanalytic => "GLG-analytic",
        }
    }

    pub fn rules(self) -> &'static [RuleTag] {
        use RuleTag::*;
        match self {
            CalculusId::GA => &[Id, Ex, Split],
            CalculusId::GLGstar => &[Gv, Split, Star],
            CalculusId::GLG => &[Gv, Em, Cut],
            CalculusId::GRGstar => &[Gv, Split, Star, Cycle],
            CalculusId::GRG => &[Gv, Em, Cut, Cycle],
            CalculusId::GLGanalytic => &[Gv, Mix, Com],
        }
    }

    pub fn admits(self, rule: RuleTag) -> bool {
        self.rules().contains(&rule)
    }
}

impl fmt::Display for CalculusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CalculusId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace(['_', ' '], "-");
        CalculusId::ALL
            .into_iter()
            .find(|c| {
                let n = c.name().to_ascii_lowercase();
                n == key || n.replace('*', "star") == key || n.replace('*', "-star") == key
            })
            .ok_or_else(|| format!("unknown calculus `{s}` (expected GA, GLG, GLG*, GRG, GRG* or GLG-analytic)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleTag {
    Id,
    Ex,
    Split,
    Gv,
    Em,
    Cut,
    Star,
    Cycle,
    Mix,
    Com,
}

/// A rule application with the literal blocks that instantiate its schema.
///
/// Blocks are raw; the checker reduces them before comparing with the
/// (reduced) sequents of the hypersequents involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum RuleInstance {
    /// `G | Δ, Δ⁻¹`; the certificate is the whole active sequent.
    Id { sequent: Lits },
    /// `G | Π, Δ, Γ` ⟹ `G | Π, Γ, Δ`.
    Ex { pi: Lits, gamma: Lits, delta: Lits },
    /// `G | Γ, Δ` ⟹ `G | Γ | Δ`.
    Split { gamma: Lits, delta: Lits },
    /// `G | Γ` where Γ is group-valid.
    Gv { gamma: Lits },
    /// `G | Δ | Δ⁻¹`.
    Em { delta: Lits },
    /// `G | Γ, Δ` and `G | Δ⁻¹, Σ` ⟹ `G | Γ, Σ`.
    Cut { gamma: Lits, delta: Lits, sigma: Lits },
    /// `G | Δ` and `G | Δ⁻¹` ⟹ `G`, for Δ not group-valid.
    Star { delta: Lits },
    /// `G | Δ, Γ` ⟹ `G | Γ, Δ`.
    Cycle { gamma: Lits, delta: Lits },
    /// `G | Γ` and `G | Δ` ⟹ `G | Γ, Δ`.
    Mix { gamma: Lits, delta: Lits },
    /// `G | Γ, Σ` and `G | Π, Δ` ⟹ `G | Γ, Δ | Π, Σ`.
    Com { gamma: Lits, delta: Lits, pi: Lits, sigma: Lits },
}

impl RuleInstance {
    pub fn id_for(delta: &Lits) -> RuleInstance {
        RuleInstance::Id { sequent: Lits::concat(&[delta, &delta.inverse()]) }
    }

    pub fn tag(&self) -> RuleTag {
        match self {
            RuleInstance::Id { .. } => RuleTag::Id,
            RuleInstance::Ex { .. } => RuleTag::Ex,
            RuleInstance::Split { .. } => RuleTag::Split,
            RuleInstance::Gv { .. } => RuleTag::Gv,
            RuleInstance::Em { .. } => RuleTag::Em,
            RuleInstance::Cut { .. } => RuleTag::Cut,
            RuleInstance::Star { .. } => RuleTag::Star,
            RuleInstance::Cycle { .. } => RuleTag::Cycle,
            RuleInstance::Mix { .. } => RuleTag::Mix,
            RuleInstance::Com { .. } => RuleTag::Com,
        }
    }

    pub fn premise_count(&self) -> usize {
        match self.tag() {
            RuleTag::Id | RuleTag::Gv | RuleTag::Em => 0,
            RuleTag::Ex | RuleTag::Split | RuleTag::Cycle => 1,
            RuleTag::Cut | RuleTag::Star | RuleTag::Mix | RuleTag::Com => 2,
        }
    }
}

/// A derivation tree; each node records its conclusion and the rule used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub conclusion: Hypersequent,
    #[serde(flatten)]
    pub rule: RuleInstance,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn leaf(conclusion: Hypersequent, rule: RuleInstance) -> Self {
        Derivation { conclusion, rule, premises: Vec::new() }
    }

    pub fn node(conclusion: Hypersequent, rule: RuleInstance, premises: Vec<Derivation>) -> Self {
        Derivation { conclusion, rule, premises }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    /// Pre-order traversal with child-index paths.
    pub fn nodes(&self) -> Vec<(Vec<usize>, &Derivation)> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), self)];
        while let Some((path, d)) = stack.pop() {
            for (i, p) in d.premises.iter().enumerate().rev() {
                let mut child = path.clone();
                child.push(i);
                stack.push((child, p));
            }
            out.push((path, d));
        }
        out
    }

    pub fn get(&self, path: &[usize]) -> Option<&Derivation> {
        path.iter().try_fold(self, |d, &i| d.premises.get(i))
    }

    pub fn get_mut(&mut self, path: &[usize]) -> Option<&mut Derivation> {
        path.iter().try_fold(self, |d, &i| d.premises.get_mut(i))
    }

    pub fn rules_used(&self) -> BTreeSet<&'static str> {
        self.nodes().into_iter().map(|(_, d)| rule_name(d.rule.tag())).collect()
    }
}

pub fn rule_name(tag: RuleTag) -> &'static str {
    match tag {
        RuleTag::Id => "Id",
        RuleTag::Ex => "Ex",
        RuleTag::Split => "Split",
        RuleTag::Gv => "Gv",
        RuleTag::Em => "Em",
        RuleTag::Cut => "Cut",
        RuleTag::Star => "Star",
        RuleTag::Cycle => "Cycle",
        RuleTag::Mix => "Mix",
        RuleTag::Com => "Com",
    }
}
