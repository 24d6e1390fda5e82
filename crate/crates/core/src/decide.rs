//! Uniform decision entry points: every procedure returns a [`Verdict`]
//! carrying a derivation, a self-verifying witness, or the exhausted bounds.

use std::fmt;
use std::str::FromStr;

use crate::abelian::{self, GordanCertificate};
use crate::calculus::{check, derive_ga, derive_glgstar, derive_grgstar, CalculusId, Derivation, Hypersequent};
use crate::freegroup::{arity_of, ReducedWord};
use crate::rightorder::{
    extend_right_order, rg_refute_bounded, sign_search, Extension, HmOutcome, RgBounds, SignAssignment, TruncatedRightOrder,
};
use crate::term::Goal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variety {
    Abelian,
    LGroup,
    Representable,
}

impl FromStr for Variety {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "abelian" | "la" => Ok(Variety::Abelian),
            "lgroup" | "l-group" | "lg" => Ok(Variety::LGroup),
            "representable" | "rg" => Ok(Variety::Representable),
            _ => Err(format!("unknown variety `{s}` (expected abelian, lgroup or representable)")),
        }
    }
}

impl Variety {
    pub fn calculus(self) -> CalculusId {
        match self {
            Variety::Abelian => CalculusId::GA,
            Variety::LGroup => CalculusId::GLGstar,
            Variety::Representable => CalculusId::GRGstar,
        }
    }
}

/// Which ℓ-group procedure to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LgProcedure {
    /// Truncated right orders.
    #[default]
    Cs,
    /// Sign search over initial subterms.
    Hm,
}

#[derive(Clone, Debug, Default)]
pub struct DecideOptions {
    pub procedure: LgProcedure,
    pub rg_bounds: RgBounds,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub calculus: CalculusId,
    pub goal: Hypersequent,
    pub derivation: Derivation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    TruncatedOrder(TruncatedRightOrder),
    Signs(SignAssignment),
    /// An assignment in ℤ under which every joinand is negative.
    Countermodel(Vec<i64>),
}

impl Witness {
    /// Re-checks the witness against the words it refutes.
    pub fn verify(&self, words: &[ReducedWord]) -> Result<(), String> {
        match self {
            Witness::TruncatedOrder(t) => {
                t.verify()?;
                match words.iter().find(|w| !t.contains(w)) {
                    Some(w) => Err(format!("{w} is not in the order")),
                    None => Ok(()),
                }
            }
            Witness::Signs(a) => {
                if a.verify(words) {
                    Ok(())
                } else {
                    Err("the signed pivots generate e".into())
                }
            }
            Witness::Countermodel(y) => match words.iter().find(|w| crate::term::eval_word_z(w.literals(), y) >= 0) {
                Some(w) => Err(format!("{w} is not negative under {y:?}")),
                None => Ok(()),
            },
        }
    }
}

/// What a bounded search tried before giving up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub conjugator_length: usize,
    pub pivot_count: usize,
    pub open_branch: SignAssignment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid(Proof),
    Invalid(Witness),
    Unknown(BoundsReport),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Valid,
    Invalid,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Valid => 0,
            Status::Invalid => 1,
            Status::Unknown => 2,
        }
    }

    /// Combined status of a conjunction.
    pub fn all<I: IntoIterator<Item = Status>>(items: I) -> Status {
        let mut out = Status::Valid;
        for s in items {
            match s {
                Status::Invalid => return Status::Invalid,
                Status::Unknown => out = Status::Unknown,
                Status::Valid => {}
            }
        }
        out
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Valid => "VALID",
            Status::Invalid => "INVALID",
            Status::Unknown => "UNKNOWN",
        })
    }
}

impl Verdict {
    pub fn status(&self) -> Status {
        match self {
            Verdict::Valid(_) => Status::Valid,
            Verdict::Invalid(_) => Status::Invalid,
            Verdict::Unknown(_) => Status::Unknown,
        }
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            Verdict::Valid(p) => Some(p),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Invalid(w) => Some(w),
            _ => None,
        }
    }

    /// Checks the attached certificate for `words`.
    pub fn verify(&self, words: &[ReducedWord]) -> Result<(), String> {
        match self {
            Verdict::Valid(p) => {
                if p.goal != Hypersequent::new(words.iter().cloned()) {
                    return Err("proof goal differs from the words".into());
                }
                check(p.calculus, &p.derivation, &p.goal).map_err(|e| e.to_string())
            }
            Verdict::Invalid(w) => w.verify(words),
            Verdict::Unknown(_) => Ok(()),
        }
    }
}

fn proof(calculus: CalculusId, words: &[ReducedWord], derivation: Derivation) -> Verdict {
    Verdict::Valid(Proof { calculus, goal: Hypersequent::new(words.iter().cloned()), derivation })
}

fn nonempty(words: &[ReducedWord]) {
    assert!(!words.is_empty(), "a goal needs at least one joinand");
}

/// Abelian ℓ-groups: a GA derivation or a ℤ countermodel.
pub fn validity_abelian(words: &[ReducedWord], arity: usize) -> Verdict {
    nonempty(words);
    let arity = arity.max(arity_of(words));
    match abelian::decide_words(words, arity).1 {
        GordanCertificate::Combination { lambda } => {
            proof(CalculusId::GA, words, derive_ga(words, &lambda).expect("verified combinations are balanced"))
        }
        GordanCertificate::Separator { y } => Verdict::Invalid(Witness::Countermodel(y)),
    }
}

/// ℓ-groups via truncated right orders.
pub fn decide_lg_cs(words: &[ReducedWord], arity: usize) -> Verdict {
    nonempty(words);
    match extend_right_order(words, arity) {
        Extension::Order(t) => Verdict::Invalid(Witness::TruncatedOrder(t)),
        Extension::Refuted(tree) => {
            proof(CalculusId::GLGstar, words, derive_glgstar(words, &tree).expect("search trees verify"))
        }
    }
}

/// ℓ-groups via sign search over initial subterms.
pub fn decide_lg_hm(words: &[ReducedWord], arity: usize) -> Verdict {
    nonempty(words);
    let _ = arity;
    match sign_search(words) {
        HmOutcome::Refuted(tree) => {
            proof(CalculusId::GLGstar, words, derive_glgstar(words, &tree).expect("search trees verify"))
        }
        HmOutcome::Extends(a) => Verdict::Invalid(Witness::Signs(a)),
    }
}

/// Representable ℓ-groups, three-valued. The ℤ side is tried first; it is
/// cheap and the two positive outcomes exclude each other.
pub fn decide_rg(words: &[ReducedWord], arity: usize, bounds: &RgBounds) -> Verdict {
    nonempty(words);
    let arity = arity.max(arity_of(words));
    if let GordanCertificate::Separator { y } = abelian::decide_words(words, arity).1 {
        return Verdict::Invalid(Witness::Countermodel(y));
    }
    match rg_refute_bounded(words, arity, bounds) {
        Ok(tree) => proof(CalculusId::GRGstar, words, derive_grgstar(words, &tree).expect("search trees verify")),
        Err(open_branch) => Verdict::Unknown(BoundsReport {
            conjugator_length: bounds.conjugator_length,
            pivot_count: bounds.pivot_list(words).len(),
            open_branch,
        }),
    }
}

pub fn decide_words(variety: Variety, words: &[ReducedWord], arity: usize, options: &DecideOptions) -> Verdict {
    match variety {
        Variety::Abelian => validity_abelian(words, arity),
        Variety::LGroup => match options.procedure {
            LgProcedure::Cs => decide_lg_cs(words, arity),
            LgProcedure::Hm => decide_lg_hm(words, arity),
        },
        Variety::Representable => decide_rg(words, arity, &options.rg_bounds),
    }
}

/// A verdict for one conjunct of a goal.
#[derive(Clone, Debug)]
pub struct ConjunctVerdict {
    pub words: Vec<ReducedWord>,
    pub verdict: Verdict,
}

/// Decides each conjunct of the goal's normal form independently.
pub fn decide_goal(variety: Variety, goal: &Goal, arity: usize, options: &DecideOptions) -> Vec<ConjunctVerdict> {
    let arity = arity.max(goal.max_generator() as usize);
    goal.conjuncts()
        .into_iter()
        .map(|words| {
            let verdict = decide_words(variety, &words, arity, options);
            ConjunctVerdict { words, verdict }
        })
        .collect()
}
