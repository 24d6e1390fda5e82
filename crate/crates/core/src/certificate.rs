//! Proof and witness files: canonical pretty-printed JSON with a schema
//! version. Sets are emitted in ShortLex order, so equal certificates give
//! byte-identical files.

use serde::{Deserialize, Serialize};

use crate::calculus::{check, CalculusId, CheckError, Derivation, Hypersequent};
use crate::decide::{Proof, Verdict, Witness};
use crate::error::{Error, Result};
use crate::freegroup::ReducedWord;
use crate::rightorder::{RefutationTree, SignAssignment, TruncatedRightOrder};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofEntry {
    pub goal: Hypersequent,
    pub derivation: Derivation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofFile {
    pub schema: u32,
    pub calculus: CalculusId,
    pub proofs: Vec<ProofEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessBody {
    TruncatedRightOrder(TruncatedRightOrder),
    Countermodel { assignment: Vec<i64> },
    SignAssignment { signs: SignAssignment },
    RefutationTree { tree: RefutationTree },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub words: Vec<ReducedWord>,
    #[serde(flatten)]
    pub body: WitnessBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub schema: u32,
    pub witnesses: Vec<WitnessEntry>,
}

impl ProofFile {
    pub fn new(calculus: CalculusId, proofs: Vec<ProofEntry>) -> Self {
        ProofFile { schema: SCHEMA, calculus, proofs }
    }

    pub fn from_proofs<'a, I: IntoIterator<Item = &'a Proof>>(calculus: CalculusId, proofs: I) -> Self {
        let entries = proofs
            .into_iter()
            .map(|p| ProofEntry { goal: p.goal.clone(), derivation: p.derivation.clone() })
            .collect();
        ProofFile::new(calculus, entries)
    }

    pub fn to_text(&self) -> String {
        to_text(self)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: ProofFile = serde_json::from_str(text)?;
        schema_ok(f.schema)?;
        Ok(f)
    }

    /// Checks every proof under `calculus` (the declared one by default).
    /// The error names the failing proof and node.
    pub fn check(&self, calculus: Option<CalculusId>) -> std::result::Result<(), (usize, CheckError)> {
        let calculus = calculus.unwrap_or(self.calculus);
        for (i, p) in self.proofs.iter().enumerate() {
            check(calculus, &p.derivation, &p.goal).map_err(|e| (i, e))?;
        }
        Ok(())
    }
}

impl WitnessEntry {
    pub fn from_witness(words: &[ReducedWord], w: &Witness) -> Self {
        let body = match w {
            Witness::TruncatedOrder(t) => WitnessBody::TruncatedRightOrder(t.clone()),
            Witness::Countermodel(y) => WitnessBody::Countermodel { assignment: y.clone() },
            Witness::Signs(a) => WitnessBody::SignAssignment { signs: a.clone() },
        };
        WitnessEntry { words: words.to_vec(), body }
    }

    pub fn verify(&self) -> std::result::Result<(), String> {
        let w = match &self.body {
            WitnessBody::TruncatedRightOrder(t) => Witness::TruncatedOrder(t.clone()),
            WitnessBody::Countermodel { assignment } => Witness::Countermodel(assignment.clone()),
            WitnessBody::SignAssignment { signs } => Witness::Signs(signs.clone()),
            WitnessBody::RefutationTree { tree } => return tree.verify(&self.words),
        };
        w.verify(&self.words)
    }
}

impl WitnessFile {
    pub fn new(witnesses: Vec<WitnessEntry>) -> Self {
        WitnessFile { schema: SCHEMA, witnesses }
    }

    pub fn to_text(&self) -> String {
        to_text(self)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: WitnessFile = serde_json::from_str(text)?;
        schema_ok(f.schema)?;
        Ok(f)
    }

    pub fn verify(&self) -> std::result::Result<(), (usize, String)> {
        for (i, w) in self.witnesses.iter().enumerate() {
            w.verify().map_err(|e| (i, e))?;
        }
        Ok(())
    }
}

/// Splits verdicts into a proof file (if any conjunct is valid) and a
/// witness file (if any is invalid).
pub fn files_for(calculus: CalculusId, verdicts: &[(Vec<ReducedWord>, Verdict)]) -> (Option<ProofFile>, Option<WitnessFile>) {
    let proofs: Vec<&Proof> = verdicts.iter().filter_map(|(_, v)| v.proof()).collect();
    let witnesses: Vec<WitnessEntry> =
        verdicts.iter().filter_map(|(w, v)| v.witness().map(|x| WitnessEntry::from_witness(w, x))).collect();
    (
        (!proofs.is_empty()).then(|| ProofFile::from_proofs(calculus, proofs)),
        (!witnesses.is_empty()).then(|| WitnessFile::new(witnesses)),
    )
}

fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("certificates serialize");
    s.push('\n');
    s
}

fn schema_ok(v: u32) -> Result<()> {
    if v == SCHEMA {
        Ok(())
    } else {
        Err(Error::Certificate(format!("unsupported schema version {v} (expected {SCHEMA})")))
    }
}
