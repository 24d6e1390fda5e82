//! The exhaustive agreement corpus: every nonempty set of at most
//! `max_size` nonidentity words of length at most `max_len` in F(arity),
//! decided by both ℓ-group procedures with all certificates re-checked.

use serde::Serialize;

use crate::calculus::{check, Hypersequent};
use crate::decide::{decide_lg_cs, decide_lg_hm, Status, Verdict};
use crate::freegroup::{ball, ReducedWord};
use crate::par::{self, Execution};
use crate::rightorder::{extend_right_order, Extension};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckConfig {
    pub arity: usize,
    pub max_len: usize,
    pub max_size: usize,
}

impl Default for CrosscheckConfig {
    fn default() -> Self {
        CrosscheckConfig { arity: 2, max_len: 2, max_size: 3 }
    }
}

/// The corpus in a fixed order: by size, then lexicographically by index
/// into the ShortLex-ordered word list.
pub fn corpus(config: &CrosscheckConfig) -> Vec<Vec<ReducedWord>> {
    let words: Vec<ReducedWord> = ball(config.arity, config.max_len).into_iter().skip(1).collect();
    let mut out = Vec::new();
    for size in 1..=config.max_size.min(words.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| words[i].clone()).collect());
            let Some(pos) = (0..size).rev().find(|&p| idx[p] < words.len() - size + p) else { break };
            idx[pos] += 1;
            for q in pos + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub words: Vec<ReducedWord>,
    pub cs: Status,
    pub hm: Status,
    pub extends: bool,
    /// Certificates of both procedures verified (proofs checker-accepted,
    /// witnesses self-verified).
    pub certificates_ok: bool,
    pub proofs_checked: usize,
}

impl InstanceReport {
    pub fn agrees(&self) -> bool {
        self.cs == self.hm
    }

    pub fn dichotomy_holds(&self) -> bool {
        self.extends == (self.cs == Status::Invalid)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrosscheckSummary {
    pub instances: usize,
    pub valid: usize,
    pub invalid: usize,
    pub cs_hm_agree: usize,
    pub dichotomy_agree: usize,
    pub proofs_checked: usize,
    pub certificate_failures: usize,
    pub disagreements: Vec<Vec<ReducedWord>>,
}

impl CrosscheckSummary {
    pub fn all_agree(&self) -> bool {
        self.cs_hm_agree == self.instances && self.dichotomy_agree == self.instances && self.certificate_failures == 0
    }
}

fn certificate_ok(words: &[ReducedWord], v: &Verdict) -> (bool, usize) {
    match v {
        Verdict::Valid(p) => (check(p.calculus, &p.derivation, &Hypersequent::new(words.iter().cloned())).is_ok(), 1),
        other => (other.verify(words).is_ok(), 0),
    }
}

pub fn run_instance(words: &[ReducedWord], arity: usize) -> InstanceReport {
    let cs = decide_lg_cs(words, arity);
    let hm = decide_lg_hm(words, arity);
    let extends = matches!(extend_right_order(words, arity), Extension::Order(_));
    let (cs_ok, n1) = certificate_ok(words, &cs);
    let (hm_ok, n2) = certificate_ok(words, &hm);
    InstanceReport {
        words: words.to_vec(),
        cs: cs.status(),
        hm: hm.status(),
        extends,
        certificates_ok: cs_ok && hm_ok,
        proofs_checked: n1 + n2,
    }
}

pub fn run_reports(config: &CrosscheckConfig, exec: Execution) -> Vec<InstanceReport> {
    let sets = corpus(config);
    par::map(&sets, exec, |words| run_instance(words, config.arity))
}

pub fn summarize(reports: &[InstanceReport]) -> CrosscheckSummary {
    let mut s = CrosscheckSummary { instances: reports.len(), ..Default::default() };
    for r in reports {
        match r.cs {
            Status::Valid => s.valid += 1,
            Status::Invalid => s.invalid += 1,
            Status::Unknown => {}
        }
        s.cs_hm_agree += r.agrees() as usize;
        s.dichotomy_agree += r.dichotomy_holds() as usize;
        s.proofs_checked += r.proofs_checked;
        s.certificate_failures += (!r.certificates_ok) as usize;
        if !(r.agrees() && r.dichotomy_holds() && r.certificates_ok) {
            s.disagreements.push(r.words.clone());
        }
    }
    s
}

pub fn run(config: &CrosscheckConfig, exec: Execution) -> CrosscheckSummary {
    summarize(&run_reports(config, exec))
}
