//! Deciding `e ∈ ⟨S⟩` for a finite `S ⊆ F(k)`, with an exact factorization.
//!
//! The elements of `S` are laid out as petals of a flower automaton around a
//! base state. Saturation records every state pair `(p, s)` joined by a
//! nonempty path whose label freely reduces to `e`; such pairs are generated by
//!
//! * `p →ˡ q ⇒* r →ˡ̄ s` gives `(p, s)`, where `⇒*` is the reflexive closure of
//!   the recorded pairs, and
//! * `(p, m)` and `(m, s)` give `(p, s)`.
//!
//! `e ∈ ⟨S⟩` iff `(base, base)` is recorded. Every pair keeps the rule
//! instance that produced it, so a witness path (and from it the sequence of
//! petals, i.e. the factorization) can be replayed.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::freegroup::{Literal, ReducedWord};

pub type StateId = u32;
pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: StateId,
    pub to: StateId,
    pub label: Literal,
    /// Set on the first edge of each petal: the factor that petal stands for.
    pub petal: Option<usize>,
}

/// Justification of a recorded epsilon pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `open` and `close` carry inverse labels; the states between them are
    /// equal or already joined by an epsilon pair.
    Cancel { open: EdgeId, close: EdgeId },
    /// Composition through `via`.
    Chain { via: StateId },
}

/// Flower automaton over a list of nonempty reduced words plus the epsilon
/// pairs discovered so far.
#[derive(Clone, Debug)]
pub struct WordAutomaton {
    state_count: usize,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    epsilon: HashMap<(StateId, StateId), Provenance>,
    succ: Vec<Vec<StateId>>,
    pred: Vec<Vec<StateId>>,
    petals: usize,
}

pub const BASE: StateId = 0;

/// A nonempty sequence of indices into the generating list whose product is `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<usize>,
}

impl Factorization {
    /// Product of the indexed generators, reduced.
    pub fn product(&self, generators: &[ReducedWord]) -> Option<ReducedWord> {
        let mut acc = ReducedWord::identity();
        for &i in &self.factors {
            acc = acc.mul(generators.get(i)?);
        }
        Some(acc)
    }

    pub fn verify(&self, generators: &[ReducedWord]) -> bool {
        !self.factors.is_empty() && self.product(generators).is_some_and(|p| p.is_identity())
    }

    /// The lexicographically least cyclic rotation; rotating a product equal
    /// to `e` conjugates it, so the result is again a factorization of `e`.
    pub fn least_rotation(self) -> Self {
        let n = self.factors.len();
        let best = (0..n)
            .min_by(|&i, &j| self.factors[i..].iter().chain(&self.factors[..i]).cmp(self.factors[j..].iter().chain(&self.factors[..j])))
            .unwrap_or(0);
        let mut factors = self.factors;
        factors.rotate_left(best);
        Factorization { factors }
    }
}

/// Builds the flower of `generators`; the empty word is rejected.
pub fn build_flower(generators: &[ReducedWord]) -> Result<WordAutomaton> {
    let mut a = WordAutomaton {
        state_count: 1,
        edges: Vec::new(),
        out_edges: vec![Vec::new()],
        in_edges: vec![Vec::new()],
        epsilon: HashMap::new(),
        succ: vec![Vec::new()],
        pred: vec![Vec::new()],
        petals: generators.len(),
    };
    for (petal, w) in generators.iter().enumerate() {
        if w.is_identity() {
            return Err(Error::IdentityInput(format!("generator {petal} of a flower automaton is e")));
        }
        let lits = w.literals();
        let mut from = BASE;
        for (i, &label) in lits.iter().enumerate() {
            let to = if i + 1 == lits.len() { BASE } else { a.new_state() };
            a.add_edge(Edge { from, to, label, petal: (i == 0).then_some(petal) });
            from = to;
        }
    }
    Ok(a)
}

impl WordAutomaton {
    fn new_state(&mut self) -> StateId {
        let id = self.state_count as StateId;
        self.state_count += 1;
        self.out_edges.push(Vec::new());
        self.in_edges.push(Vec::new());
        self.succ.push(Vec::new());
        self.pred.push(Vec::new());
        id
    }

    fn add_edge(&mut self, e: Edge) {
        let id = self.edges.len() as EdgeId;
        self.out_edges[e.from as usize].push(id);
        self.in_edges[e.to as usize].push(id);
        self.edges.push(e);
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn petal_count(&self) -> usize {
        self.petals
    }

    /// Cycles through the base, one per generator.
    pub fn cycles_at_base(&self) -> usize {
        self.out_edges[BASE as usize].len()
    }

    pub fn epsilon_pairs(&self) -> impl Iterator<Item = (StateId, StateId, Provenance)> + '_ {
        self.epsilon.iter().map(|(&(p, s), &prov)| (p, s, prov))
    }

    pub fn epsilon_count(&self) -> usize {
        self.epsilon.len()
    }

    pub fn has_epsilon(&self, p: StateId, s: StateId) -> bool {
        self.epsilon.contains_key(&(p, s))
    }

    /// Runs saturation to its fixpoint.
    pub fn saturate(mut self) -> Self {
        self.run(None);
        self
    }

    /// Saturates, stopping early once `target` is recorded. Returns whether it was.
    fn run(&mut self, target: Option<(StateId, StateId)>) -> bool {
        if let Some(t) = target {
            if self.epsilon.contains_key(&t) {
                return true;
            }
        }
        let mut work: Vec<(StateId, StateId)> = Vec::new();
        // Adjacent cancellations l l̄ with nothing between them.
        let mut adjacent = Vec::new();
        for q in 0..self.state_count {
            for &e1 in &self.in_edges[q] {
                for &e2 in &self.out_edges[q] {
                    if self.edges[e1 as usize].label.cancels(self.edges[e2 as usize].label) {
                        adjacent.push((self.edges[e1 as usize].from, self.edges[e2 as usize].to, e1, e2));
                    }
                }
            }
        }
        for (p, s, open, close) in adjacent {
            if self.record(p, s, Provenance::Cancel { open, close }) {
                work.push((p, s));
            }
        }
        // Pairs already present (from an earlier run) still need processing.
        if work.is_empty() && !self.epsilon.is_empty() {
            work.extend(self.epsilon.keys().copied());
        }
        let mut found = target.is_some_and(|t| self.epsilon.contains_key(&t));
        while let Some((a, b)) = work.pop() {
            if found {
                break;
            }
            let mut fresh: Vec<((StateId, StateId), Provenance)> = Vec::new();
            for &e1 in &self.in_edges[a as usize] {
                let l = self.edges[e1 as usize].label;
                for &e2 in &self.out_edges[b as usize] {
                    if l.cancels(self.edges[e2 as usize].label) {
                        let key = (self.edges[e1 as usize].from, self.edges[e2 as usize].to);
                        fresh.push((key, Provenance::Cancel { open: e1, close: e2 }));
                    }
                }
            }
            for &c in &self.pred[a as usize] {
                fresh.push(((c, b), Provenance::Chain { via: a }));
            }
            for &d in &self.succ[b as usize] {
                fresh.push(((a, d), Provenance::Chain { via: b }));
            }
            for ((p, s), prov) in fresh {
                if self.record(p, s, prov) {
                    work.push((p, s));
                    if target == Some((p, s)) {
                        found = true;
                    }
                }
            }
        }
        found || target.is_some_and(|t| self.epsilon.contains_key(&t))
    }

    fn record(&mut self, p: StateId, s: StateId, prov: Provenance) -> bool {
        if self.epsilon.contains_key(&(p, s)) {
            return false;
        }
        self.epsilon.insert((p, s), prov);
        self.succ[p as usize].push(s);
        self.pred[s as usize].push(p);
        true
    }

    /// Replays provenance into the edge sequence of a reducing path `p → s`.
    pub fn witness_path(&self, p: StateId, s: StateId) -> Option<Vec<EdgeId>> {
        if !self.epsilon.contains_key(&(p, s)) {
            return None;
        }
        enum Task {
            Pair(StateId, StateId),
            Emit(EdgeId),
        }
        let mut out = Vec::new();
        let mut stack = vec![Task::Pair(p, s)];
        while let Some(task) = stack.pop() {
            match task {
                Task::Emit(e) => out.push(e),
                Task::Pair(a, b) => match self.epsilon[&(a, b)] {
                    Provenance::Cancel { open, close } => {
                        let inner_from = self.edges[open as usize].to;
                        let inner_to = self.edges[close as usize].from;
                        stack.push(Task::Emit(close));
                        if inner_from != inner_to {
                            stack.push(Task::Pair(inner_from, inner_to));
                        }
                        stack.push(Task::Emit(open));
                    }
                    Provenance::Chain { via } => {
                        stack.push(Task::Pair(via, b));
                        stack.push(Task::Pair(a, via));
                    }
                },
            }
        }
        Some(out)
    }

    /// Reads the petal sequence off a closed path at the base.
    fn factorization_of(&self, path: &[EdgeId]) -> Factorization {
        let mut factors = Vec::new();
        let mut pending = true;
        for &e in path {
            let edge = self.edges[e as usize];
            if pending {
                if let Some(p) = edge.petal {
                    factors.push(p);
                    pending = false;
                }
            }
            if edge.to == BASE {
                pending = true;
            }
        }
        Factorization { factors }
    }
}

/// Runs saturation on `a` to fixpoint (free-function form).
pub fn saturate(a: WordAutomaton) -> WordAutomaton {
    a.saturate()
}

/// Decides whether some nonempty product of elements of `generators` (with
/// repetition) equals `e`, returning a factorization when it does.
pub fn contains_identity(generators: &[ReducedWord]) -> Option<Factorization> {
    if let Some(i) = generators.iter().position(|w| w.is_identity()) {
        return Some(Factorization { factors: vec![i] });
    }
    let mut a = build_flower(generators).expect("identity handled above");
    if !a.run(Some((BASE, BASE))) {
        return None;
    }
    let path = a.witness_path(BASE, BASE).expect("pair recorded");
    let f = a.factorization_of(&path).least_rotation();
    debug_assert!(f.verify(generators), "replayed factorization must reduce to e");
    Some(f)
}

/// Decides whether some nonempty product of conjugates `q g q⁻¹`, with `g`
/// from `generators` and `q` from `conjugators`, equals `e`. Returns the
/// `(q, generator index)` factors when it does.
///
/// `conjugators` must be closed under prefixes. Instead of one petal per
/// conjugate, the automaton shares a trie reading `q` out of the base and a
/// mirrored trie reading `q⁻¹` back, joined by one petal per `(q, g)`; this
/// keeps it small when there are many conjugators.
pub fn contains_identity_conjugates(
    generators: &[ReducedWord],
    conjugators: &[ReducedWord],
) -> Option<Vec<(ReducedWord, usize)>> {
    if let Some(i) = generators.iter().position(|w| w.is_identity()) {
        return Some(vec![(ReducedWord::identity(), i)]);
    }
    let mut a = build_flower(&[]).expect("no generators");
    let mut nodes: HashMap<ReducedWord, (StateId, StateId)> = HashMap::new();
    nodes.insert(ReducedWord::identity(), (BASE, BASE));
    let mut sorted: Vec<&ReducedWord> = conjugators.iter().filter(|q| !q.is_identity()).collect();
    sorted.sort();
    sorted.dedup();
    for q in &sorted {
        let lits = q.literals();
        let parent = ReducedWord::reduce(lits[..lits.len() - 1].iter().copied());
        let &(out_parent, back_parent) = nodes.get(&parent).expect("conjugators must be prefix-closed");
        let last = lits[lits.len() - 1];
        let (out, back) = (a.new_state(), a.new_state());
        a.add_edge(Edge { from: out_parent, to: out, label: last, petal: None });
        a.add_edge(Edge { from: back, to: back_parent, label: last.inverse(), petal: None });
        nodes.insert((*q).clone(), (out, back));
    }
    let mut factors = Vec::new();
    let identity = ReducedWord::identity();
    for q in std::iter::once(&identity).chain(sorted.iter().copied()) {
        let (out, back) = nodes[q];
        for (g, w) in generators.iter().enumerate() {
            let lits = w.literals();
            let mut from = out;
            for (i, &label) in lits.iter().enumerate() {
                let to = if i + 1 == lits.len() { back } else { a.new_state() };
                a.add_edge(Edge { from, to, label, petal: (i == 0).then_some(factors.len()) });
                from = to;
            }
            factors.push((q.clone(), g));
        }
    }
    a.petals = factors.len();
    if !a.run(Some((BASE, BASE))) {
        return None;
    }
    let path = a.witness_path(BASE, BASE).expect("pair recorded");
    Some(a.factorization_of(&path).factors.into_iter().map(|i| factors[i].clone()).collect())
}

/// Convenience wrapper returning the boolean and optional witness.
pub fn decide(generators: &[ReducedWord]) -> (bool, Option<Factorization>) {
    let f = contains_identity(generators);
    (f.is_some(), f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(items: &[&str]) -> Vec<ReducedWord> {
        items.iter().map(|s| ReducedWord::parse(s).unwrap()).collect()
    }

    #[test]
    fn flower_shapes() {
        let a = build_flower(&ws(&["x"])).unwrap();
        assert_eq!(a.state_count(), 1);
        assert_eq!(a.cycles_at_base(), 1);
        let a = build_flower(&ws(&["xy", "y'"])).unwrap();
        assert_eq!(a.cycles_at_base(), 2);
        assert_eq!(a.state_count(), 2);
        let a = build_flower(&[]).unwrap();
        assert_eq!(a.state_count(), 1);
        assert!(!a.saturate().has_epsilon(BASE, BASE));
        assert!(build_flower(&ws(&["e"])).is_err());
    }

    #[test]
    fn saturation_examples() {
        let a = build_flower(&ws(&["x", "x'"])).unwrap().saturate();
        assert!(a.has_epsilon(BASE, BASE));
        let a = build_flower(&ws(&["x"])).unwrap().saturate();
        assert_eq!(a.epsilon_count(), 0);
        let a = build_flower(&ws(&["xxy", "y'x'", "x'"])).unwrap().saturate();
        assert!(a.has_epsilon(BASE, BASE));
    }

    #[test]
    fn saturation_is_a_fixpoint() {
        let a = build_flower(&ws(&["xxy", "y'x'", "x'", "yx"])).unwrap().saturate();
        let n = a.epsilon_count();
        let b = a.saturate();
        assert_eq!(b.epsilon_count(), n);
    }

    #[test]
    fn membership_examples() {
        let s = ws(&["xy", "y'x'"]);
        let f = contains_identity(&s).unwrap();
        assert!(f.verify(&s));
        let mut sorted = f.factors.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1]);
        assert!(contains_identity(&ws(&["x"])).is_none());
        let s = ws(&["xx", "yy", "x'y'", "xy'", "x'y", "xy", "x'"]);
        assert!(contains_identity(&s).unwrap().verify(&s));
        let s = ws(&["x", "e"]);
        assert_eq!(contains_identity(&s).unwrap().factors, vec![1]);
        assert!(contains_identity(&[]).is_none());
    }

    #[test]
    fn needs_interleaved_cancellation() {
        // x y · y' x' · ... requires cancellation across two petals
        let s = ws(&["x y", "y' y' x'", "y"]);
        let f = contains_identity(&s).unwrap();
        assert!(f.verify(&s));
    }
}
