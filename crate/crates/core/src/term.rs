//! ℓ-group terms: parsing, inverse pushing and meet-of-joins normalization.
//!
//! Grammar (whitespace insensitive, inverse binds tightest):
//!
//! ```text
//! term := meet
//! meet := join ("/\" join)*
//! join := prod ("\/" prod)*
//! prod := atom ("*"? atom)*
//! atom := "e" | lit | "(" term ")" | atom "'"
//! lit  := letter digit*
//! ```
//!
//! An apostrophe directly after a literal flips its sign (`x''` is `x`); after
//! any other atom it builds an [`Term::Inverse`] node.

use std::fmt;

use crate::calculus::Sequent;
use crate::error::ParseError;
use crate::freegroup::{lex_bare_literal, parse_literals, Literal, ReducedWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Identity,
    Literal(Literal),
    Product(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Inverse(Box<Term>),
}

impl Term {
    pub fn lit(l: Literal) -> Term {
        Term::Literal(l)
    }

    pub fn product(a: Term, b: Term) -> Term {
        Term::Product(Box::new(a), Box::new(b))
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn inverse(a: Term) -> Term {
        Term::Inverse(Box::new(a))
    }

    /// The group term `ℓ₁ · … · ℓₙ` of a literal sequence (`e` when empty).
    pub fn from_literals(lits: &[Literal]) -> Term {
        let mut iter = lits.iter();
        match iter.next() {
            None => Term::Identity,
            Some(&first) => iter.fold(Term::Literal(first), |acc, &l| Term::product(acc, Term::Literal(l))),
        }
    }

    pub fn max_generator(&self) -> u32 {
        match self {
            Term::Identity => 0,
            Term::Literal(l) => l.generator,
            Term::Inverse(a) => a.max_generator(),
            Term::Product(a, b) | Term::Meet(a, b) | Term::Join(a, b) => a.max_generator().max(b.max_generator()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Identity | Term::Literal(_) => 0,
            Term::Inverse(a) => 1 + a.depth(),
            Term::Product(a, b) | Term::Meet(a, b) | Term::Join(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Evaluation in the ℓ-group ℤ; generator `i` takes `assignment[i - 1]`.
    pub fn eval_z(&self, assignment: &[i64]) -> i64 {
        match self {
            Term::Identity => 0,
            Term::Literal(l) => l.sign.as_i64() * assignment[l.generator as usize - 1],
            Term::Product(a, b) => a.eval_z(assignment) + b.eval_z(assignment),
            Term::Meet(a, b) => a.eval_z(assignment).min(b.eval_z(assignment)),
            Term::Join(a, b) => a.eval_z(assignment).max(b.eval_z(assignment)),
            Term::Inverse(a) => -a.eval_z(assignment),
        }
    }
}

/// Value of a group word in ℤ.
pub fn eval_word_z(lits: &[Literal], assignment: &[i64]) -> i64 {
    lits.iter().map(|l| l.sign.as_i64() * assignment[l.generator as usize - 1]).sum()
}

pub fn parse_term(text: &str, arity: usize) -> Result<Term, ParseError> {
    let mut p = Parser { text, pos: 0, arity: Some(arity) };
    p.parse_complete()
}

/// Parses a term and reports the arity it uses (largest generator index).
pub fn parse_term_infer(text: &str) -> Result<(Term, usize), ParseError> {
    let mut p = Parser { text, pos: 0, arity: None };
    let t = p.parse_complete()?;
    let k = t.max_generator() as usize;
    Ok((t, k))
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    arity: Option<usize>,
}

impl<'a> Parser<'a> {
    fn parse_complete(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        if self.pos >= self.text.len() {
            return Err(ParseError::Empty);
        }
        let t = self.meet()?;
        self.skip_ws();
        if self.pos < self.text.len() {
            return Err(self.unexpected());
        }
        Ok(t)
    }

    fn bytes(&self) -> &'a [u8] {
        self.text.as_bytes()
    }

    fn skip_ws(&mut self) {
        while self.bytes().get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.text[self.pos..].chars().next() {
            Some(c) => ParseError::Unexpected { pos: self.pos, found: c.to_string() },
            None => ParseError::UnexpectedEnd { pos: self.pos },
        }
    }

    fn meet(&mut self) -> Result<Term, ParseError> {
        let mut t = self.join()?;
        while self.eat("/\\") {
            t = Term::meet(t, self.join()?);
        }
        Ok(t)
    }

    fn join(&mut self) -> Result<Term, ParseError> {
        let mut t = self.prod()?;
        while self.eat("\\/") {
            t = Term::join(t, self.prod()?);
        }
        Ok(t)
    }

    fn prod(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        loop {
            if self.eat("*") {
                t = Term::product(t, self.atom()?);
                continue;
            }
            self.skip_ws();
            match self.bytes().get(self.pos) {
                Some(b) if b.is_ascii_alphabetic() || *b == b'(' => {
                    t = Term::product(t, self.atom()?);
                }
                _ => return Ok(t),
            }
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let (mut t, mut bare) = match self.bytes().get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.meet()?;
                if !self.eat(")") {
                    self.skip_ws();
                    return Err(self.unexpected());
                }
                (inner, false)
            }
            Some(b'e') if !self.bytes().get(self.pos + 1).is_some_and(|b| b.is_ascii_digit()) => {
                self.pos += 1;
                (Term::Identity, false)
            }
            Some(_) => {
                let (lit, next) = lex_bare_literal(self.text, self.pos)?;
                if let Some(k) = self.arity {
                    if lit.generator as usize > k {
                        return Err(ParseError::ArityExceeded {
                            pos: start,
                            name: self.text[start..next].to_string(),
                            arity: k,
                        });
                    }
                }
                self.pos = next;
                (Term::Literal(lit), true)
            }
            None => return Err(ParseError::UnexpectedEnd { pos: self.pos }),
        };
        while self.bytes().get(self.pos) == Some(&b'\'') {
            self.pos += 1;
            t = match t {
                Term::Literal(l) if bare => Term::Literal(l.inverse()),
                other => {
                    bare = false;
                    Term::inverse(other)
                }
            };
        }
        Ok(t)
    }
}

/// Canonical text for a term; [`parse_term`] reads it back.
///
/// `Inverse` of a literal is printed as the opposite literal, so the round trip
/// identifies the two.
pub fn format_term(t: &Term) -> String {
    fmt_at(t, 0)
}

fn fmt_at(t: &Term, level: u8) -> String {
    let (s, own) = match t {
        Term::Meet(a, b) => (format!("{} /\\ {}", fmt_at(a, 0), fmt_at(b, 1)), 0),
        Term::Join(a, b) => (format!("{} \\/ {}", fmt_at(a, 1), fmt_at(b, 2)), 1),
        Term::Product(a, b) => (format!("{} * {}", fmt_at(a, 2), fmt_at(b, 3)), 2),
        Term::Identity => ("e".to_string(), 3),
        Term::Literal(l) => (l.to_string(), 3),
        Term::Inverse(a) => (format!("{}'", atom_form(a)), 3),
    };
    if own < level {
        format!("({s})")
    } else {
        s
    }
}

fn atom_form(t: &Term) -> String {
    match t {
        Term::Identity | Term::Literal(_) | Term::Inverse(_) => fmt_at(t, 3),
        _ => format!("({})", fmt_at(t, 0)),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_term(self))
    }
}

/// Rewrites `t` with the duality equations so that no `Inverse` node remains;
/// inverses survive only as negative literals.
pub fn push_inverses(t: &Term) -> Term {
    push(t, false)
}

fn push(t: &Term, negate: bool) -> Term {
    match t {
        Term::Identity => Term::Identity,
        Term::Literal(l) => Term::Literal(if negate { l.inverse() } else { *l }),
        Term::Product(a, b) => {
            if negate {
                Term::product(push(b, true), push(a, true))
            } else {
                Term::product(push(a, false), push(b, false))
            }
        }
        Term::Meet(a, b) => {
            let (a, b) = (push(a, negate), push(b, negate));
            if negate { Term::join(a, b) } else { Term::meet(a, b) }
        }
        Term::Join(a, b) => {
            let (a, b) = (push(a, negate), push(b, negate));
            if negate { Term::meet(a, b) } else { Term::join(a, b) }
        }
        Term::Inverse(a) => push(a, !negate),
    }
}

/// A meet of joins of reduced group words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub conjuncts: Vec<Vec<ReducedWord>>,
}

impl NormalForm {
    pub fn eval_z(&self, assignment: &[i64]) -> i64 {
        self.conjuncts
            .iter()
            .map(|c| c.iter().map(|w| eval_word_z(w.literals(), assignment)).max().expect("nonempty conjunct"))
            .min()
            .expect("nonempty normal form")
    }
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// Distributes to a meet of joins: `∨` is pushed over `·` first, then `∧` is
/// moved outward. Duplicate joinands in a conjunct are dropped.
pub fn normalize(t: &Term) -> NormalForm {
    NormalForm { conjuncts: nf(&push_inverses(t)) }
}

fn nf(t: &Term) -> Vec<Vec<ReducedWord>> {
    match t {
        Term::Identity => vec![vec![ReducedWord::identity()]],
        Term::Literal(l) => vec![vec![ReducedWord::from_literal(*l)]],
        Term::Inverse(_) => unreachable!("inverses are pushed before normalizing"),
        Term::Meet(a, b) => {
            let mut out = nf(a);
            for c in nf(b) {
                push_unique(&mut out, c);
            }
            out
        }
        Term::Join(a, b) => {
            let (a, b) = (nf(a), nf(b));
            let mut out = Vec::new();
            for ca in &a {
                for cb in &b {
                    let mut joined = ca.clone();
                    for w in cb {
                        push_unique(&mut joined, w.clone());
                    }
                    push_unique(&mut out, joined);
                }
            }
            out
        }
        Term::Product(a, b) => {
            let (a, b) = (nf(a), nf(b));
            let mut out = Vec::new();
            for ca in &a {
                for cb in &b {
                    let mut prod = Vec::new();
                    for u in ca {
                        for v in cb {
                            push_unique(&mut prod, u.mul(v));
                        }
                    }
                    push_unique(&mut out, prod);
                }
            }
            out
        }
    }
}

/// The sequent of a reduced word, with the word itself as raw certificate.
pub fn sequent_of(w: &ReducedWord) -> Sequent {
    Sequent::from_word(w.clone())
}

/// A decision goal as typed by a user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Goal {
    /// `Γ₁ | … | Γₙ`, i.e. `e ≤ Γ₁ ∨ … ∨ Γₙ`.
    Hypersequent(Vec<Sequent>),
    /// `e <= t` for an arbitrary ℓ-group term.
    Term(Term),
}

impl Goal {
    /// Conjuncts to decide independently: each is a list of joinands.
    pub fn conjuncts(&self) -> Vec<Vec<ReducedWord>> {
        match self {
            Goal::Hypersequent(seqs) => {
                let mut words = Vec::new();
                for s in seqs {
                    push_unique(&mut words, s.word.clone());
                }
                vec![words]
            }
            Goal::Term(t) => normalize(t).conjuncts,
        }
    }

    pub fn max_generator(&self) -> u32 {
        match self {
            Goal::Hypersequent(seqs) => seqs.iter().map(|s| s.word.max_generator()).max().unwrap_or(0),
            Goal::Term(t) => t.max_generator(),
        }
    }

    /// Evaluation of the goal's right-hand side in ℤ.
    pub fn eval_z(&self, assignment: &[i64]) -> i64 {
        match self {
            Goal::Hypersequent(seqs) => {
                seqs.iter().map(|s| eval_word_z(s.word.literals(), assignment)).max().unwrap_or(0)
            }
            Goal::Term(t) => t.eval_z(assignment),
        }
    }
}

/// Reads `Γ₁ | … | Γₙ` (literals juxtaposed or separated by spaces/commas) or
/// `e <= term`. With `arity = Some(k)`, generators above `k` are rejected.
pub fn parse_goal(text: &str, arity: Option<usize>) -> Result<Goal, ParseError> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    if let Some(rest) = trimmed.strip_prefix('e') {
        let rest_trim = rest.trim_start();
        if let Some(term_text) = rest_trim.strip_prefix("<=") {
            let base = offset + 1 + (rest.len() - rest_trim.len()) + 2;
            let mut p = Parser { text: term_text, pos: 0, arity };
            let t = p.parse_complete().map_err(|e| shift(e, base))?;
            return Ok(Goal::Term(t));
        }
    }
    let mut sequents = Vec::new();
    let mut start = 0;
    for piece in text.split('|') {
        let raw = parse_literals(piece).map_err(|e| shift(e, start))?;
        if let Some(k) = arity {
            check_arity(&raw, k, start, piece)?;
        }
        sequents.push(Sequent::from_raw(raw));
        start += piece.len() + 1;
    }
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(Goal::Hypersequent(sequents))
}

/// Reads a list of words separated by `,` or `|`.
pub fn parse_word_list(text: &str, arity: Option<usize>) -> Result<Vec<ReducedWord>, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut out = Vec::new();
    let mut start = 0;
    for piece in text.split([',', '|']) {
        let raw = parse_literals(piece).map_err(|e| shift(e, start))?;
        if let Some(k) = arity {
            check_arity(&raw, k, start, piece)?;
        }
        out.push(ReducedWord::reduce(raw));
        start += piece.len() + 1;
    }
    Ok(out)
}

fn check_arity(raw: &[Literal], k: usize, start: usize, piece: &str) -> Result<(), ParseError> {
    if let Some(l) = raw.iter().find(|l| l.generator as usize > k) {
        return Err(ParseError::ArityExceeded { pos: start, name: format!("{} in `{}`", l, piece.trim()), arity: k });
    }
    Ok(())
}

fn shift(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::Unexpected { pos, found } => ParseError::Unexpected { pos: pos + by, found },
        ParseError::UnexpectedEnd { pos } => ParseError::UnexpectedEnd { pos: pos + by },
        ParseError::UnknownGenerator { pos, name } => ParseError::UnknownGenerator { pos: pos + by, name },
        ParseError::ArityExceeded { pos, name, arity } => ParseError::ArityExceeded { pos: pos + by, name, arity },
        ParseError::Empty => ParseError::Empty,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Sign;
    use proptest::prelude::*;

    fn x() -> Term {
        Term::lit(Literal::pos(1))
    }
    fn y() -> Term {
        Term::lit(Literal::pos(2))
    }
    fn z() -> Term {
        Term::lit(Literal::pos(3))
    }
    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_term("e", 1).unwrap(), Term::Identity);
        assert_eq!(parse_term("x * y'", 2).unwrap(), Term::product(x(), Term::lit(Literal::neg(2))));
        assert_eq!(parse_term("(x \\/ y) /\\ e", 2).unwrap(), Term::meet(Term::join(x(), y()), Term::Identity));
        assert_eq!(parse_term("x''", 1).unwrap(), x());
        assert_eq!(parse_term("(x)'", 1).unwrap(), Term::inverse(x()));
        assert_eq!(parse_term("x y", 2).unwrap(), Term::product(x(), y()));
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(parse_term("x * ", 1), Err(ParseError::UnexpectedEnd { pos: 4 }));
        assert!(matches!(parse_term("x * y", 1), Err(ParseError::ArityExceeded { pos: 4, .. })));
        assert!(matches!(parse_term("(x", 1), Err(ParseError::UnexpectedEnd { pos: 2 })));
        assert!(matches!(parse_term("x )", 1), Err(ParseError::Unexpected { pos: 2, .. })));
        assert_eq!(parse_term("  ", 1), Err(ParseError::Empty));
    }

    #[test]
    fn push_inverse_examples() {
        let xi = Term::lit(Literal::neg(1));
        let yi = Term::lit(Literal::neg(2));
        assert_eq!(push_inverses(&Term::inverse(Term::meet(x(), y()))), Term::join(xi.clone(), yi.clone()));
        assert_eq!(push_inverses(&Term::inverse(Term::product(x(), y()))), Term::product(yi, xi));
        assert_eq!(push_inverses(&Term::inverse(Term::inverse(x()))), x());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&x()).conjuncts, vec![vec![w("x")]]);
        let t = Term::meet(Term::join(Term::product(x(), x()), Term::product(y(), y())), z());
        assert_eq!(normalize(&t).conjuncts, vec![vec![w("xx"), w("yy")], vec![w("z")]]);
        let t = Term::product(Term::join(x(), y()), z());
        assert_eq!(normalize(&t).conjuncts, vec![vec![w("xz"), w("yz")]]);
    }

    #[test]
    fn normalize_distribution_agrees_in_z() {
        // (x ∨ y)·z against xz ∨ yz over {-2..2}^3
        let t = Term::product(Term::join(x(), y()), z());
        let n = normalize(&t);
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let asg = [a, b, c];
                    assert_eq!(t.eval_z(&asg), n.eval_z(&asg));
                }
            }
        }
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_term(&Term::product(x(), Term::inverse(y()))), "x * y'");
        assert_eq!(format_term(&parse_term("e", 1).unwrap()), "e");
        let t = parse_term("(x \\/ y) /\\ z", 3).unwrap();
        assert_eq!(parse_term(&format_term(&t), 3).unwrap(), t);
        assert_eq!(format_term(&Term::inverse(Term::Identity)), "e'");
    }

    #[test]
    fn goal_parsing() {
        let g = parse_goal("xx | yy | x'y'", None).unwrap();
        assert_eq!(g.conjuncts(), vec![vec![w("xx"), w("yy"), w("x' y'")]]);
        let g = parse_goal("x' y' x y", None).unwrap();
        assert_eq!(g.conjuncts(), vec![vec![w("x' y' x y")]]);
        let g = parse_goal("x, y | e", None).unwrap();
        assert_eq!(g.conjuncts(), vec![vec![w("xy"), w("e")]]);
        let g = parse_goal("e <= (x \\/ x') /\\ y", None).unwrap();
        assert_eq!(g.conjuncts(), vec![vec![w("x"), w("x'")], vec![w("y")]]);
        assert!(matches!(parse_goal("x | y", Some(1)), Err(ParseError::ArityExceeded { .. })));
        assert!(matches!(parse_goal("x | q", None), Err(ParseError::UnknownGenerator { pos: 4, .. })));
    }

    /// Folds `Inverse(Literal ℓ)` into `Literal(ℓ⁻¹)`, the identification the
    /// printer makes.
    fn fold_literal_inverses(t: &Term) -> Term {
        match t {
            Term::Inverse(a) => match fold_literal_inverses(a) {
                Term::Literal(l) => Term::Literal(l.inverse()),
                other => Term::inverse(other),
            },
            Term::Product(a, b) => Term::product(fold_literal_inverses(a), fold_literal_inverses(b)),
            Term::Meet(a, b) => Term::meet(fold_literal_inverses(a), fold_literal_inverses(b)),
            Term::Join(a, b) => Term::join(fold_literal_inverses(a), fold_literal_inverses(b)),
            other => other.clone(),
        }
    }

    pub(crate) fn arb_term(k: u32, depth: u32) -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            1 => Just(Term::Identity),
            4 => (1..=k, any::<bool>()).prop_map(|(g, p)| Term::lit(Literal::new(g, if p { Sign::Plus } else { Sign::Minus }))),
        ];
        leaf.prop_recursive(depth, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::product(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::join(a, b)),
                inner.prop_map(Term::inverse),
            ]
        })
    }

    fn has_inverse_node(t: &Term) -> bool {
        match t {
            Term::Inverse(_) => true,
            Term::Identity | Term::Literal(_) => false,
            Term::Product(a, b) | Term::Meet(a, b) | Term::Join(a, b) => has_inverse_node(a) || has_inverse_node(b),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn push_inverses_idempotent_and_inverse_free(t in arb_term(3, 5)) {
            let p = push_inverses(&t);
            prop_assert!(!has_inverse_node(&p));
            prop_assert_eq!(push_inverses(&p), p);
        }

        #[test]
        fn normalize_preserves_z_semantics(t in arb_term(3, 5)) {
            prop_assume!(t.depth() <= 5);
            let n = normalize(&t);
            prop_assert!(!n.conjuncts.is_empty());
            for c in &n.conjuncts {
                prop_assert!(!c.is_empty());
                for w in c {
                    prop_assert_eq!(&ReducedWord::reduce(w.literals().to_vec()), w);
                }
            }
            for a in -2..=2i64 { for b in -2..=2i64 { for c in -2..=2i64 {
                let asg = [a, b, c];
                prop_assert_eq!(t.eval_z(&asg), n.eval_z(&asg));
            }}}
        }

        #[test]
        fn format_round_trips(t in arb_term(5, 5)) {
            let text = format_term(&t);
            let back = parse_term(&text, 5).unwrap();
            prop_assert_eq!(back, fold_literal_inverses(&t));
        }
    }
}
