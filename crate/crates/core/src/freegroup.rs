//! Exact arithmetic in the free group F(k).
//!
//! Elements are stored as cancellation-free literal sequences. Every
//! constructor reduces, so a [`ReducedWord`] is always in normal form and
//! structural equality is group equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// Sign of a literal: `Plus` is the generator, `Minus` its inverse.
///
/// `Plus < Minus`, which fixes the ShortLex tie-break.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A generator `x_i` (`i >= 1`) or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub generator: u32,
    pub sign: Sign,
}

impl Literal {
    pub fn new(generator: u32, sign: Sign) -> Self {
        debug_assert!(generator >= 1, "generator indices start at 1");
        Literal { generator, sign }
    }

    pub fn pos(generator: u32) -> Self {
        Literal::new(generator, Sign::Plus)
    }

    pub fn neg(generator: u32) -> Self {
        Literal::new(generator, Sign::Minus)
    }

    pub fn inverse(self) -> Self {
        Literal { generator: self.generator, sign: self.sign.flip() }
    }

    pub fn cancels(self, other: Literal) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }
}

/// Name of generator `i`: `x`, `y`, `z` for 1..=3, `x<i>` beyond.
pub fn generator_name(generator: u32) -> String {
    match generator {
        1 => "x".to_string(),
        2 => "y".to_string(),
        3 => "z".to_string(),
        n => format!("x{n}"),
    }
}

/// Inverse of [`generator_name`]. `x1`, `x2`, `x3` are accepted as aliases.
pub fn generator_index(name: &str) -> Option<u32> {
    match name {
        "x" => Some(1),
        "y" => Some(2),
        "z" => Some(3),
        _ => {
            let digits = name.strip_prefix('x')?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            digits.parse::<u32>().ok().filter(|&n| n >= 1)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&generator_name(self.generator))?;
        if self.sign == Sign::Minus {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// Formats a raw (possibly unreduced) literal sequence; the empty sequence is `e`.
pub fn format_literals(lits: &[Literal]) -> String {
    if lits.is_empty() {
        return "e".to_string();
    }
    let parts: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
    parts.join(" ")
}

/// Parses a literal sequence without reducing it.
///
/// Literals may be juxtaposed (`xy'`) or separated by whitespace, `*` or `,`.
/// A standalone `e` denotes the empty sequence.
pub fn parse_literals(text: &str) -> Result<Vec<Literal>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() || c == b'*' || c == b',' {
            i += 1;
            continue;
        }
        if c == b'e' && !bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit()) {
            i += 1;
            if bytes.get(i) == Some(&b'\'') {
                // e' = e
                while bytes.get(i) == Some(&b'\'') {
                    i += 1;
                }
            }
            continue;
        }
        let (lit, next) = lex_literal(text, i)?;
        out.push(lit);
        i = next;
    }
    Ok(out)
}

/// Lexes `letter digit* '*` starting at byte `start`; returns the literal and
/// the position after it.
pub(crate) fn lex_literal(text: &str, start: usize) -> Result<(Literal, usize), ParseError> {
    let (lit, mut i) = lex_bare_literal(text, start)?;
    let bytes = text.as_bytes();
    let mut lit = lit;
    while bytes.get(i) == Some(&b'\'') {
        lit = lit.inverse();
        i += 1;
    }
    Ok((lit, i))
}

/// Lexes `letter digit*` without trailing apostrophes.
pub(crate) fn lex_bare_literal(text: &str, start: usize) -> Result<(Literal, usize), ParseError> {
    let bytes = text.as_bytes();
    match bytes.get(start) {
        Some(c) if c.is_ascii_alphabetic() => {}
        Some(_) => {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(ParseError::Unexpected { pos: start, found: ch.to_string() });
        }
        None => return Err(ParseError::UnexpectedEnd { pos: start }),
    }
    let mut i = start + 1;
    while bytes.get(i).is_some_and(|b| b.is_ascii_digit()) {
        i += 1;
    }
    let name = &text[start..i];
    let generator = generator_index(name)
        .ok_or_else(|| ParseError::UnknownGenerator { pos: start, name: name.to_string() })?;
    Ok((Literal::pos(generator), i))
}

/// An element of F(k) as a cancellation-free literal sequence.
///
/// Ordered ShortLex: by length, then literal by literal (generator index,
/// then `+` before `-`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ReducedWord(Vec<Literal>);

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord(Vec::new())
    }

    pub fn from_literal(lit: Literal) -> Self {
        ReducedWord(vec![lit])
    }

    /// Free reduction of an arbitrary literal sequence.
    pub fn reduce<I: IntoIterator<Item = Literal>>(lits: I) -> Self {
        let mut stack: Vec<Literal> = Vec::new();
        for lit in lits {
            match stack.last() {
                Some(&top) if top.cancels(lit) => {
                    stack.pop();
                }
                _ => stack.push(lit),
            }
        }
        ReducedWord(stack)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn into_literals(self) -> Vec<Literal> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        // Cancel at the seam only; both factors are already reduced.
        let mut common = 0;
        let a = &self.0;
        let b = &other.0;
        while common < a.len() && common < b.len() && a[a.len() - 1 - common].cancels(b[common]) {
            common += 1;
        }
        let mut out = Vec::with_capacity(a.len() + b.len() - 2 * common);
        out.extend_from_slice(&a[..a.len() - common]);
        out.extend_from_slice(&b[common..]);
        ReducedWord(out)
    }

    pub fn inv(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `q · self · q⁻¹`, reduced.
    pub fn conjugate_by(&self, q: &ReducedWord) -> ReducedWord {
        q.mul(self).mul(&q.inv())
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> ReducedWord {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut out = ReducedWord::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Largest generator index occurring in the word (0 for `e`).
    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    /// All prefixes, including `e` and the word itself.
    pub fn prefixes(&self) -> impl Iterator<Item = ReducedWord> + '_ {
        (0..=self.0.len()).map(move |i| ReducedWord(self.0[..i].to_vec()))
    }

    /// Signed generator counts; generators above `arity` are ignored.
    pub fn abelianize(&self, arity: usize) -> Vec<i64> {
        let mut v = vec![0i64; arity];
        for lit in &self.0 {
            if let Some(slot) = v.get_mut(lit.generator as usize - 1) {
                *slot += lit.sign.as_i64();
            }
        }
        v
    }

    /// Parses and reduces a word.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_literals(text).map(ReducedWord::reduce)
    }
}

/// `q · t · q⁻¹`, reduced.
pub fn conjugate(q: &ReducedWord, t: &ReducedWord) -> ReducedWord {
    t.conjugate_by(q)
}

impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_literals(&self.0))
    }
}

impl FromStr for ReducedWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReducedWord::parse(s)
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        ReducedWord::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// All literals over `arity` generators in ShortLex order: `x, x', y, y', ...`.
pub fn literals(arity: usize) -> Vec<Literal> {
    (1..=arity as u32).flat_map(|g| [Literal::pos(g), Literal::neg(g)]).collect()
}

/// F_N(k): every reduced word of length at most `radius`, in ShortLex order.
pub fn ball(arity: usize, radius: usize) -> Vec<ReducedWord> {
    let lits = literals(arity);
    let mut out = vec![ReducedWord::identity()];
    let mut frontier = vec![ReducedWord::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &lits {
                if w.0.last().is_some_and(|last| last.cancels(l)) {
                    continue;
                }
                let mut lits = w.0.clone();
                lits.push(l);
                next.push(ReducedWord(lits));
            }
        }
        // Extending ShortLex-sorted words by sorted literals keeps the level sorted.
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Largest generator index over a collection of words.
pub fn arity_of<'a, I: IntoIterator<Item = &'a ReducedWord>>(words: I) -> usize {
    words.into_iter().map(|w| w.max_generator()).max().unwrap_or(0) as usize
}
