//! Abelian ℓ-group validity via the Gordan alternative.
//!
//! For abelianized words `v₁..vₙ ∈ ℤᵏ`, exactly one of the following holds:
//!
//! * `Σ λᵢ vᵢ = 0` for some `λ ∈ ℕⁿ ∖ {0}` (the join is valid), or
//! * `y · vᵢ < 0` for all `i`, for some `y ∈ ℤᵏ` (evaluating generator `j` as
//!   `yⱼ` in ℤ makes every joinand negative).
//!
//! Both sides come out of one exact Fourier–Motzkin run over
//! `{ Aλ = 0, Σλ = 1, λ ≥ 0 }`: a feasible point is scaled to integers, and an
//! infeasibility proof carries the multipliers from which `y` is read.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::freegroup::ReducedWord;

/// Signed generator counts of an abelianized word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn of(word: &ReducedWord, arity: usize) -> Self {
        ExponentVector(word.abelianize(arity))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn dot(&self, y: &[i64]) -> i64 {
        self.0.iter().zip(y).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "side", rename_all = "kebab-case")]
pub enum GordanCertificate {
    /// Nonnegative, not-all-zero multipliers with `Σ λᵢ vᵢ = 0`.
    Combination { lambda: Vec<u64> },
    /// `y · vᵢ < 0` for every input vector.
    Separator { y: Vec<i64> },
}

impl GordanCertificate {
    pub fn verify(&self, vectors: &[ExponentVector]) -> bool {
        match self {
            GordanCertificate::Combination { lambda } => {
                if lambda.len() != vectors.len() || lambda.iter().all(|&l| l == 0) {
                    return false;
                }
                let k = vectors.first().map_or(0, |v| v.arity());
                (0..k).all(|j| {
                    vectors.iter().zip(lambda).map(|(v, &l)| v.0[j] as i128 * l as i128).sum::<i128>() == 0
                })
            }
            GordanCertificate::Separator { y } => vectors.iter().all(|v| v.arity() == y.len() && v.dot(y) < 0),
        }
    }

    pub fn is_combination(&self) -> bool {
        matches!(self, GordanCertificate::Combination { .. })
    }
}

/// Decides which side of the alternative holds and returns its certificate.
///
/// # Panics
/// If `vectors` is empty or arities differ.
pub fn decide_abelian(vectors: &[ExponentVector]) -> GordanCertificate {
    assert!(!vectors.is_empty(), "at least one vector is required");
    let k = vectors[0].arity();
    assert!(vectors.iter().all(|v| v.arity() == k), "vectors must share one arity");

    if let Some(i) = vectors.iter().position(|v| v.is_zero()) {
        let mut lambda = vec![0; vectors.len()];
        lambda[i] = 1;
        return GordanCertificate::Combination { lambda };
    }

    let cert = match eliminate(vectors) {
        Elimination::Feasible(point) => {
            GordanCertificate::Combination { lambda: integer_ray(&point).into_iter().map(|v| v.to_u64().expect("fits")).collect() }
        }
        Elimination::Infeasible(y) => {
            let y = integer_ray(&y).into_iter().map(|v| v.to_i64().expect("fits")).collect();
            GordanCertificate::Separator { y }
        }
    };
    assert!(cert.verify(vectors), "elimination produced an unverifiable certificate: {cert:?}");
    cert
}

/// Scales a rational vector to a primitive integer vector with the same direction.
fn integer_ray(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Eq,
    Ge,
}

/// `coeffs · λ (= | ≥) rhs`, with `origin` the multipliers of the original
/// rows that combine to it.
#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
    kind: Kind,
    origin: Vec<BigRational>,
}

impl Row {
    fn scaled(&self, c: &BigRational) -> Row {
        Row {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            rhs: &self.rhs * c,
            kind: self.kind,
            origin: self.origin.iter().map(|a| a * c).collect(),
        }
    }

    fn add(&self, other: &Row, kind: Kind) -> Row {
        Row {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            rhs: &self.rhs + &other.rhs,
            kind,
            origin: self.origin.iter().zip(&other.origin).map(|(a, b)| a + b).collect(),
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Normalizes so the first nonzero coefficient has absolute value 1.
    fn normalized_key(&self) -> Option<(Vec<BigRational>, BigRational, bool)> {
        let lead = self.coeffs.iter().find(|c| !c.is_zero())?.abs();
        Some((self.coeffs.iter().map(|c| c / &lead).collect(), &self.rhs / &lead, self.kind == Kind::Eq))
    }
}

enum Step {
    /// `var = -(Σ others + ... - rhs) / c` from an equality row.
    Substituted { var: usize, row: Row },
    /// Lower and upper bound rows on `var` at the time it was projected out.
    Projected { var: usize, bounds: Vec<Row> },
}

enum Elimination {
    Feasible(Vec<BigRational>),
    Infeasible(Vec<BigRational>),
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn eliminate(vectors: &[ExponentVector]) -> Elimination {
    let n = vectors.len();
    let k = vectors[0].arity();
    // Original rows: k equalities (Aλ = 0), n bounds (λᵢ ≥ 0), Σλ = 1.
    let originals = k + n + 1;
    let unit = |i: usize| {
        let mut o = vec![BigRational::zero(); originals];
        o[i] = BigRational::one();
        o
    };
    let mut rows = Vec::new();
    for j in 0..k {
        rows.push(Row { coeffs: vectors.iter().map(|v| rat(v.0[j])).collect(), rhs: BigRational::zero(), kind: Kind::Eq, origin: unit(j) });
    }
    for i in 0..n {
        let mut coeffs = vec![BigRational::zero(); n];
        coeffs[i] = BigRational::one();
        rows.push(Row { coeffs, rhs: BigRational::zero(), kind: Kind::Ge, origin: unit(k + i) });
    }
    rows.push(Row { coeffs: vec![BigRational::one(); n], rhs: BigRational::one(), kind: Kind::Eq, origin: unit(k + n) });

    let mut steps = Vec::new();
    for var in (0..n).rev() {
        if let Some(pos) = rows.iter().position(|r| r.kind == Kind::Eq && !r.coeffs[var].is_zero()) {
            let pivot = rows.swap_remove(pos);
            let c = pivot.coeffs[var].clone();
            rows = rows
                .into_iter()
                .map(|r| {
                    if r.coeffs[var].is_zero() {
                        r
                    } else {
                        let f = -(&r.coeffs[var] / &c);
                        let kind = r.kind;
                        r.add(&pivot.scaled(&f), kind)
                    }
                })
                .collect();
            steps.push(Step::Substituted { var, row: pivot });
        } else {
            let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for r in rows {
                if r.coeffs[var].is_positive() {
                    lower.push(r);
                } else if r.coeffs[var].is_negative() {
                    upper.push(r);
                } else {
                    rest.push(r);
                }
            }
            for lo in &lower {
                for up in &upper {
                    let a = lo.scaled(&(BigRational::one() / &lo.coeffs[var]));
                    let b = up.scaled(&(BigRational::one() / -&up.coeffs[var]));
                    rest.push(a.add(&b, Kind::Ge));
                }
            }
            let mut bounds = lower;
            bounds.extend(upper);
            steps.push(Step::Projected { var, bounds });
            rows = dedup(rest);
        }
        rows.retain(|r| !(r.is_trivial() && r.rhs.is_zero()));
        if let Some(bad) = rows.iter().find(|r| {
            r.is_trivial() && match r.kind {
                Kind::Eq => !r.rhs.is_zero(),
                Kind::Ge => r.rhs.is_positive(),
            }
        }) {
            return Elimination::Infeasible(separator_from(bad, k));
        }
    }

    // Back-substitution in reverse elimination order.
    let mut point = vec![BigRational::zero(); n];
    for step in steps.iter().rev() {
        match step {
            Step::Substituted { var, row } => {
                let mut acc = row.rhs.clone();
                for (j, c) in row.coeffs.iter().enumerate() {
                    if j != *var {
                        acc -= c * &point[j];
                    }
                }
                point[*var] = acc / &row.coeffs[*var];
            }
            Step::Projected { var, bounds } => {
                let mut lo: Option<BigRational> = None;
                let mut hi: Option<BigRational> = None;
                for r in bounds {
                    let mut rest = r.rhs.clone();
                    for (j, c) in r.coeffs.iter().enumerate() {
                        if j != *var {
                            rest -= c * &point[j];
                        }
                    }
                    let bound = rest / &r.coeffs[*var];
                    if r.coeffs[*var].is_positive() {
                        lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
                    } else {
                        hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
                    }
                }
                point[*var] = lo.or(hi).unwrap_or_else(BigRational::zero);
            }
        }
    }
    Elimination::Feasible(point)
}

fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut seen = std::collections::HashSet::new();
    rows.into_iter().filter(|r| r.normalized_key().is_none_or(|key| seen.insert(key))).collect()
}

/// Reads `y` off the multipliers of a contradictory row `0 (=|≥) c`.
///
/// With `w` the origin multipliers (sign-normalized so that `c > 0`), the
/// equality multipliers `y` satisfy `y·vᵢ = -μᵢ - ν` where `μᵢ ≥ 0` and
/// `ν = c > 0`, so every `y·vᵢ` is negative.
fn separator_from(row: &Row, k: usize) -> Vec<BigRational> {
    let flip = row.rhs.is_negative();
    row.origin[..k].iter().map(|w| if flip { -w } else { w.clone() }).collect()
}

/// Verdict-level helper: abelianizes `words` over `arity` generators and decides.
pub fn decide_words(words: &[ReducedWord], arity: usize) -> (Vec<ExponentVector>, GordanCertificate) {
    let vectors: Vec<ExponentVector> = words.iter().map(|w| ExponentVector::of(w, arity.max(1))).collect();
    let cert = decide_abelian(&vectors);
    (vectors, cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(items: &[&[i64]]) -> Vec<ExponentVector> {
        items.iter().map(|v| ExponentVector(v.to_vec())).collect()
    }

    #[test]
    fn combination_examples() {
        assert_eq!(
            decide_abelian(&vs(&[&[2, 0], &[0, 2], &[-1, -1]])),
            GordanCertificate::Combination { lambda: vec![1, 1, 2] }
        );
        assert_eq!(decide_abelian(&vs(&[&[1], &[-1]])), GordanCertificate::Combination { lambda: vec![1, 1] });
    }

    #[test]
    fn separator_examples() {
        assert_eq!(decide_abelian(&vs(&[&[1, 0]])), GordanCertificate::Separator { y: vec![-1, 0] });
        let c = decide_abelian(&vs(&[&[1, 2], &[3, -1]]));
        assert!(matches!(c, GordanCertificate::Separator { .. }));
    }

    #[test]
    fn zero_vector_forces_indicator() {
        assert_eq!(decide_abelian(&vs(&[&[1, 1], &[0, 0]])), GordanCertificate::Combination { lambda: vec![0, 1] });
    }

    #[test]
    fn verify_rejects_bad_certificates() {
        let v = vs(&[&[1, 0], &[-1, 0]]);
        assert!(!GordanCertificate::Combination { lambda: vec![0, 0] }.verify(&v));
        assert!(!GordanCertificate::Combination { lambda: vec![1, 2] }.verify(&v));
        assert!(!GordanCertificate::Separator { y: vec![-1, 0] }.verify(&v));
    }
}
