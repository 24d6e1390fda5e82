//! Seeded evaluation of goals in ℤ, a cheap soundness probe: ℤ is an abelian
//! o-group, so anything valid in one of the three varieties is valid there.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::freegroup::ReducedWord;
use crate::par::{self, Execution};
use crate::term::eval_word_z;

pub const SEED_VAR: &str = "ORDCALC_SEED";
pub const DEFAULT_SEED: u64 = 0x5eed;

/// `ORDCALC_SEED` if set and numeric, else a fixed default.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// `count` assignments with entries in `[-range, range]`.
pub fn assignments(arity: usize, count: usize, range: i64, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..arity).map(|_| rng.gen_range(-range..=range)).collect()).collect()
}

/// Value of `e ≤ w₁ ∨ … ∨ wₙ`'s right-hand side.
pub fn join_value(words: &[ReducedWord], assignment: &[i64]) -> i64 {
    words.iter().map(|w| eval_word_z(w.literals(), assignment)).max().unwrap_or(i64::MIN)
}

/// Number of sampled assignments under which `value` is negative.
pub fn violations<F>(value: F, arity: usize, count: usize, seed: u64, exec: Execution) -> usize
where
    F: Fn(&[i64]) -> i64 + Sync + Send,
{
    let samples = assignments(arity, count, 10, seed);
    par::map(&samples, exec, |a| value(a) < 0).into_iter().filter(|&bad| bad).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_samples_repeat() {
        assert_eq!(assignments(3, 5, 10, 7), assignments(3, 5, 10, 7));
        assert_ne!(assignments(3, 5, 10, 7), assignments(3, 5, 10, 8));
    }

    #[test]
    fn join_of_a_letter_and_its_inverse_is_never_negative() {
        let words = vec![ReducedWord::parse("x").unwrap(), ReducedWord::parse("x'").unwrap()];
        assert_eq!(violations(|a| join_value(&words, a), 1, 1000, 1, Execution::Sequential), 0);
        let single = vec![ReducedWord::parse("x").unwrap()];
        assert!(violations(|a| join_value(&single, a), 1, 1000, 1, Execution::Sequential) > 0);
    }
}
