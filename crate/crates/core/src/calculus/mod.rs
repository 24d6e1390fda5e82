//! Hypersequent calculi: syntax, a proof checker, and proof extraction from
//! decision certificates.
//!
//! Sequents are identified with reduced words and hypersequents with finite
//! sets of them; rule instances carry raw literal blocks, which the checker
//! reduces before matching.

pub mod check;
pub mod extract;
pub mod syntax;

pub use check::{check, check_all, check_node, CheckError, CheckErrorKind};
pub use extract::{admissible_ew_expand, derive_ga, derive_ga_blocks, derive_glgstar, derive_grgstar};
pub use syntax::{rule_name, CalculusId, Derivation, Hypersequent, Lits, RuleInstance, RuleTag, Sequent};
