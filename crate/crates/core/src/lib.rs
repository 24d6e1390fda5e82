//! Decision procedures and proof certificates for equations in abelian
//! ℓ-groups, ℓ-groups and representable ℓ-groups, by reduction to order
//! extension problems in free groups.

pub mod abelian;
pub mod calculus;
pub mod certificate;
pub mod crosscheck;
pub mod decide;
pub mod error;
pub mod freegroup;
pub mod membership;
pub mod par;
pub mod rightorder;
pub mod sampling;
pub mod term;

pub use decide::{
    decide_goal, decide_lg_cs, decide_lg_hm, decide_rg, decide_words, validity_abelian, DecideOptions, LgProcedure, Proof,
    Status, Variety, Verdict, Witness,
};
pub use error::{Error, ParseError, Result};
pub use freegroup::{Literal, ReducedWord, Sign};
pub use par::Execution;
