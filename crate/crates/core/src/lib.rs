//! Exact-arithmetic realization of tournaments as strict pointwise
//! majorities of voter families closed under candidate relabeling.
//!
//! Given a full generator choice function `d` and a target choice function
//! `c` on the same candidates, the library decides whether `c` arises as the
//! strict pairwise majority of finitely many voters drawn from the orbit of
//! `d` under all relabelings, and constructs a verified integer voter
//! profile whenever the answer is yes. All arithmetic is exact rational;
//! ties are exact, never approximate.
//!
//! The decision rests on two facts checked end to end by the test suite:
//! a family with an unbalanced member majorizes every choice function, and
//! a balanced family majorizes exactly the pseudo-balanced ones (those whose
//! directed edges all lie on directed cycles).

pub mod balance;
pub mod choice;
pub mod config;
pub mod error;
pub mod fileformat;
pub mod generators;
pub mod lp;
pub mod prob;
pub mod profile;
pub mod realize;
pub mod synthesis;
pub mod valency;
pub mod verify;

mod rational;

pub use choice::{sym_closure, ChoiceFunction, Permutation};
pub use error::{Error, Result};
pub use prob::ProbMatrix;
pub use profile::{IntegerProfile, WeightedProfile};
pub use rational::{frac, half, one, rat, Rational};
