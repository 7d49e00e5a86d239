//! Exact construction and verification of the SL(2,Z) representations that
//! quantum PSU(3) and PSU(2) produce at a prime root of unity `r ≡ 2 (mod 3)`.
//!
//! All representation matrices live over a cyclotomic field and every check
//! is an exact identity unless a report entry says otherwise.

pub mod arith;
pub mod charsums;
pub mod cyclotomic;
pub mod eisenstein;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod psu2;
pub mod rational;
pub mod rep;
pub mod repcheck;
pub mod weil;

pub use cyclotomic::{gauss_sqrt, CycNum};
pub use error::{Error, Result};
pub use eisenstein::{EisElem, SymmetryData, WeylElement};
pub use matrix::{CycMatrix, IntVec, SignedPerm};
pub use rational::Rational;
pub use rep::{RepLabel, RepPair};
pub use repcheck::{LiftedRep, VerifyReport};
pub use weil::{OrbitBasis, OrbitKind};
