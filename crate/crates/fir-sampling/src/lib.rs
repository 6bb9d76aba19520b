//! Compactly supported reconstruction filters for oversampled generalized
//! sampling in shift-invariant spaces.
//!
//! Given a compactly supported generator `φ` and a linear time-invariant
//! system `ℒ`, functions `f = Σ aₙ φ(·−n)` are to be recovered from the
//! samples `(ℒf)(r n/s)` taken at rate `s/r > 1`. Whether the recovery can be
//! done with compactly supported (FIR) reconstruction filters is decided by
//! the rank profile of an `s×r` Laurent polynomial matrix built from the
//! samples of `ℒφ`. This crate
//!
//! * builds that matrix exactly (rational arithmetic end to end),
//! * reduces it to a constant matrix pencil and reads the decision off the
//!   Kronecker structure of the pencil, computed by a staircase algorithm,
//! * cross-checks the decision with an exact Smith-invariant/minor-gcd oracle,
//! * computes a polynomial left inverse by solving block linear systems and
//!   maps it back to the reconstruction filters, and
//! * verifies perfect reconstruction numerically.
//!
//! Start with [`generators::SamplingProblem`].

pub mod decision;
pub mod error;
pub mod generators;
pub mod kcf;
pub mod pencil;
pub mod poly;
pub mod rational;
pub mod reduction;

pub use error::{Error, Result};
pub use generators::{GeneratorSpec, SamplingProblem, SystemSpec};
pub use pencil::{KroneckerStructure, Pencil};
pub use poly::{LaurentPoly, PolyMatrix};
pub use rational::{RatMatrix, Rational};
