//! Numerics for the double Dirichlet series of positive-definite binary cubic
//! forms, `Z(s1, s2) = Σ_{m,n ≥ 1} C(3m, −n) m^{-s1} n^{-s2}`.
//!
//! The layers build on each other: integer arithmetic ([`arith`]), square-root
//! counts modulo `m` ([`sqcount`]), the forms themselves ([`forms`]), local
//! Euler factors ([`euler`]), Dirichlet L-functions ([`lfunc`]) and the
//! multiple Dirichlet series checks ([`mds`]). [`verify`] bundles the
//! acceptance checks shared by the tests and the command-line tool.

pub mod arith;
pub mod error;
pub mod euler;
pub mod forms;
pub mod lfunc;
pub mod mds;
pub mod numeric;
pub mod par;
pub mod sqcount;
pub mod verify;

pub use error::{Error, Result};
