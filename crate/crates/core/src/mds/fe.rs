//! Per-`n` functional equation `Λ(1 − s, ψ_n) = Λ(s, ψ_n)` and its term-wise
//! consequence for `Z*`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{SeriesComparison, TruncationSpec};
use crate::error::Result;
use crate::lfunc::{
    character_eta, completed_lambda, completed_lambda_primitive, gamma, l_removed_23, DirichletCharacter,
};
use crate::numeric::{pow_ln, C64, ONE};

/// Tolerance attached to every functional-equation comparison.
pub const FE_TOLERANCE: f64 = 1e-8;

/// Normalization of the completed L-function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeNormalization {
    /// `(π/12n)^{-(s+1)/2} Γ((s+1)/2) L(ψ_n, s)` with `ψ_n` taken mod `12n`.
    Modulus,
    /// The primitive character inducing `ψ_n`, normalized by its conductor.
    Primitive,
}

fn check(n: u64, grid: &[C64], norm: FeNormalization) -> Vec<Result<SeriesComparison>> {
    let lambda = |s: C64| match norm {
        FeNormalization::Modulus => completed_lambda(n, s),
        FeNormalization::Primitive => completed_lambda_primitive(n, s),
    };
    grid.iter()
        .map(|&s| {
            let rhs = lambda(s)?;
            let lhs = lambda(ONE - s)?;
            Ok(SeriesComparison::new(lhs, rhs, TruncationSpec::exact(FE_TOLERANCE)))
        })
        .collect()
}

/// `Λ(1 − s)` against `Λ(s)` for every grid point; Γ poles and other
/// failures come back as errors in place.
pub fn functional_equation_check(n: u64, grid: &[C64]) -> Vec<Result<SeriesComparison>> {
    check(n, grid, FeNormalization::Modulus)
}

pub fn functional_equation_check_primitive(n: u64, grid: &[C64]) -> Vec<Result<SeriesComparison>> {
    check(n, grid, FeNormalization::Primitive)
}

/// The `n`-th term of `Z*_χ(s1, s2)` against the `n`-th term of
/// `(π/12)^{s1−1/2} Γ(1 − s1/2)/Γ((s1+1)/2) Z*_χ(1 − s1, s1 + s2 − 1/2)`.
pub fn z_star_termwise_fe(chi: &DirichletCharacter, n: u64, s1: C64, s2: C64) -> Result<SeriesComparison> {
    let eta = character_eta(n)?;
    let ln_n = (n as f64).ln();
    let c = chi.value(n);
    let lhs = c * l_removed_23(&eta, s1)? * pow_ln(ln_n, -s2);
    let factor = pow_ln((PI / 12.0).ln(), s1 - 0.5) * gamma(ONE - s1 / 2.0)? / gamma((s1 + 1.0) / 2.0)?;
    let rhs = factor * c * l_removed_23(&eta, ONE - s1)? * pow_ln(ln_n, -(s1 + s2 - 0.5));
    Ok(SeriesComparison::new(lhs, rhs, TruncationSpec::exact(FE_TOLERANCE)))
}
