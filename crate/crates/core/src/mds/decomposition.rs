//! The slice of `Z` with `gcd(n, 6) = 1` written as a combination of the
//! series `Z*_χ(s1, s2) = Σ_n χ(n) L_{2,3}(s1, η_{−n}) n^{-s2}` over the
//! characters `χ` mod 24.

use super::series::z_n_oracle_batch;
use super::{SeriesComparison, TruncationSpec};
use crate::arith::{gcd, is_squarefree};
use crate::error::Result;
use crate::lfunc::{
    a_j, character_eta, characters_mod24, l_removed_23, zeta_ratio, CorrectionTable, DirichletCharacter,
};
use crate::numeric::{compensated_sum, pow_ln, C64};
use crate::par::{try_map_ordered, Execution};

/// Squarefree `n ≤ limit` prime to 6.
pub fn squarefree_prime_to_six(limit: u64) -> Vec<u64> {
    (1..=limit).filter(|&n| gcd(n, 6) == 1 && is_squarefree(n)).collect()
}

/// `L_{2,3}(s1, η_{−n}) n^{-s2}` for each `n`, the shared part of every `Z*_χ`.
fn weighted_l_values(ns: &[u64], s1: C64, s2: C64, exec: Execution) -> Result<Vec<C64>> {
    try_map_ordered(exec, ns, |&n| {
        let l = l_removed_23(&character_eta(n)?, s1)?;
        Ok(l * pow_ln((n as f64).ln(), -s2))
    })
}

/// `Z*_χ` for each character, sharing the L-values across characters.
pub fn z_star_all(
    chars: &[DirichletCharacter],
    s1: C64,
    s2: C64,
    spec: &TruncationSpec,
    exec: Execution,
) -> Result<Vec<C64>> {
    let ns = squarefree_prime_to_six(spec.n_cutoff);
    let w = weighted_l_values(&ns, s1, s2, exec)?;
    Ok(chars.iter().map(|chi| compensated_sum(ns.iter().zip(&w).map(|(&n, &t)| chi.value(n) * t))).collect())
}

pub fn z_star(chi: &DirichletCharacter, s1: C64, s2: C64, spec: &TruncationSpec, exec: Execution) -> Result<C64> {
    Ok(z_star_all(std::slice::from_ref(chi), s1, s2, spec, exec)?[0])
}

/// Both sides of the decomposition before the correction table is chosen.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionSides {
    pub s1: C64,
    pub spec: TruncationSpec,
    /// `Σ_n Z_n(s1) n^{-s2}` from coefficients over squarefree `n` prime to 6.
    pub lhs: C64,
    /// `Z*_χ(s1, s2)` for the characters mod 24 in pattern order.
    pub z_star: Vec<C64>,
}

impl DecompositionSides {
    /// `(1/8) ζ(s1)/ζ(2s1) Σ_j Σ_χ χ(j)^{-1} A_j(s1) Z*_χ(s1, s2)`.
    pub fn rhs(&self, table: CorrectionTable) -> Result<C64> {
        let chars = characters_mod24();
        let units: Vec<u64> = (1..24).filter(|&j| gcd(j, 24) == 1).collect();
        let mut terms = Vec::with_capacity(64);
        for &j in &units {
            let a = a_j(table, j as i64, self.s1)?;
            for (chi, &zs) in chars.iter().zip(&self.z_star) {
                terms.push(chi.value(j).inv() * a * zs);
            }
        }
        Ok(zeta_ratio(self.s1)? * compensated_sum(terms) / 8.0)
    }

    pub fn comparison(&self, table: CorrectionTable) -> Result<SeriesComparison> {
        Ok(SeriesComparison::new(self.lhs, self.rhs(table)?, self.spec))
    }
}

pub fn decomposition_sides(s1: C64, s2: C64, spec: &TruncationSpec, exec: Execution) -> Result<DecompositionSides> {
    let ns = squarefree_prime_to_six(spec.n_cutoff);
    let inner = z_n_oracle_batch(&ns, s1, spec.m_cutoff, exec)?;
    let lhs = compensated_sum(ns.iter().zip(inner).map(|(&n, z)| z * pow_ln((n as f64).ln(), -s2)));
    let z_star = z_star_all(&characters_mod24(), s1, s2, spec, exec)?;
    Ok(DecompositionSides { s1, spec: *spec, lhs, z_star })
}

/// The decomposition identity for the slice `gcd(n, 6) = 1`.
pub fn decomposition_identity(
    table: CorrectionTable,
    s1: C64,
    s2: C64,
    spec: &TruncationSpec,
    exec: Execution,
) -> Result<SeriesComparison> {
    decomposition_sides(s1, s2, spec, exec)?.comparison(table)
}
