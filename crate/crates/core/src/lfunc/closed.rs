//! Closed forms of `Z_n(s)`, the correction factors `A_j(s)` and their
//! character decomposition, and the completed L-function of `ψ_n`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::character::{character_eta, characters_mod24, psi_n_character, DirichletCharacter};
use super::gamma::gamma;
use super::lseries::{dirichlet_l, l_removed_23, zeta_ratio};
use crate::arith::{gcd, is_squarefree};
use crate::error::{Error, Result};
use crate::numeric::{compensated_sum, pow_ln, real, C64, ONE, ZERO};

/// Which table of correction factors to use.
///
/// `Displayed` is the nine-branch table written against
/// `ζ(s)/ζ(2s) · L(s, η_{−n})`. `Derived` is the table obtained by dividing
/// the local factors at 2 and 3 by those of `ζ(s)/ζ(2s)`; it pairs with
/// `L(s, η_{−n})` stripped at 2 and 3, and is what the coefficient series
/// actually satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionTable {
    Displayed,
    Derived,
}

/// Residue class of `j` selecting a branch, tested mod 3, 6, 12, 24 in turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    OneMod3,
    ZeroMod6,
    TwoMod6,
    FiveMod12,
    NineMod12,
    ThreeMod24,
    ElevenMod24,
    FifteenMod24,
    TwentyThreeMod24,
}

pub fn branch(j: i64) -> Branch {
    if j.rem_euclid(3) == 1 {
        return Branch::OneMod3;
    }
    match j.rem_euclid(6) {
        0 => return Branch::ZeroMod6,
        2 => return Branch::TwoMod6,
        _ => {}
    }
    match j.rem_euclid(12) {
        5 => return Branch::FiveMod12,
        9 => return Branch::NineMod12,
        _ => {}
    }
    match j.rem_euclid(24) {
        3 => Branch::ThreeMod24,
        11 => Branch::ElevenMod24,
        15 => Branch::FifteenMod24,
        _ => Branch::TwentyThreeMod24,
    }
}

fn checked_div(num: C64, den: C64, name: &str, s: C64) -> Result<C64> {
    if den.norm() < 1e-13 {
        return Err(Error::pole(name, s));
    }
    Ok(num / den)
}

pub fn a_j(table: CorrectionTable, j: i64, s: C64) -> Result<C64> {
    let x = pow_ln(2f64.ln(), -s);
    let y = pow_ln(3f64.ln(), -s);
    let inert = checked_div(ONE, ONE + y, "1 + 3^-s", s)?;
    let split = checked_div(real(2.0), ONE - y * y, "1 - 3^-2s", s)?;
    let plus = ONE + x + x * x * 2.0;
    let minus = ONE - x + x * x * 2.0;
    let b = branch(j);
    let three_part = match b {
        Branch::OneMod3 => return Ok(ZERO),
        Branch::ZeroMod6 | Branch::NineMod12 | Branch::ThreeMod24 | Branch::FifteenMod24 => inert,
        _ => split,
    };
    let two_part = match (table, b) {
        (_, Branch::ZeroMod6 | Branch::TwoMod6) => ONE,
        (CorrectionTable::Displayed, Branch::FiveMod12 | Branch::NineMod12) => ONE - x,
        (CorrectionTable::Displayed, Branch::ThreeMod24 | Branch::ElevenMod24) => {
            checked_div(ONE - x, ONE + x, "1 + 2^-s", s)? * plus
        }
        (CorrectionTable::Displayed, _) => minus,
        (CorrectionTable::Derived, Branch::FiveMod12 | Branch::NineMod12) => ONE,
        (CorrectionTable::Derived, Branch::ThreeMod24 | Branch::ElevenMod24) => {
            checked_div(plus, ONE + x, "1 + 2^-s", s)?
        }
        (CorrectionTable::Derived, _) => checked_div(minus, ONE - x, "1 - 2^-s", s)?,
    };
    Ok(two_part * three_part)
}

/// `(1/8) Σ_j Σ_χ χ(j)^{-1} A_j(s) χ(n)` over units `j` and characters mod 24.
pub fn a_n(table: CorrectionTable, n: u64, s: C64) -> Result<C64> {
    if gcd(n, 24) != 1 {
        return Err(Error::domain(format!("a_n needs gcd(n, 24) = 1, got {n}")));
    }
    let chars = characters_mod24();
    a_n_with(&chars, table, n, s)
}

/// As [`a_n`] with a prebuilt list of the characters mod 24.
pub fn a_n_with(chars: &[DirichletCharacter], table: CorrectionTable, n: u64, s: C64) -> Result<C64> {
    let units: Vec<u64> = (1..24).filter(|&j| gcd(j, 24) == 1).collect();
    let coeffs: Vec<C64> = units.iter().map(|&j| a_j(table, j as i64, s)).collect::<Result<_>>()?;
    let terms = units
        .iter()
        .zip(&coeffs)
        .flat_map(|(&j, &a)| chars.iter().map(move |chi| chi.value(j).inv() * a * chi.value(n)));
    Ok(compensated_sum(terms) / 8.0)
}

fn check_odd_squarefree(n: u64) -> Result<()> {
    if n == 0 || n.is_multiple_of(2) || !is_squarefree(n) {
        return Err(Error::domain(format!("closed form needs n odd and squarefree, got {n}")));
    }
    Ok(())
}

/// `Z_n(s)` for odd squarefree `n`: `ζ(s)/ζ(2s) · L · A_n(s)` where `L` is
/// `L(s, η_{−n})` for the displayed table and its 2,3-stripped version for
/// the derived one.
pub fn z_n_closed(table: CorrectionTable, n: u64, s: C64) -> Result<C64> {
    check_odd_squarefree(n)?;
    let a = a_j(table, n as i64, s)?;
    if a == ZERO {
        return Ok(ZERO);
    }
    let eta = character_eta(n)?;
    let l = match table {
        CorrectionTable::Displayed => dirichlet_l(&eta, s)?.value,
        CorrectionTable::Derived => l_removed_23(&eta, s)?,
    };
    Ok(zeta_ratio(s)? * l * a)
}

/// `(π/Q)^{-(s+a)/2} Γ((s+a)/2) L(s, χ)` for a modulus `Q` and parity `a`
/// supplied by the caller.
pub fn completed_with(chi: &DirichletCharacter, q: f64, parity: u8, s: C64) -> Result<C64> {
    let shift = (s + parity as f64) / 2.0;
    let g = gamma(shift)?;
    let l = dirichlet_l(chi, s)?.value;
    Ok(pow_ln((PI / q).ln(), -shift) * g * l)
}

/// `Λ(s, ψ_n) = (π/12n)^{-(s+1)/2} Γ((s+1)/2) L(ψ_n, s)`.
pub fn completed_lambda(n: u64, s: C64) -> Result<C64> {
    let psi = psi_n_character(n)?;
    completed_with(&psi, 12.0 * n as f64, 1, s)
}

/// The completed L-function of the primitive character inducing `ψ_n`,
/// normalized by its own conductor.
pub fn completed_lambda_primitive(n: u64, s: C64) -> Result<C64> {
    let prim = psi_n_character(n)?.primitive();
    let q = prim.modulus() as f64;
    completed_with(&prim, q, prim.parity(), s)
}

/// `(π/12n)^{s−1/2} Γ(1 − s/2)/Γ((s+1)/2) L(ψ_n, 1 − s)`.
pub fn asymmetric_rhs(n: u64, s: C64) -> Result<C64> {
    let psi = psi_n_character(n)?;
    let q = 12.0 * n as f64;
    let ratio = gamma(ONE - s / 2.0)? / gamma((s + 1.0) / 2.0)?;
    Ok(pow_ln((PI / q).ln(), s - 0.5) * ratio * dirichlet_l(&psi, ONE - s)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rel_err;

    #[test]
    fn displayed_branch_examples() {
        let s = real(2.0);
        assert_eq!(a_j(CorrectionTable::Displayed, 7, s).unwrap(), ZERO);
        let a23 = a_j(CorrectionTable::Displayed, 23, s).unwrap();
        assert!(rel_err(a23, real((1.0 - 0.25 + 2.0 / 16.0) * 2.0 / (1.0 - 1.0 / 81.0))) < 1e-15);
        let a5 = a_j(CorrectionTable::Displayed, 5, s).unwrap();
        assert!(rel_err(a5, real((1.0 - 0.25) * 2.0 / (1.0 - 1.0 / 81.0))) < 1e-15);
    }

    #[test]
    fn branches_cover_every_class() {
        use std::collections::HashSet;
        let seen: HashSet<_> = (0..24).map(branch).collect();
        assert_eq!(seen.len(), 9);
        assert_eq!(branch(21), Branch::NineMod12);
        assert_eq!(branch(17), Branch::FiveMod12);
        assert_eq!(branch(-1), Branch::TwentyThreeMod24);
    }

    #[test]
    fn tables_differ_by_the_dyadic_factor_on_odd_classes() {
        let s = C64::new(2.5, 1.0);
        let x = pow_ln(2f64.ln(), -s);
        for j in [3i64, 5, 9, 11, 15, 17, 21, 23] {
            let d = a_j(CorrectionTable::Displayed, j, s).unwrap();
            let r = a_j(CorrectionTable::Derived, j, s).unwrap();
            assert!(rel_err(d, r * (ONE - x)) < 1e-14, "j={j}");
        }
    }

    #[test]
    fn decomposition_examples() {
        let s = real(2.0);
        for table in [CorrectionTable::Displayed, CorrectionTable::Derived] {
            assert!(a_n(table, 25, s).unwrap().norm() < 1e-15);
            for n in [47u64, 29] {
                let lhs = a_n(table, n, s).unwrap();
                let rhs = a_j(table, n as i64, s).unwrap();
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
        assert!(a_n(CorrectionTable::Derived, 9, s).is_err());
    }

    #[test]
    fn lambda_fixed_point_and_primitive_symmetry() {
        for n in [1u64, 5, 7] {
            let a = completed_lambda(n, real(0.5)).unwrap();
            assert!(rel_err(a, a) == 0.0);
            let s = C64::new(0.3, 1.0);
            let l = completed_lambda_primitive(n, s).unwrap();
            let r = completed_lambda_primitive(n, ONE - s).unwrap();
            assert!(rel_err(l, r) < 1e-9, "n={n}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(z_n_closed(CorrectionTable::Derived, 4, real(2.0)).is_err());
        assert!(z_n_closed(CorrectionTable::Derived, 9, real(2.0)).is_err());
        assert_eq!(z_n_closed(CorrectionTable::Displayed, 7, real(2.0)).unwrap(), ZERO);
        assert!(completed_lambda(3, real(0.3)).is_err());
    }
}
