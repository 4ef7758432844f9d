//! The residue identities of `Z*_χ`: the `m`-expansion of `L(2s2, χ²) Z*`
//! and the Euler product giving the residue at `s1 = 1/2`.

use serde::{Deserialize, Serialize};

use super::decomposition::z_star;
use super::{SeriesComparison, TruncationSpec};
use crate::arith::{factorize, gcd, jacobi, primes_up_to};
use crate::error::{Error, Result};
use crate::lfunc::{dirichlet_l, jacobi_twist, riemann_zeta, DirichletCharacter};
use crate::numeric::{compensated_sum, pow_ln, C64, ONE};
use crate::par::{try_map_ordered, Execution};

/// Left: `L(2s2, χ²) Z*_χ(s1, s2)` over `n ≤ n_cutoff`. Right:
/// `Σ_{m ≤ m_cutoff, (m,6)=1} (−1/m) m^{-s1} Π_{p|m} (1 − χ²(p) p^{-2s2})^{-1}
/// L(s2, χ·(·/m))`.
pub fn residue_identity_check(
    chi: &DirichletCharacter,
    s1: C64,
    s2: C64,
    spec: &TruncationSpec,
    exec: Execution,
) -> Result<SeriesComparison> {
    let chi2 = chi.square();
    let lhs = dirichlet_l(&chi2, 2.0 * s2)?.value * z_star(chi, s1, s2, spec, exec)?;
    let ms: Vec<u64> = (1..=spec.m_cutoff).filter(|&m| gcd(m, 6) == 1).collect();
    let terms = try_map_ordered(exec, &ms, |&m| -> Result<C64> {
        let sign = jacobi(-1, m) as f64;
        let mut local = ONE;
        for p in factorize(m)?.primes() {
            local /= ONE - chi2.value(p) * pow_ln((p as f64).ln(), -2.0 * s2);
        }
        let l = dirichlet_l(&jacobi_twist(chi, m)?, s2)?.value;
        Ok(l * local * pow_ln((m as f64).ln(), -s1) * sign)
    })?;
    Ok(SeriesComparison::new(lhs, compensated_sum(terms), *spec))
}

/// A truncated Euler product together with its convergence monitor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidueProduct {
    pub prime_bound: u64,
    pub value_re: f64,
    pub value_im: f64,
    /// The same product truncated at `prime_bound / 2`.
    pub half_re: f64,
    pub half_im: f64,
    /// `|partial(P) − partial(P/2)|`.
    pub monitor: f64,
}

impl ResidueProduct {
    fn new(prime_bound: u64, value: C64, half: C64) -> Self {
        Self {
            prime_bound,
            value_re: value.re,
            value_im: value.im,
            half_re: half.re,
            half_im: half.im,
            monitor: (value - half).norm(),
        }
    }

    pub fn value(&self) -> C64 {
        C64::new(self.value_re, self.value_im)
    }
}

fn check_mod24(chi: &DirichletCharacter) -> Result<()> {
    if 24 % chi.modulus() != 0 {
        return Err(Error::domain(format!(
            "residue product expects a character mod 24, got modulus {}",
            chi.modulus()
        )));
    }
    Ok(())
}

fn conductor_prefactor(chi: &DirichletCharacter) -> Result<C64> {
    let mut acc = C64::new(1.0 / 3.0, 0.0);
    for p in factorize(chi.conductor())?.primes() {
        acc *= 1.0 - 1.0 / p as f64;
    }
    Ok(acc)
}

fn residue_factor(chi2p: C64, p: u64, s1: C64) -> Result<C64> {
    let lp = (p as f64).ln();
    let inv_p2 = 1.0 / (p as f64 * p as f64);
    let num = ONE - chi2p * inv_p2 + chi2p * pow_ln(lp, -(2.0 * s1 + 2.0)) - pow_ln(lp, -(2.0 * s1 + 1.0));
    let den = ONE - chi2p * inv_p2;
    if den.norm() < 1e-13 {
        return Err(Error::pole(format!("1 - chi^2(p)/p^2 at p = {p}"), s1));
    }
    Ok(num / den)
}

fn partial_products(
    chi: &DirichletCharacter,
    prime_bound: u64,
    f: impl Fn(u64) -> Result<C64>,
) -> Result<ResidueProduct> {
    check_mod24(chi)?;
    let pre = conductor_prefactor(chi)?;
    let half_bound = prime_bound / 2;
    let mut acc = ONE;
    let mut half = ONE;
    for p in primes_up_to(prime_bound).into_iter().filter(|&p| p >= 5) {
        acc *= f(p)?;
        if p <= half_bound {
            half = acc;
        }
    }
    Ok(ResidueProduct::new(prime_bound, pre * acc, pre * half))
}

/// `(1/3) Π_{p | cond χ} (1 − 1/p) Π_{5 ≤ p ≤ P} (1 − χ²(p)/p² + χ²(p)/p^{2s1+2} − 1/p^{2s1+1}) / (1 − χ²(p)/p²)`.
pub fn residue_product(chi: &DirichletCharacter, s1: C64, prime_bound: u64) -> Result<ResidueProduct> {
    let chi2 = chi.square();
    partial_products(chi, prime_bound, |p| residue_factor(chi2.value(p), p, s1))
}

/// The same product with each factor divided by `1 − p^{-(2s1+1)}` and the
/// exact value of `Π_{p ≥ 5} (1 − p^{-(2s1+1)})` multiplied back in, which
/// leaves partial products converging like `Σ p^{-(2s1+2)}`.
pub fn residue_product_tail_corrected(chi: &DirichletCharacter, s1: C64, prime_bound: u64) -> Result<ResidueProduct> {
    let w = 2.0 * s1 + 1.0;
    let zeta_w = riemann_zeta(w)?;
    let complement = ONE / (zeta_w * (ONE - pow_ln(2f64.ln(), -w)) * (ONE - pow_ln(3f64.ln(), -w)));
    let chi2 = chi.square();
    let raw = partial_products(chi, prime_bound, |p| {
        Ok(residue_factor(chi2.value(p), p, s1)? / (ONE - pow_ln((p as f64).ln(), -w)))
    })?;
    Ok(ResidueProduct::new(prime_bound, raw.value() * complement, C64::new(raw.half_re, raw.half_im) * complement))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::{character_mod24, characters_mod24};
    use crate::numeric::{real, rel_err};

    #[test]
    fn empty_product_is_the_prefactor() {
        let triv = character_mod24(0).unwrap();
        let r = residue_product(&triv, real(0.5), 4).unwrap();
        assert!(rel_err(r.value(), real(1.0 / 3.0)) < 1e-15);
        let odd = character_mod24(1).unwrap();
        let r = residue_product(&odd, real(0.5), 4).unwrap();
        let c = odd.conductor();
        let expected: f64 = factorize(c).unwrap().primes().map(|p| 1.0 - 1.0 / p as f64).product::<f64>() / 3.0;
        assert!(rel_err(r.value(), real(expected)) < 1e-15);
    }

    #[test]
    fn squares_of_mod24_characters_are_principal() {
        for chi in characters_mod24() {
            for p in primes_up_to(200).into_iter().filter(|&p| p >= 5) {
                assert_eq!(chi.square().value(p), ONE);
            }
        }
    }

    #[test]
    fn tail_correction_agrees_with_raw_product_in_the_limit() {
        let triv = character_mod24(0).unwrap();
        let raw = residue_product(&triv, real(0.5), 200_000).unwrap();
        let fixed = residue_product_tail_corrected(&triv, real(0.5), 2_000).unwrap();
        // raw partial products approach from above at rate about 1/(P log P)
        assert!((raw.value() - fixed.value()).norm() < 1e-5);
        assert!(fixed.monitor < 1e-7);
    }

    #[test]
    fn single_term_identity() {
        // m = 1 term of the right side is L(s2, χ)
        let chi = character_mod24(0).unwrap();
        let spec = TruncationSpec::new(1, 1, 1, 1.0).unwrap();
        let s2 = real(2.0);
        let c = residue_identity_check(&chi, real(2.5), s2, &spec, Execution::Sequential).unwrap();
        assert!(rel_err(c.rhs(), dirichlet_l(&chi, s2).unwrap().value) < 1e-15);
    }
}
