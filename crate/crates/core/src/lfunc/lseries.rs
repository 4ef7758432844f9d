//! Dirichlet L-functions `L(s, χ)` on the whole envelope of the Hurwitz
//! evaluator, plus the truncated and squarefree-restricted variants.

use serde::{Deserialize, Serialize};

use super::character::DirichletCharacter;
use super::hurwitz::{choose_shift, regular_tail, remainder_bound, shifted_singular};
use crate::arith::{gcd, primes_up_to, SmallestPrimeFactor};
use crate::error::{Error, Result};
use crate::numeric::{compensated_sum, pow_ln, CompensatedSum, C64, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LMethod {
    TruncatedSum,
    HurwitzEulerMaclaurin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LSeriesValue {
    pub s: C64,
    pub value: C64,
    pub method: LMethod,
    pub error_estimate: f64,
}

/// `L(s, χ) = q^{-s} Σ_a χ(a) ζ(s, a/q)`, evaluated as the first `Nq` terms
/// plus one Euler–Maclaurin tail per residue class.
pub fn dirichlet_l(chi: &DirichletCharacter, s: C64) -> Result<LSeriesValue> {
    let q = chi.modulus();
    let principal = chi.is_principal();
    if principal && (s - ONE).norm() < 1e-13 {
        return Err(Error::pole(format!("L(s, principal mod {q})"), s));
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::domain(format!("non-finite s = {s}")));
    }
    let n = choose_shift(s);
    let head_len = n * q;
    let head = compensated_sum(
        (1..=head_len)
            .map(|k| (k, chi.value(k)))
            .filter(|(_, v)| *v != ZERO)
            .map(|(k, v)| v * pow_ln((k as f64).ln(), -s)),
    );
    let mut tail = CompensatedSum::new();
    let mut err = 0.0;
    let qf = q as f64;
    for a in 1..=q {
        let v = chi.value(a);
        if v == ZERO {
            continue;
        }
        let x = n as f64 + a as f64 / qf;
        tail.add(v * regular_tail(s, x));
        if !principal {
            tail.add(v * shifted_singular(s, x));
        }
        err += remainder_bound(s, x);
    }
    let mut tail = tail.value();
    if principal {
        // the 1/(s−1) pieces add up instead of cancelling
        let x_sum = (1..=q).filter(|&a| chi.value(a) != ZERO).map(|a| pow_ln((n as f64 + a as f64 / qf).ln(), ONE - s));
        tail += compensated_sum(x_sum) / (s - ONE);
    }
    let scale = pow_ln(qf.ln(), -s);
    Ok(LSeriesValue {
        s,
        value: head + scale * tail,
        method: LMethod::HurwitzEulerMaclaurin,
        error_estimate: err * scale.norm(),
    })
}

/// `Σ_{m ≤ terms} χ(m) m^{-s}` with the crude tail bound `N^{1−σ}/(σ−1)`.
pub fn dirichlet_l_truncated(chi: &DirichletCharacter, s: C64, terms: u64) -> LSeriesValue {
    let value = compensated_sum(
        (1..=terms)
            .map(|k| (k, chi.value(k)))
            .filter(|(_, v)| *v != ZERO)
            .map(|(k, v)| v * pow_ln((k as f64).ln(), -s)),
    );
    let error_estimate = if s.re > 1.0 { (terms as f64).powf(1.0 - s.re) / (s.re - 1.0) } else { f64::INFINITY };
    LSeriesValue { s, value, method: LMethod::TruncatedSum, error_estimate }
}

pub fn riemann_zeta(s: C64) -> Result<C64> {
    let one = DirichletCharacter::principal(1)?;
    Ok(dirichlet_l(&one, s)?.value)
}

/// `ζ(s)/ζ(2s)`.
pub fn zeta_ratio(s: C64) -> Result<C64> {
    let den = riemann_zeta(2.0 * s)?;
    if den.norm() < 1e-13 {
        return Err(Error::pole("1/zeta(2s)", s));
    }
    Ok(riemann_zeta(s)? / den)
}

/// `L(s, χ)` with the Euler factors at 2 and 3 removed.
pub fn l_removed_23(chi: &DirichletCharacter, s: C64) -> Result<C64> {
    let l = dirichlet_l(chi, s)?.value;
    let f2 = ONE - chi.value(2) * pow_ln(2f64.ln(), -s);
    let f3 = ONE - chi.value(3) * pow_ln(3f64.ln(), -s);
    Ok(l * f2 * f3)
}

/// `L_b(w, ψ) = Σ ψ(d) d^{-w}` over squarefree `d ≤ cutoff` prime to `b`.
pub fn l_squarefree_restricted(psi: &DirichletCharacter, b: u64, w: C64, cutoff: u64) -> Result<C64> {
    if b == 0 {
        return Err(Error::domain("L_b needs b >= 1"));
    }
    let limit = u32::try_from(cutoff).map_err(|_| Error::Refused(format!("cutoff {cutoff} too large")))?;
    let spf = SmallestPrimeFactor::new(limit.max(1));
    Ok(compensated_sum((1..=cutoff).filter_map(|d| {
        let v = psi.value(d);
        if v == ZERO || gcd(d, b) != 1 || !spf.factorize(d as u32).factors().iter().all(|f| f.1 == 1) {
            return None;
        }
        Some(v * pow_ln((d as f64).ln(), -w))
    })))
}

/// Squarefree `d ≤ cutoff` with `d^{-w}` and the set of small primes dividing
/// `d`, shared by every `(ψ, b)` pair in a sweep.
#[derive(Debug, Clone)]
pub struct SquarefreeTable {
    small_primes: Vec<u64>,
    masks: Vec<u16>,
    // (d, index into masks, d^{-w})
    entries: Vec<(u64, usize, C64)>,
    w: C64,
}

impl SquarefreeTable {
    /// Bucketing supports `b` whose prime factors are among the first 16 primes.
    pub fn new(w: C64, cutoff: u64) -> Result<Self> {
        let limit = u32::try_from(cutoff).map_err(|_| Error::Refused(format!("cutoff {cutoff} too large")))?;
        let spf = SmallestPrimeFactor::new(limit.max(1));
        let small_primes: Vec<u64> = primes_up_to(53);
        let mut raw = Vec::new();
        for d in 1..=cutoff {
            let f = spf.factorize(d as u32);
            if f.factors().iter().any(|&(_, e)| e > 1) {
                continue;
            }
            let mask = small_primes.iter().enumerate().filter(|(_, &p)| d % p == 0).fold(0u16, |m, (i, _)| m | 1 << i);
            raw.push((d, mask, pow_ln((d as f64).ln(), -w)));
        }
        let mut masks: Vec<u16> = raw.iter().map(|e| e.1).collect();
        masks.sort_unstable();
        masks.dedup();
        let entries =
            raw.into_iter().map(|(d, m, pw)| (d, masks.binary_search(&m).expect("mask collected above"), pw)).collect();
        Ok(Self { small_primes, masks, entries, w })
    }

    pub fn w(&self) -> C64 {
        self.w
    }

    fn mask_of(&self, b: u64) -> Result<u16> {
        let mut rest = b;
        let mut mask = 0u16;
        for (i, &p) in self.small_primes.iter().enumerate() {
            if rest.is_multiple_of(p) {
                mask |= 1 << i;
                while rest.is_multiple_of(p) {
                    rest /= p;
                }
            }
        }
        if rest != 1 {
            return Err(Error::Refused(format!("b = {b} has a prime factor above 53")));
        }
        Ok(mask)
    }

    /// `L_b(w, ψ)` for each `b`, in the order given.
    pub fn restricted_sums(&self, psi: &DirichletCharacter, bs: &[u64]) -> Result<Vec<C64>> {
        let b_masks: Vec<u16> = bs.iter().map(|&b| self.mask_of(b)).collect::<Result<_>>()?;
        let mut out = vec![CompensatedSum::new(); bs.len()];
        // bucket by the small-prime mask so each b scans only distinct masks
        let mut buckets = vec![CompensatedSum::new(); self.masks.len()];
        for &(d, slot, pw) in &self.entries {
            let v = psi.value(d);
            if v != ZERO {
                buckets[slot].add(v * pw);
            }
        }
        for (slot, &bm) in out.iter_mut().zip(&b_masks) {
            for (&m, acc) in self.masks.iter().zip(&buckets) {
                if m & bm == 0 {
                    slot.add(acc.value());
                }
            }
        }
        Ok(out.into_iter().map(|s| s.value()).collect())
    }
}

/// `Π_{p | b} f(p)` over the distinct primes of `b`.
pub fn product_over_primes_of(b: u64, f: impl Fn(u64) -> C64) -> Result<C64> {
    let mut acc = ONE;
    for p in crate::arith::factorize(b)?.primes() {
        acc *= f(p);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::character::{all_characters, character_eta, chi4};
    use crate::numeric::{real, rel_err};
    use std::f64::consts::PI;

    #[test]
    fn classical_values() {
        let v = riemann_zeta(real(2.0)).unwrap();
        assert!(rel_err(v, real(PI * PI / 6.0)) < 1e-14);
        let l = dirichlet_l(&chi4(), real(1.0)).unwrap();
        assert!(rel_err(l.value, real(PI / 4.0)) < 1e-13);
        assert!(l.error_estimate < 1e-12);
        assert!(matches!(riemann_zeta(real(1.0)), Err(Error::Pole { .. })));
        // L(0, χ_4) = 1/2
        assert!(rel_err(dirichlet_l(&chi4(), real(0.0)).unwrap().value, real(0.5)) < 1e-13);
    }

    #[test]
    fn leibniz_partial_sums_with_averaging() {
        // averaging consecutive partial sums of the alternating series kills the leading error
        let terms = 200_000u64;
        let partial =
            |n: u64| -> f64 { (0..n).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / (2 * k + 1) as f64).sum() };
        let avg = 0.5 * (partial(terms) + partial(terms + 1));
        let l = dirichlet_l(&chi4(), real(1.0)).unwrap().value;
        assert!((l.re - avg).abs() < 1e-10);
    }

    #[test]
    fn hurwitz_route_matches_truncated_sums() {
        for q in [1u64, 3, 4, 7, 12, 15, 24, 40] {
            for chi in all_characters(q).unwrap() {
                for s in [C64::new(1.5, 0.0), C64::new(2.0, 3.0), C64::new(3.5, -10.0)] {
                    let h = dirichlet_l(&chi, s).unwrap().value;
                    let t = dirichlet_l_truncated(&chi, s, 400_000).value;
                    let tail = 2.0 * (400_000f64).powf(1.0 - s.re) / (s.re - 1.0);
                    assert!((h - t).norm() < tail.max(1e-12), "q={q} s={s}");
                }
            }
        }
    }

    #[test]
    fn removed_factors() {
        let triv = crate::lfunc::character::DirichletCharacter::principal(1).unwrap();
        let a = l_removed_23(&triv, real(2.0)).unwrap();
        let expected = PI * PI / 6.0 * (1.0 - 0.25) * (1.0 - 1.0 / 9.0);
        assert!(rel_err(a, real(expected)) < 1e-14);
        let e = character_eta(15).unwrap();
        // η_{−15}(2) = 0 by construction and η_{−15}(3) = 0
        assert!(rel_err(l_removed_23(&e, real(2.0)).unwrap(), dirichlet_l(&e, real(2.0)).unwrap().value) < 1e-15);
    }

    #[test]
    fn squarefree_density() {
        let triv = crate::lfunc::character::DirichletCharacter::principal(1).unwrap();
        let v = l_squarefree_restricted(&triv, 1, real(2.0), 200_000).unwrap();
        let expected = 15.0 / (PI * PI);
        assert!((v.re - expected).abs() < 1e-5);
        let table = SquarefreeTable::new(real(2.0), 200_000).unwrap();
        let batch = table.restricted_sums(&triv, &[1, 6, 30]).unwrap();
        assert!((batch[0] - v).norm() < 1e-12);
        let direct6 = l_squarefree_restricted(&triv, 6, real(2.0), 200_000).unwrap();
        assert!((batch[1] - direct6).norm() < 1e-12);
    }
}
