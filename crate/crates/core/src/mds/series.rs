//! `Z(s1, s2)` summed over forms and over coefficients, and the inner
//! series `Z_n(s) = Σ_m C(3m, −n) m^{-s}`.

use super::TruncationSpec;
use crate::arith::{is_squarefree, primes_up_to, SmallestPrimeFactor};
use crate::error::{Error, Result};
use crate::euler::euler_product;
use crate::forms::enumerate_representatives;
use crate::numeric::{compensated_sum, pow_ln, C64, ZERO};
use crate::par::{map_ordered, Execution};
use crate::sqcount::prime_power_count;

/// `m^{-s}` for `1 ≤ m ≤ limit`; index 0 holds zero.
#[derive(Debug, Clone)]
pub struct PowerTable {
    s: C64,
    values: Vec<C64>,
}

impl PowerTable {
    pub fn new(limit: u64, s: C64) -> Self {
        let values = (0..=limit).map(|m| if m == 0 { ZERO } else { pow_ln((m as f64).ln(), -s) }).collect();
        Self { s, values }
    }

    pub fn s(&self) -> C64 {
        self.s
    }

    pub fn limit(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    #[inline]
    pub fn get(&self, m: u64) -> C64 {
        self.values[m as usize]
    }
}

/// Factorization data for `1..=limit` supporting the multiplicative sieve
/// of `m ↦ C(3m, −n)`.
#[derive(Debug, Clone)]
pub struct CoefficientSieve {
    // m = prime^exp · rest with prime the smallest prime factor
    prime: Vec<u32>,
    exp: Vec<u8>,
    rest: Vec<u32>,
    v3: Vec<u8>,
}

impl CoefficientSieve {
    pub fn new(limit: u64) -> Result<Self> {
        let lim = u32::try_from(limit).map_err(|_| Error::Refused(format!("sieve limit {limit} too large")))?;
        if lim == 0 {
            return Err(Error::domain("sieve limit must be >= 1"));
        }
        let spf = SmallestPrimeFactor::new(lim);
        let n = lim as usize;
        let mut prime = vec![0u32; n + 1];
        let mut exp = vec![0u8; n + 1];
        let mut rest = vec![0u32; n + 1];
        let mut v3 = vec![0u8; n + 1];
        for m in 2..=n {
            let p = spf.spf(m as u32);
            let mut r = m as u32;
            let mut e = 0u8;
            while r.is_multiple_of(p) {
                r /= p;
                e += 1;
            }
            prime[m] = p;
            exp[m] = e;
            rest[m] = r;
            v3[m] = if p == 3 { e } else { v3[r as usize] };
        }
        Ok(Self { prime, exp, rest, v3 })
    }

    pub fn limit(&self) -> u64 {
        (self.prime.len() - 1) as u64
    }

    /// `row[m] = C(3m, −n)` for `1 ≤ m ≤ limit`; `row[0] = 0`.
    pub fn row(&self, n: u64) -> Result<Vec<u64>> {
        let neg = -i64::try_from(n).map_err(|_| Error::Overflow("-n"))?;
        let len = self.prime.len();
        let max_v3 = self.v3.iter().copied().max().unwrap_or(0) as u32;
        let triadic: Vec<u64> =
            (0..=max_v3).map(|k| prime_power_count(3, k + 1, neg).to_u64()).collect::<Result<_>>()?;
        // coprime-to-3 part, multiplicative
        let mut g = vec![0u64; len];
        if len > 1 {
            g[1] = 1;
        }
        for m in 2..len {
            let p = self.prime[m];
            let r = self.rest[m] as usize;
            let local = if p == 3 { 1 } else { prime_power_count(p as u64, self.exp[m] as u32, neg).to_u64()? };
            g[m] = g[r] * local;
        }
        let mut row = g;
        for m in 1..len {
            row[m] *= triadic[self.v3[m] as usize];
        }
        Ok(row)
    }
}

pub fn coefficient_row(n: u64, m_cutoff: u64) -> Result<Vec<u64>> {
    CoefficientSieve::new(m_cutoff)?.row(n)
}

fn weighted_sum(row: &[u64], powers: &PowerTable) -> C64 {
    compensated_sum(
        row.iter().enumerate().skip(1).filter(|(_, &c)| c != 0).map(|(m, &c)| powers.get(m as u64) * c as f64),
    )
}

/// `Σ_{m ≤ m_cutoff} C(3m, −n) m^{-s}`.
pub fn z_n_oracle(n: u64, s: C64, m_cutoff: u64) -> Result<C64> {
    if n == 0 {
        return Err(Error::domain("Z_n needs n >= 1"));
    }
    let sieve = CoefficientSieve::new(m_cutoff)?;
    let powers = PowerTable::new(m_cutoff, s);
    Ok(weighted_sum(&sieve.row(n)?, &powers))
}

/// The inner series for many `n` sharing one sieve and one power table.
pub fn z_n_oracle_batch(ns: &[u64], s: C64, m_cutoff: u64, exec: Execution) -> Result<Vec<C64>> {
    let sieve = CoefficientSieve::new(m_cutoff)?;
    let powers = PowerTable::new(m_cutoff, s);
    map_ordered(exec, ns, |&n| Ok(weighted_sum(&sieve.row(n)?, &powers))).into_iter().collect()
}

/// `Π_{p ≤ prime_bound} Z_{n,p}(s)` from the closed local factors.
pub fn z_n_euler_product(n: u64, s: C64, prime_bound: u64) -> Result<C64> {
    euler_product(n, s, &primes_up_to(prime_bound))
}

pub fn odd_squarefree_up_to(limit: u64) -> Vec<u64> {
    (1..=limit).filter(|&n| n % 2 == 1 && is_squarefree(n)).collect()
}

/// `Σ a^{-s1} (3ac − b²)^{-s2}` over reduced positive-definite triples with
/// `a ≤ m_cutoff` and odd squarefree `n ≤ n_cutoff`, in lexicographic order.
pub fn z_direct(s1: C64, s2: C64, spec: &TruncationSpec) -> Result<C64> {
    let pa = PowerTable::new(spec.m_cutoff, s1);
    let pn = PowerTable::new(spec.n_cutoff, s2);
    let forms = enumerate_representatives(spec.m_cutoff, spec.n_cutoff, true)?;
    Ok(compensated_sum(forms.map(|t| pa.get(t.a) * pn.get(t.n))))
}

/// `Σ_n n^{-s2} Σ_m C(3m, −n) m^{-s1}` over odd squarefree `n ≤ n_cutoff`
/// and `m ≤ m_cutoff`, ascending `n` then ascending `m`.
pub fn z_coeff(s1: C64, s2: C64, spec: &TruncationSpec, exec: Execution) -> Result<C64> {
    let ns = odd_squarefree_up_to(spec.n_cutoff);
    let inner = z_n_oracle_batch(&ns, s1, spec.m_cutoff, exec)?;
    Ok(compensated_sum(ns.iter().zip(inner).map(|(&n, z)| z * pow_ln((n as f64).ln(), -s2))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{real, rel_err};
    use crate::sqcount::coefficient;

    #[test]
    fn sieve_matches_pointwise_coefficients() {
        let sieve = CoefficientSieve::new(3000).unwrap();
        for n in [1u64, 2, 3, 5, 9, 27, 35, 81, 243, 1000] {
            let row = sieve.row(n).unwrap();
            for m in 1..=3000u64 {
                assert_eq!(row[m as usize], coefficient(m, n).unwrap(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn vanishing_slices() {
        for n in [1u64, 4, 7, 10, 13] {
            assert_eq!(z_n_oracle(n, real(2.0), 10_000).unwrap(), ZERO);
        }
    }

    #[test]
    fn euler_product_matches_oracle_for_n_two() {
        let s = real(2.5);
        let a = z_n_oracle(2, s, 100_000).unwrap();
        let b = z_n_euler_product(2, s, 10_000).unwrap();
        assert!(rel_err(a, b) < 1e-4);
    }

    #[test]
    fn smallest_cells() {
        let spec = TruncationSpec::new(1, 3, 1, 1e-13).unwrap();
        // only (a, b, c) = (1, 0, 1) with n = 3 survives the odd-squarefree filter
        let s1 = C64::new(2.0, 0.5);
        let s2 = C64::new(2.0, -1.0);
        let d = z_direct(s1, s2, &spec).unwrap();
        assert!(rel_err(d, pow_ln(3f64.ln(), -s2)) < 1e-15);
        let c = z_coeff(s1, s2, &spec, Execution::Sequential).unwrap();
        assert!(rel_err(c, d) < 1e-15);
    }

    #[test]
    fn regrouping_and_determinism() {
        let spec = TruncationSpec::new(60, 80, 1, 1e-13).unwrap();
        let s = (C64::new(2.0, 1.0), C64::new(1.5, -2.0));
        let d = z_direct(s.0, s.1, &spec).unwrap();
        let seq = z_coeff(s.0, s.1, &spec, Execution::Sequential).unwrap();
        let par = z_coeff(s.0, s.1, &spec, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert!(rel_err(d, seq) < 1e-13);
    }

    #[test]
    fn monotone_in_cutoffs_for_real_arguments() {
        let s = real(2.0);
        let mut last = 0.0;
        for (m, n) in [(5u64, 5u64), (10, 10), (20, 40), (40, 40)] {
            let v = z_direct(s, s, &TruncationSpec::new(m, n, 1, 1.0).unwrap()).unwrap().re;
            assert!(v >= last);
            last = v;
        }
    }
}
