//! `C(m, n) = #{x mod m : x² ≡ n (mod m)}`: exhaustive oracle, the
//! multiplicative closed form, and the series coefficient `C(3m, -n)`.

use crate::arith::{factorize, is_prime, legendre, PrimeFactorization};
use crate::error::{Error, Result};

/// Largest modulus the exhaustive counter accepts.
pub const ORACLE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootCount {
    pub modulus: u64,
    pub residue: i64,
    pub count: u64,
}

impl RootCount {
    pub fn compute(modulus: u64, residue: i64) -> Result<Self> {
        Ok(Self { modulus, residue, count: count_roots(modulus, residue)? })
    }
}

fn reduce_mod(n: i64, m: u64) -> u64 {
    (n as i128).rem_euclid(m as i128) as u64
}

pub fn count_roots_bruteforce(m: u64, n: i64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("modulus 0"));
    }
    if m > ORACLE_LIMIT {
        return Err(Error::Refused(format!(
            "modulus {m} exceeds the exhaustive limit {ORACLE_LIMIT}; use count_roots"
        )));
    }
    let target = reduce_mod(n, m);
    Ok((0..m).filter(|&x| x * x % m == target).count() as u64)
}

/// `hist[r] = #{x mod m : x² ≡ r}` by enumerating every `x`; one pass answers
/// the exhaustive count for all residues at once.
pub fn square_histogram(m: u64) -> Result<Vec<u32>> {
    if m == 0 {
        return Err(Error::domain("modulus 0"));
    }
    if m > ORACLE_LIMIT {
        return Err(Error::Refused(format!("modulus {m} exceeds {ORACLE_LIMIT}")));
    }
    let mut hist = vec![0u32; m as usize];
    for x in 0..m {
        hist[(x * x % m) as usize] += 1;
    }
    Ok(hist)
}

/// A prime-power root count kept in the factored form `unit · p^exponent`,
/// so that moduli such as `53^60` never need to be materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePowerCount {
    pub unit: u64,
    pub p: u64,
    pub exponent: u32,
}

impl PrimePowerCount {
    const ZERO: Self = Self { unit: 0, p: 2, exponent: 0 };

    fn pure(p: u64, exponent: u32) -> Self {
        Self { unit: 1, p, exponent }
    }

    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    pub fn to_u64(&self) -> Result<u64> {
        if self.unit == 0 {
            return Ok(0);
        }
        self.p
            .checked_pow(self.exponent)
            .and_then(|v| v.checked_mul(self.unit))
            .ok_or(Error::Overflow("prime power root count"))
    }

    pub fn to_f64(&self) -> f64 {
        self.unit as f64 * (self.p as f64).powi(self.exponent as i32)
    }
}

// Count for `n0` coprime to `p`, modulus `p^alpha`, alpha ≥ 1.
fn unit_count(p: u64, alpha: u32, n0: i64) -> u64 {
    if p == 2 {
        match alpha {
            1 => 1,
            2 if n0.rem_euclid(4) == 1 => 2,
            a if a >= 3 && n0.rem_euclid(8) == 1 => 4,
            _ => 0,
        }
    } else {
        (1 + legendre(n0, p)) as u64
    }
}

/// Closed form for `C(p^alpha, n)` in factored form. `p` is assumed prime.
pub fn prime_power_count(p: u64, alpha: u32, n: i64) -> PrimePowerCount {
    if alpha == 0 {
        return PrimePowerCount::pure(p, 0);
    }
    if n == 0 {
        return PrimePowerCount::pure(p, alpha / 2);
    }
    let mut r = 0u32;
    let mut n0 = n as i128;
    while n0 % p as i128 == 0 {
        n0 /= p as i128;
        r += 1;
    }
    if r >= alpha {
        return PrimePowerCount::pure(p, alpha / 2);
    }
    if r % 2 == 1 {
        return PrimePowerCount::ZERO;
    }
    let unit = unit_count(p, alpha - r, n0 as i64);
    if unit == 0 {
        return PrimePowerCount::ZERO;
    }
    PrimePowerCount { unit, p, exponent: r / 2 }
}

pub fn count_roots_prime_power(p: u64, alpha: u32, n: i64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    prime_power_count(p, alpha, n).to_u64()
}

/// `C(m, n)` from a known factorization of `m`.
pub fn count_roots_factored(m: &PrimeFactorization, n: i64) -> Result<u64> {
    let mut acc = 1u64;
    for &(p, e) in m.factors() {
        let c = prime_power_count(p, e, n);
        if c.is_zero() {
            return Ok(0);
        }
        acc = acc.checked_mul(c.to_u64()?).ok_or(Error::Overflow("root count product"))?;
    }
    Ok(acc)
}

pub fn count_roots(m: u64, n: i64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("modulus 0"));
    }
    count_roots_factored(&factorize(m)?, n)
}

/// Coefficient of `m^{-s1} n^{-s2}` in the double series: `C(3m, -n)`.
pub fn coefficient(m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::domain("coefficient needs m, n >= 1"));
    }
    let modulus = m.checked_mul(3).ok_or(Error::Overflow("3m"))?;
    let n = i64::try_from(n).map_err(|_| Error::Overflow("-n"))?;
    count_roots(modulus, -n)
}
