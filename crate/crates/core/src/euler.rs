//! Local Euler factors `Z_{n,p}(s)` of `Z_n(s) = Σ_m C(3m, −n) m^{-s}`.
//!
//! For `p ≠ 3` the factor is `Σ_k C(p^k, −n) p^{-ks}`; at `p = 3` the shift
//! `C(3^{k+1}, −n)` absorbs the extra 3 in the modulus. The truncated sum is
//! the oracle; [`local_factor_closed`] dispatches to the finite rational
//! expressions.

use std::fmt;

use crate::arith::{is_prime, legendre, valuation};
use crate::error::{Error, Result};
use crate::numeric::{compensated_sum, pow_ln, real, C64, ONE};
use crate::sqcount::prime_power_count;

/// Magnitude below which a denominator counts as a pole.
pub const POLE_THRESHOLD: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFactorInput {
    pub p: u64,
    pub n: u64,
    pub s: C64,
    pub order: u32,
}

/// Which closed form a `(p, n)` pair falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalCase {
    /// `p ∤ 6n`.
    Unramified,
    /// `p = 2`, `n` odd; carries `n mod 8`.
    Dyadic(u8),
    /// `p ≠ 3`, `p^r ‖ n`, `r` odd.
    RamifiedOdd(u32),
    /// `p ≠ 3`, `p^r ‖ n`, `r ≥ 2` even.
    RamifiedEven(u32),
    /// `p = 3`, `3 ∤ n`.
    TriadicUnit,
    /// `p = 3`, `3^r ‖ n`, `r` odd.
    TriadicOdd(u32),
    /// `p = 3`, `3^r ‖ n`, `r ≥ 2` even.
    TriadicEven(u32),
}

impl fmt::Display for LocalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalCase::Unramified => write!(f, "case1"),
            LocalCase::Dyadic(r) => write!(f, "case2[n={r} mod 8]"),
            LocalCase::RamifiedOdd(r) => write!(f, "case3i[r={r}]"),
            LocalCase::RamifiedEven(r) => write!(f, "case3ii[r={r}]"),
            LocalCase::TriadicUnit => write!(f, "case4i"),
            LocalCase::TriadicOdd(r) => write!(f, "case4ii[r={r}]"),
            LocalCase::TriadicEven(r) => write!(f, "case4iii[r={r}]"),
        }
    }
}

pub fn classify(p: u64, n: u64) -> LocalCase {
    let r = valuation(n, p);
    match (p, r) {
        (3, 0) => LocalCase::TriadicUnit,
        (3, r) if r % 2 == 1 => LocalCase::TriadicOdd(r),
        (3, r) => LocalCase::TriadicEven(r),
        (2, 0) => LocalCase::Dyadic((n % 8) as u8),
        (_, 0) => LocalCase::Unramified,
        (_, r) if r % 2 == 1 => LocalCase::RamifiedOdd(r),
        (_, r) => LocalCase::RamifiedEven(r),
    }
}

fn check_input(p: u64, n: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::domain("local factors need n >= 1"));
    }
    Ok(())
}

/// Truncated local series through `k = order`.
pub fn local_factor_oracle(inp: &LocalFactorInput) -> Result<C64> {
    check_input(inp.p, inp.n)?;
    let neg_n = -i64::try_from(inp.n).map_err(|_| Error::Overflow("-n"))?;
    let shift = u32::from(inp.p == 3);
    let ln_p = (inp.p as f64).ln();
    let terms = (0..=inp.order).filter_map(|k| {
        let c = prime_power_count(inp.p, k + shift, neg_n);
        if c.is_zero() {
            return None;
        }
        // unit · p^e · p^{-ks}
        let z = C64::new(c.exponent as f64, 0.0) - inp.s * k as f64;
        Some(pow_ln(ln_p, z) * c.unit as f64)
    });
    Ok(compensated_sum(terms))
}

struct Powers {
    p: f64,
    ln_p: f64,
    s: C64,
}

impl Powers {
    fn new(p: u64, s: C64) -> Self {
        let p = p as f64;
        Self { p, ln_p: p.ln(), s }
    }

    /// `p^{a + b·s}`.
    fn pow(&self, a: f64, b: f64) -> C64 {
        pow_ln(self.ln_p, real(a) + self.s * b)
    }

    fn div(&self, num: C64, den: C64, name: &str) -> Result<C64> {
        if den.norm() < POLE_THRESHOLD {
            return Err(Error::pole(format!("{name} at p = {}", self.p), self.s));
        }
        Ok(num / den)
    }

    /// `(1 − p^{-2s})/(1 − p^{-s})`.
    fn zeta_ratio(&self) -> Result<C64> {
        self.div(ONE - self.pow(0.0, -2.0), ONE - self.pow(0.0, -1.0), "1 - p^-s")
    }

    /// `(1 − p^{(1−2s)k})/(1 − p^{1−2s})`.
    fn geometric(&self, k: f64) -> Result<C64> {
        self.div(ONE - self.pow(k, -2.0 * k), ONE - self.pow(1.0, -2.0), "1 - p^(1-2s)")
    }
}

fn unramified(pw: &Powers, eta: f64) -> Result<C64> {
    let l = pw.div(ONE, ONE - pw.pow(0.0, -1.0) * eta, "1 - eta(p) p^-s")?;
    Ok(pw.zeta_ratio()? * l)
}

fn dyadic(pw: &Powers, n_mod_8: u64) -> Result<C64> {
    let x = pw.pow(0.0, -1.0);
    Ok(match n_mod_8 {
        1 | 5 => ONE + x,
        3 => ONE + x + x * x * 2.0,
        7 => pw.zeta_ratio()? * pw.div(x * x * 2.0 - x + ONE, ONE - x, "1 - 2^-s")?,
        _ => unreachable!("n odd"),
    })
}

fn unit_case(p: u64, n0: u64, pw: &Powers) -> Result<C64> {
    if p == 2 {
        dyadic(pw, n0 % 8)
    } else {
        unramified(pw, legendre(-(n0 as i64), p) as f64)
    }
}

/// Even-`r` ramified factor as geometric part plus `p^{r/2 − rs}` times the
/// unit factor of `n0 = n / p^r`.
pub fn ramified_even_recursive(p: u64, n: u64, s: C64) -> Result<C64> {
    check_input(p, n)?;
    let r = valuation(n, p);
    if p == 3 || r == 0 || r % 2 == 1 {
        return Err(Error::domain(format!("p = {p}, n = {n} is not an even ramified local case")));
    }
    let n0 = n / p.pow(r);
    let pw = Powers::new(p, s);
    let half = r as f64 / 2.0;
    Ok(pw.zeta_ratio()? * pw.geometric(half)? + pw.pow(half, -(r as f64)) * unit_case(p, n0, &pw)?)
}

/// Even-`r` ramified factor for odd `p` as one rational function.
pub fn ramified_even_rational(p: u64, n: u64, s: C64) -> Result<C64> {
    check_input(p, n)?;
    let r = valuation(n, p);
    if p == 2 || p == 3 || r == 0 || r % 2 == 1 {
        return Err(Error::domain(format!("p = {p}, n = {n} is not an odd-prime even ramified case")));
    }
    let n0 = n / p.pow(r);
    let pw = Powers::new(p, s);
    let eta = legendre(-(n0 as i64), p) as f64;
    let rf = r as f64;
    let p_rs = pw.pow(0.0, rf);
    let one_minus_eta = ONE - pw.pow(0.0, -1.0) * eta;
    let num = p_rs * one_minus_eta + pw.pow(rf / 2.0, -1.0) * eta * (ONE - pw.pow(1.0, -1.0) * eta);
    let den = (ONE - pw.pow(1.0, -2.0)) * p_rs * one_minus_eta;
    Ok(pw.zeta_ratio()? * pw.div(num, den, "(1 - p^(1-2s)) p^rs (1 - eta p^-s)")?)
}

/// Closed form of `Z_{n,p}(s)`.
pub fn local_factor_closed(p: u64, n: u64, s: C64) -> Result<C64> {
    check_input(p, n)?;
    let pw = Powers::new(p, s);
    match classify(p, n) {
        LocalCase::Unramified => unramified(&pw, legendre(-(n as i64), p) as f64),
        LocalCase::Dyadic(r) => dyadic(&pw, r as u64),
        LocalCase::RamifiedOdd(r) => Ok(pw.zeta_ratio()? * pw.geometric((r as f64 + 1.0) / 2.0)?),
        // the single-fraction form recurses into the odd-prime unit factor,
        // so at p = 2 only the recursive form is valid
        LocalCase::RamifiedEven(_) if p == 2 => ramified_even_recursive(p, n, s),
        LocalCase::RamifiedEven(_) => ramified_even_rational(p, n, s),
        LocalCase::TriadicUnit => {
            let e = 1.0 + legendre(-(n as i64), 3) as f64;
            pw.div(real(e), ONE - pw.pow(0.0, -1.0), "1 - 3^-s")
        }
        LocalCase::TriadicOdd(r) => {
            let head = pw.pow(1.0, -1.0) + pw.pow(1.0, -2.0);
            Ok(ONE + head * pw.geometric((r as f64 - 1.0) / 2.0)?)
        }
        LocalCase::TriadicEven(r) => {
            let n0 = n / 3u64.pow(r);
            let half = r as f64 / 2.0;
            let e = 1.0 + legendre(-(n0 as i64), 3) as f64;
            let unit = pw.div(real(e), ONE - pw.pow(0.0, -1.0), "1 - 3^-s")?;
            Ok((ONE + pw.pow(1.0, -1.0)) * pw.geometric(half)? + pw.pow(half, -(r as f64)) * unit)
        }
    }
}

/// `Π_{p ≤ bound} Z_{n,p}(s)` in ascending prime order.
pub fn euler_product(n: u64, s: C64, primes: &[u64]) -> Result<C64> {
    let mut acc = ONE;
    for &p in primes {
        acc *= local_factor_closed(p, n, s)?;
    }
    Ok(acc)
}
