//! Integer and modular arithmetic shared by every other module.

use crate::error::{Error, Result};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Ordered list of `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimeFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub(crate) fn from_sorted(factors: Vec<(u64, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Self { factors }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of `p^e`; `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }
}

/// `n = 2^c · kernel · N² · M²` with `kernel` odd squarefree, every prime of
/// `N` dividing `kernel`, and `M` odd and coprime to `kernel`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquarefreeSplit {
    pub two_exponent: u32,
    pub kernel: u64,
    pub ramified_square: u64,
    pub unramified_square: u64,
}

impl SquarefreeSplit {
    pub fn reconstruct(&self) -> Option<u64> {
        let two = 1u64.checked_shl(self.two_exponent)?;
        two.checked_mul(self.kernel)?
            .checked_mul(self.ramified_square.checked_mul(self.ramified_square)?)?
            .checked_mul(self.unramified_square.checked_mul(self.unramified_square)?)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Exponent of `p` in `n`; `n` must be nonzero and `p ≥ 2`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho; `n` odd composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(r - k).min(128) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Factorization by trial division up to 10⁶ with a Pollard-rho fallback.
pub fn factorize(n: u64) -> Result<PrimeFactorization> {
    if n == 0 {
        return Err(Error::domain("factorize(0) is undefined"));
    }
    if n > i64::MAX as u64 {
        return Err(Error::domain(format!("{n} exceeds 2^63 - 1")));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut p = 3;
    while p <= TRIAL_DIVISION_LIMIT && p * p <= rest {
        push(p, &mut rest);
        p += 2;
    }
    if rest > 1 {
        if p * p > rest {
            factors.push((rest, 1));
        } else {
            let mut large = Vec::new();
            split_large(rest, &mut large);
            large.sort_unstable();
            for chunk in large.chunk_by(|a, b| a == b) {
                factors.push((chunk[0], chunk.len() as u32));
            }
        }
    }
    Ok(PrimeFactorization::from_sorted(factors))
}

pub fn is_squarefree(n: u64) -> bool {
    match factorize(n) {
        Ok(f) => f.factors().iter().all(|&(_, e)| e == 1),
        Err(_) => false,
    }
}

pub fn squarefree_split(n: u64) -> Result<SquarefreeSplit> {
    let f = factorize(n)?;
    let mut split = SquarefreeSplit { two_exponent: 0, kernel: 1, ramified_square: 1, unramified_square: 1 };
    for &(p, e) in f.factors() {
        if p == 2 {
            split.two_exponent = e;
        } else if e % 2 == 1 {
            split.kernel *= p;
            split.ramified_square *= p.pow((e - 1) / 2);
        } else {
            split.unramified_square *= p.pow(e / 2);
        }
    }
    Ok(split)
}

/// Jacobi symbol `(a/m)` for odd positive `m`.
pub fn jacobi(a: i64, m: u64) -> i8 {
    debug_assert!(m % 2 == 1);
    let mut a = a.rem_euclid(m as i64) as u64;
    let mut m = m;
    let mut t = 1i8;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z % 2 == 1 && matches!(m % 8, 3 | 5) {
            t = -t;
        }
        if a % 4 == 3 && m % 4 == 3 {
            t = -t;
        }
        (a, m) = (m % a, a);
    }
    if m == 1 {
        t
    } else {
        0
    }
}

/// Full Kronecker symbol `(a/b)`.
pub fn kronecker(a: i64, b: i64) -> Result<i8> {
    if a == 0 && b == 0 {
        return Err(Error::domain("kronecker(0, 0) is undefined"));
    }
    if b == 0 {
        return Ok(if a == 1 || a == -1 { 1 } else { 0 });
    }
    let mut sign = 1i8;
    if b < 0 && a < 0 {
        sign = -1;
    }
    let mut m = b.unsigned_abs();
    let twos = m.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
        m >>= twos;
    }
    Ok(sign * jacobi(a, m))
}

/// Legendre-type symbol `(a/p)` for a prime `p` (Kronecker at `p = 2`).
pub fn legendre(a: i64, p: u64) -> i8 {
    if p == 2 {
        if a % 2 == 0 {
            0
        } else if matches!(a.rem_euclid(8), 1 | 7) {
            1
        } else {
            -1
        }
    } else {
        jacobi(a, p)
    }
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Smallest-prime-factor table for bulk factorization of `1..=limit`.
#[derive(Debug, Clone)]
pub struct SmallestPrimeFactor {
    spf: Vec<u32>,
}

impl SmallestPrimeFactor {
    pub fn new(limit: u32) -> Self {
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        if n >= 1 {
            spf[1] = 1;
        }
        Self { spf }
    }

    pub fn limit(&self) -> u32 {
        (self.spf.len() - 1) as u32
    }

    pub fn spf(&self, n: u32) -> u32 {
        self.spf[n as usize]
    }

    pub fn factorize(&self, mut n: u32) -> PrimeFactorization {
        let mut factors = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize];
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        PrimeFactorization::from_sorted(factors)
    }
}
