//! Hurwitz zeta `ζ(s, x) = Σ_{k ≥ 0} (k + x)^{-s}` by Euler–Maclaurin
//! summation with Bernoulli corrections through `B_30`.

use crate::error::{Error, Result};
use crate::numeric::{expm1_over, pow_ln, C64, ONE};

/// `B_{2j} / (2j)!` for `j = 1..=16`; the last entry only feeds the error
/// estimate.
const BERNOULLI_OVER_FACT: [f64; 16] = [
    0.083_333_333_333_333_33,
    -0.001_388_888_888_888_889,
    3.306_878_306_878_307e-5,
    -8.267_195_767_195_768e-7,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_582_7e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
    5.509_002_828_360_229_5e-18,
    -1.395_446_468_581_252_2e-19,
    3.534_707_039_629_467e-21,
    -8.953_517_427_037_546e-23,
    2.267_952_452_337_683e-24,
    -5.744_790_668_872_202e-26,
];

const CORRECTIONS: usize = 15;

/// Accuracy envelope: `|Im s| ≤ 50`, `Re s ≥ -2`.
pub const MAX_IM: f64 = 50.0;
pub const MIN_RE: f64 = -2.0;

const TARGET: f64 = 1e-17;
const MAX_SHIFT: u64 = 100_000;

fn first_omitted(s: C64) -> f64 {
    // |(s)_{31}|
    let mut poch = 1.0;
    for k in 0..(2 * CORRECTIONS + 1) {
        poch *= (s + k as f64).norm();
    }
    (BERNOULLI_OVER_FACT[CORRECTIONS] * poch).abs()
}

/// Bound on the omitted remainder at abscissa `x`.
pub(crate) fn remainder_bound(s: C64, x: f64) -> f64 {
    first_omitted(s) * x.powf(-s.re - 2.0 * CORRECTIONS as f64 - 1.0)
}

/// Smallest shift `N ≥ 1` with remainder bound below the target at `N`.
pub(crate) fn choose_shift(s: C64) -> u64 {
    let lead = first_omitted(s);
    let expo = s.re + 2.0 * CORRECTIONS as f64 + 1.0;
    let mut n = 1u64;
    while n < MAX_SHIFT && lead * (n as f64).powf(-expo) > TARGET {
        n += 1;
    }
    n
}

/// `X^{-s}/2 + Σ_j B_{2j}/(2j)! (s)_{2j-1} X^{-s-2j+1}`: the regular part of
/// `Σ_{k≥0} (X + k)^{-s} − X^{1-s}/(s − 1)`.
pub(crate) fn regular_tail(s: C64, x: f64) -> C64 {
    let x_s = pow_ln(x.ln(), -s);
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut poch = s;
    let mut scale = inv;
    let mut acc = C64::new(0.5, 0.0);
    for (j, &b) in BERNOULLI_OVER_FACT.iter().take(CORRECTIONS).enumerate() {
        acc += poch * (b * scale);
        let k = (2 * j + 1) as f64;
        poch *= (s + k) * (s + k + 1.0);
        scale *= inv2;
    }
    x_s * acc
}

/// `(X^{1-s} − 1)/(s − 1)`, finite at `s = 1`.
pub(crate) fn shifted_singular(s: C64, x: f64) -> C64 {
    let lx = x.ln();
    -expm1_over((ONE - s) * lx) * lx
}

/// Value and error estimate of `ζ(s, x)` for `x ∈ (0, 1]`.
pub fn hurwitz_zeta_with_error(s: C64, x: f64) -> Result<(C64, f64)> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::domain(format!("Hurwitz parameter {x} outside (0, 1]")));
    }
    if (s - ONE).norm() < 1e-13 {
        return Err(Error::pole("zeta(s, x)", s));
    }
    let n = choose_shift(s);
    let head: C64 = crate::numeric::compensated_sum((0..n).map(|k| pow_ln((k as f64 + x).ln(), -s)));
    let big_x = n as f64 + x;
    let singular = pow_ln(big_x.ln(), ONE - s) / (s - ONE);
    let value = head + singular + regular_tail(s, big_x);
    Ok((value, remainder_bound(s, big_x)))
}

pub fn hurwitz_zeta(s: C64, x: f64) -> Result<C64> {
    hurwitz_zeta_with_error(s, x).map(|(v, _)| v)
}
