//! Complex-number helpers and compensated summation.

use num_complex::Complex64;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `base^{-s}` for a positive real base, as `exp(-s · ln base)`.
#[inline]
pub fn pow_neg(base: f64, s: C64) -> C64 {
    pow_ln(base.ln(), -s)
}

/// `exp(z · ln_base)`; real exponents skip the trigonometric part.
#[inline]
pub fn pow_ln(ln_base: f64, z: C64) -> C64 {
    if z.im == 0.0 {
        real((z.re * ln_base).exp())
    } else {
        (z * ln_base).exp()
    }
}

/// `base^{s}` for a positive real base.
#[inline]
pub fn pow_pos(base: f64, s: C64) -> C64 {
    pow_ln(base.ln(), s)
}

/// `(e^z − 1)/z`, finite at `z = 0`.
pub fn expm1_over(z: C64) -> C64 {
    if z.norm() < 1e-4 {
        // 1 + z/2 + z²/6 + z³/24 + z⁴/120
        ONE + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)))
    } else {
        (z.exp() - ONE) / z
    }
}

/// Relative distance with the `1e-300` floor used for every comparison.
pub fn rel_err(lhs: C64, rhs: C64) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1e-300)
}

/// Neumaier-compensated complex accumulator; adding the same sequence in the
/// same order always reproduces the same bits.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

#[inline]
fn neumaier(acc: &mut (f64, f64), x: f64) {
    let t = acc.0 + x;
    if acc.0.abs() >= x.abs() {
        acc.1 += (acc.0 - t) + x;
    } else {
        acc.1 += (x - t) + acc.0;
    }
    acc.0 = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: C64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

impl FromIterator<C64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = C64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = C64>>(iter: I) -> C64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}
