//! Complex Γ via the Lanczos approximation (g = 7, nine coefficients) in
//! logarithmic form, with reflection for `Re z < 1/2`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::{C64, ONE};

const G: f64 = 7.0;
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn ln_gamma_right(z: C64) -> C64 {
    let z = z - 1.0;
    let mut x = C64::new(COEFFS[0], 0.0);
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

fn at_pole(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && (z.re - z.re.round()).abs() < 1e-14
}

/// `log Γ(z)` up to a multiple of `2πi`.
pub fn ln_gamma(z: C64) -> Result<C64> {
    if at_pole(z) {
        return Err(Error::pole("Gamma", z));
    }
    if z.re < 0.5 {
        let sin = (z * PI).sin();
        Ok(C64::new(PI.ln(), 0.0) - sin.ln() - ln_gamma_right(ONE - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

pub fn gamma(z: C64) -> Result<C64> {
    Ok(ln_gamma(z)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rel_err;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn classical_values() {
        assert!(rel_err(gamma(re(0.5)).unwrap(), re(PI.sqrt())) < 1e-14);
        assert!(rel_err(gamma(re(5.0)).unwrap(), re(24.0)) < 1e-14);
        assert!(rel_err(gamma(re(-0.5)).unwrap(), re(-2.0 * PI.sqrt())) < 1e-14);
        let g = gamma(C64::new(1.0, 1.0)).unwrap();
        assert!(rel_err(g, C64::new(0.498_015_668_118_356, -0.154_949_828_301_810_7)) < 1e-13);
    }

    #[test]
    fn poles() {
        for k in 0..5 {
            assert!(matches!(gamma(re(-(k as f64))), Err(Error::Pole { .. })));
        }
        assert!(gamma(C64::new(-1.0, 1e-9)).is_ok());
    }

    #[test]
    fn recurrence_and_reflection_in_the_envelope() {
        for &im in &[0.0, 0.7, 5.0, 20.0, 50.0] {
            for &r in &[-1.7, -0.3, 0.15, 0.5, 0.8, 2.3, 7.9] {
                let z = C64::new(r, im);
                if at_pole(z) {
                    continue;
                }
                let lhs = gamma(z + 1.0).unwrap();
                let rhs = z * gamma(z).unwrap();
                assert!(rel_err(lhs, rhs) < 1e-12, "z={z}");
                let refl = gamma(z).unwrap() * gamma(ONE - z).unwrap() * (z * PI).sin();
                assert!(rel_err(refl, re(PI)) < 1e-12, "z={z}");
            }
        }
    }

    #[test]
    fn duplication_formula() {
        // Γ(z)Γ(z + 1/2) = 2^{1-2z} √π Γ(2z)
        for z in [C64::new(0.3, 2.0), C64::new(1.25, -7.0), C64::new(3.0, 24.0)] {
            let lhs = gamma(z).unwrap() * gamma(z + 0.5).unwrap();
            let rhs = (ONE * 2.0).powc(ONE - 2.0 * z) * PI.sqrt() * gamma(2.0 * z).unwrap();
            assert!(rel_err(lhs, rhs) < 1e-12, "z={z}");
        }
    }
}
