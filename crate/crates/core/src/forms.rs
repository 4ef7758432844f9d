//! Binary cubic forms `ax³ + bx²y + cxy² + dy³`, their relative invariants
//! under the unipotent translations `(x, y) ↦ (x + ky, y)`, reduction to the
//! fundamental domain, and enumeration of the `(a, b, c)` triples summed by
//! the double series.

use serde::{Deserialize, Serialize};

use crate::arith::is_squarefree;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryCubicForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// `r2 = b² − 3ac` keeps its textbook sign (negative on positive definite
/// forms); the series variable is `n = −r2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTuple {
    pub r1: i128,
    pub r2: i128,
    pub r3: i128,
    pub r4: i128,
}

macro_rules! checked {
    ($e:expr) => {
        $e.ok_or(Error::Overflow("cubic form arithmetic"))
    };
}

impl BinaryCubicForm {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn invariants(&self) -> Result<InvariantTuple> {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let mul = |x: i128, y: i128| checked!(x.checked_mul(y));
        let prod = |xs: &[i128]| -> Result<i128> { xs.iter().try_fold(1i128, |acc, &x| mul(acc, x)) };
        let sum = |xs: &[i128]| -> Result<i128> { xs.iter().try_fold(0i128, |acc, &x| checked!(acc.checked_add(x))) };
        let r2 = checked!(prod(&[b, b])?.checked_sub(prod(&[3, a, c])?))?;
        let r3 = sum(&[prod(&[2, b, b, b])?, prod(&[27, a, a, d])?, -prod(&[9, a, b, c])?])?;
        let r4 = sum(&[
            prod(&[b, b, c, c])?,
            prod(&[18, a, b, c, d])?,
            -prod(&[4, a, c, c, c])?,
            -prod(&[4, b, b, b, d])?,
            -prod(&[27, a, a, d, d])?,
        ])?;
        Ok(InvariantTuple { r1: a, r2, r3, r4 })
    }

    pub fn is_positive_definite(&self) -> bool {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        a > 0 && b * b - 3 * a * c < 0
    }

    /// Coefficients of `f(x + ky, y)`.
    pub fn gamma_shift(&self, k: i64) -> Result<Self> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let nb = checked!(a.checked_mul(3).and_then(|t| t.checked_mul(k)).and_then(|t| t.checked_add(b)))?;
        let k2 = checked!(k.checked_mul(k))?;
        let k3 = checked!(k2.checked_mul(k))?;
        let nc = checked!((|| {
            a.checked_mul(3)?.checked_mul(k2)?.checked_add(b.checked_mul(2)?.checked_mul(k)?)?.checked_add(c)
        })())?;
        let nd = checked!((|| {
            a.checked_mul(k3)?.checked_add(b.checked_mul(k2)?)?.checked_add(c.checked_mul(k)?)?.checked_add(d)
        })())?;
        Ok(Self::new(a, nb, nc, nd))
    }

    pub fn is_reduced(&self) -> bool {
        self.is_positive_definite() && (0..3 * self.a).contains(&self.b)
    }

    /// Translate into the fundamental domain `0 ≤ b ≤ 3a − 1`.
    pub fn reduce(&self) -> Result<Self> {
        if !self.is_positive_definite() {
            return Err(Error::domain(format!("{self:?} is not positive definite")));
        }
        let k = -self.b.div_euclid(3 * self.a);
        self.gamma_shift(k)
    }
}

/// One summand of the double series: a reduced `(a, b, c)` with
/// `n = 3ac − b²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormTriple {
    pub a: u64,
    pub b: u64,
    pub c: i64,
    pub n: u64,
}

/// Lexicographic `(a, b, c)` stream of reduced triples with `1 ≤ n ≤ n_max`.
#[derive(Debug, Clone)]
pub struct Representatives {
    m_max: u64,
    n_max: u64,
    odd_squarefree: bool,
    a: u64,
    b: u64,
    c: i64,
    c_hi: i64,
}

impl Representatives {
    fn c_bounds(a: u64, b: u64, n_max: u64) -> (i64, i64) {
        let b2 = (b * b) as i64;
        let t = (3 * a) as i64;
        let lo = (b2 + 1 + t - 1).div_euclid(t);
        let hi = (b2 + n_max as i64).div_euclid(t);
        (lo, hi)
    }

    fn start_cell(&mut self) {
        let (lo, hi) = Self::c_bounds(self.a, self.b, self.n_max);
        self.c = lo;
        self.c_hi = hi;
    }
}

impl Iterator for Representatives {
    type Item = FormTriple;

    fn next(&mut self) -> Option<FormTriple> {
        loop {
            if self.a > self.m_max {
                return None;
            }
            if self.c > self.c_hi {
                self.b += 1;
                if self.b >= 3 * self.a {
                    self.a += 1;
                    self.b = 0;
                    if self.a > self.m_max {
                        return None;
                    }
                }
                self.start_cell();
                continue;
            }
            let c = self.c;
            self.c += 1;
            let n = 3 * self.a as i64 * c - (self.b * self.b) as i64;
            debug_assert!(n >= 1 && n as u64 <= self.n_max);
            let n = n as u64;
            if self.odd_squarefree && !(n % 2 == 1 && is_squarefree(n)) {
                continue;
            }
            return Some(FormTriple { a: self.a, b: self.b, c, n });
        }
    }
}

pub fn enumerate_representatives(m_max: u64, n_max: u64, require_odd_squarefree: bool) -> Result<Representatives> {
    if m_max == 0 || n_max == 0 {
        return Err(Error::domain("enumeration bounds must be >= 1"));
    }
    let mut it = Representatives { m_max, n_max, odd_squarefree: require_odd_squarefree, a: 1, b: 0, c: 0, c_hi: -1 };
    it.start_cell();
    Ok(it)
}

/// Number of `b ∈ [0, 3m)` with `b² ≡ −n (mod 3m)`, each giving the positive
/// integer `c = (n + b²)/(3m)`.
pub fn count_forms(m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::domain("count_forms needs m, n >= 1"));
    }
    let modulus = 3 * m;
    let mut count = 0;
    for b in 0..modulus {
        let num = n + b * b;
        if num.is_multiple_of(modulus) {
            debug_assert!(num / modulus >= 1);
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sqcount::coefficient;
    use proptest::prelude::*;

    // Sylvester determinant of f(x, 1) and f'(x, 1); Disc = −Res(f, f')/a.
    fn sylvester_discriminant(f: &BinaryCubicForm) -> i128 {
        let (a, b, c, d) = (f.a as i128, f.b as i128, f.c as i128, f.d as i128);
        let rows: [[i128; 5]; 5] = [
            [a, b, c, d, 0],
            [0, a, b, c, d],
            [3 * a, 2 * b, c, 0, 0],
            [0, 3 * a, 2 * b, c, 0],
            [0, 0, 3 * a, 2 * b, c],
        ];
        fn det(m: Vec<Vec<i128>>) -> i128 {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            (0..n)
                .map(|j| {
                    let minor = m[1..]
                        .iter()
                        .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                        .collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * m[0][j] * det(minor)
                })
                .sum()
        }
        let res = det(rows.iter().map(|r| r.to_vec()).collect());
        -res / a
    }

    #[test]
    fn invariant_examples() {
        let inv = BinaryCubicForm::new(1, 0, 1, 0).invariants().unwrap();
        assert_eq!((inv.r1, inv.r2, inv.r3, inv.r4), (1, -3, 0, -4));
        let inv = BinaryCubicForm::new(1, 0, 0, 0).invariants().unwrap();
        assert_eq!((inv.r1, inv.r2, inv.r3, inv.r4), (1, 0, 0, 0));
        assert_eq!(BinaryCubicForm::new(1, 1, 1, 1).invariants().unwrap().r4, -16);
        assert!(BinaryCubicForm::new(i64::MAX, i64::MAX, i64::MAX, i64::MAX).invariants().is_err());
    }

    #[test]
    fn positivity_and_shift_examples() {
        assert!(BinaryCubicForm::new(1, 0, 1, 0).is_positive_definite());
        assert!(!BinaryCubicForm::new(1, 0, 0, 0).is_positive_definite());
        assert!(!BinaryCubicForm::new(-1, 0, -1, 0).is_positive_definite());
        let f = BinaryCubicForm::new(1, 0, 1, 0);
        assert_eq!(f.gamma_shift(0).unwrap(), f);
        assert_eq!(f.gamma_shift(1).unwrap(), BinaryCubicForm::new(1, 3, 4, 2));
        assert_eq!(f.gamma_shift(1).unwrap().gamma_shift(-1).unwrap(), f);
        assert!(BinaryCubicForm::new(i64::MAX / 2, 0, 0, 0).gamma_shift(3).is_err());
    }

    #[test]
    fn reduce_examples() {
        let f = BinaryCubicForm::new(1, 0, 1, 5);
        assert_eq!(f.reduce().unwrap(), f);
        assert_eq!(BinaryCubicForm::new(1, 3, 4, 2).reduce().unwrap(), BinaryCubicForm::new(1, 0, 1, 0));
        let g = BinaryCubicForm::new(2, 7, 9, 0).reduce().unwrap();
        assert_eq!(g.b, 1);
        assert!(g.is_reduced());
        assert!(BinaryCubicForm::new(1, 0, 0, 0).reduce().is_err());
    }

    #[test]
    fn smallest_enumeration() {
        let got: Vec<_> = enumerate_representatives(1, 2, false).unwrap().collect();
        assert_eq!(got, vec![FormTriple { a: 1, b: 1, c: 1, n: 2 }, FormTriple { a: 1, b: 2, c: 2, n: 2 }]);
        // n = 2 is even, so the odd-squarefree stream is empty here
        assert_eq!(enumerate_representatives(1, 2, true).unwrap().count(), 0);
        let odd: Vec<_> = enumerate_representatives(1, 3, true).unwrap().collect();
        assert_eq!(odd, vec![FormTriple { a: 1, b: 0, c: 1, n: 3 }]);
        assert!(enumerate_representatives(0, 5, true).is_err());
        assert!(enumerate_representatives(5, 0, true).is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let got: Vec<_> = enumerate_representatives(12, 80, false).unwrap().collect();
        assert!(got.windows(2).all(|w| (w[0].a, w[0].b, w[0].c) < (w[1].a, w[1].b, w[1].c)));
        let mut brute = Vec::new();
        for a in 1..=12i64 {
            for b in 0..3 * a {
                for c in -50..200i64 {
                    let n = 3 * a * c - b * b;
                    if (1..=80).contains(&n) {
                        brute.push(FormTriple { a: a as u64, b: b as u64, c, n: n as u64 });
                    }
                }
            }
        }
        assert_eq!(got, brute);
    }

    #[test]
    fn cell_counts_equal_coefficient() {
        let mut cells = std::collections::BTreeMap::new();
        for t in enumerate_representatives(40, 120, false).unwrap() {
            *cells.entry((t.a, t.n)).or_insert(0u64) += 1;
        }
        for m in 1..=40u64 {
            for n in 1..=120u64 {
                let c = cells.get(&(m, n)).copied().unwrap_or(0);
                assert_eq!(c, coefficient(m, n).unwrap(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn count_forms_examples() {
        assert_eq!(count_forms(1, 2).unwrap(), 2);
        assert_eq!(count_forms(1, 1).unwrap(), 0);
    }

    #[test]
    fn bijection_with_coefficient() {
        for m in 1..=300u64 {
            for n in 1..=300u64 {
                assert_eq!(count_forms(m, n).unwrap(), coefficient(m, n).unwrap(), "m={m} n={n}");
            }
        }
    }

    fn small_form() -> impl Strategy<Value = BinaryCubicForm> {
        (-60i64..60, -60i64..60, -60i64..60, -60i64..60).prop_map(|(a, b, c, d)| BinaryCubicForm::new(a, b, c, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn invariants_unchanged_by_translation(f in small_form(), k in -5i64..=5) {
            let g = f.gamma_shift(k).unwrap();
            prop_assert_eq!(f.invariants().unwrap(), g.invariants().unwrap());
        }

        #[test]
        fn reduce_is_idempotent(a in 1i64..60, b in -500i64..500, c_extra in 1i64..100, d in -50i64..50) {
            // choose c so that b² − 3ac < 0
            let c = (b * b) / (3 * a) + c_extra;
            let f = BinaryCubicForm::new(a, b, c, d);
            let r = f.reduce().unwrap();
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.reduce().unwrap(), r);
            prop_assert_eq!(r.invariants().unwrap(), f.invariants().unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1_000))]

        #[test]
        fn r4_is_the_sylvester_discriminant(f in small_form()) {
            prop_assume!(f.a != 0);
            prop_assert_eq!(f.invariants().unwrap().r4, sylvester_discriminant(&f));
        }
    }
}
