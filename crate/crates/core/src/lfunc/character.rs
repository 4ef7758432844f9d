//! Dirichlet characters as dense value tables.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use crate::arith::{factorize, gcd, jacobi, kronecker, lcm};
use crate::error::{Error, Result};
use crate::numeric::{compensated_sum, C64, ONE, ZERO};

const EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<C64>,
    parity: u8,
    is_real: bool,
    conductor: OnceLock<u64>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.values.iter().zip(&other.values).all(|(a, b)| (a - b).norm() < EPS)
    }
}

/// `e^{2πi num/den}`, exact at quarter turns.
fn root_of_unity(num: u64, den: u64) -> C64 {
    let num = num % den;
    match (4 * num).checked_rem(den) {
        Some(0) => match 4 * num / den {
            0 => ONE,
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        },
        _ => {
            let (s, c) = (TAU * num as f64 / den as f64).sin_cos();
            C64::new(c, s)
        }
    }
}

fn modulus_usize(q: u64) -> Result<usize> {
    if q == 0 {
        return Err(Error::domain("character modulus 0"));
    }
    if q > 1 << 26 {
        return Err(Error::Refused(format!("dense table for modulus {q} is too large")));
    }
    Ok(q as usize)
}

impl DirichletCharacter {
    fn from_parts(modulus: u64, values: Vec<C64>) -> Self {
        let minus_one = values[(modulus - 1) as usize];
        let parity = u8::from(modulus > 2 && minus_one.re < 0.0);
        let is_real = values.iter().all(|v| v.im == 0.0);
        Self { modulus, values, parity, is_real, conductor: OnceLock::new() }
    }

    /// Builds a character from its table; only the shape and `χ(1) = 1` are
    /// checked here, see [`Self::check_invariants`] for the full audit.
    pub fn from_table(modulus: u64, values: Vec<C64>) -> Result<Self> {
        let q = modulus_usize(modulus)?;
        if values.len() != q {
            return Err(Error::domain(format!("table of length {} for modulus {modulus}", values.len())));
        }
        if modulus > 1 && (values[1] - ONE).norm() > EPS {
            return Err(Error::domain("chi(1) must be 1"));
        }
        Ok(Self::from_parts(modulus, values))
    }

    /// Table from a function evaluated on residues coprime to the modulus.
    pub fn from_fn(modulus: u64, f: impl Fn(u64) -> C64) -> Result<Self> {
        let q = modulus_usize(modulus)?;
        let values = (0..q as u64).map(|m| if gcd(m, modulus) == 1 { f(m) } else { ZERO }).collect();
        Self::from_table(modulus, values)
    }

    pub fn principal(modulus: u64) -> Result<Self> {
        Self::from_fn(modulus, |_| ONE)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// `a` with `χ(−1) = (−1)^a`.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    #[inline]
    pub fn value(&self, m: u64) -> C64 {
        self.values[(m % self.modulus) as usize]
    }

    #[inline]
    pub fn eval(&self, m: i64) -> C64 {
        self.values[m.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|v| v.norm() < EPS || (v - ONE).norm() < EPS)
    }

    /// Smallest `d | q` such that `χ` is trivial on units `≡ 1 (mod d)`.
    pub fn conductor(&self) -> u64 {
        *self.conductor.get_or_init(|| {
            let q = self.modulus;
            divisors(q)
                .into_iter()
                .find(|&d| {
                    (1..q).step_by(d as usize).all(|a| gcd(a, q) != 1 || (self.values[a as usize] - ONE).norm() < EPS)
                })
                .unwrap_or(q)
        })
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Self {
        let d = self.conductor();
        if d == self.modulus {
            return self.clone();
        }
        let values = (0..d)
            .map(|r| {
                if gcd(r, d) != 1 {
                    return ZERO;
                }
                let lift = (0..self.modulus / d)
                    .map(|k| r + k * d)
                    .find(|&a| gcd(a, self.modulus) == 1)
                    .expect("a unit lifts every residue coprime to the conductor");
                self.values[lift as usize]
            })
            .collect();
        Self::from_parts(d, values)
    }

    /// Pointwise product, a character modulo the lcm.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let q = lcm(self.modulus, other.modulus);
        modulus_usize(q)?;
        let values = (0..q).map(|m| self.value(m) * other.value(m)).collect();
        Ok(Self::from_parts(q, values))
    }

    pub fn square(&self) -> Self {
        let values = self.values.iter().map(|v| v * v).collect();
        Self::from_parts(self.modulus, values)
    }

    pub fn conj(&self) -> Self {
        let values = self.values.iter().map(|v| v.conj()).collect();
        Self::from_parts(self.modulus, values)
    }

    /// Exhaustive audit of the table: zero off the units, roots of unity on
    /// them, complete multiplicativity and the stored parity.
    pub fn check_invariants(&self) -> Result<()> {
        let q = self.modulus;
        let mut order = 1u64;
        for a in 0..q {
            let v = self.values[a as usize];
            if gcd(a, q) != 1 {
                if v.norm() > EPS {
                    return Err(Error::domain(format!("chi({a}) != 0 with gcd({a}, {q}) > 1")));
                }
                continue;
            }
            if (v.norm() - 1.0).abs() > EPS {
                return Err(Error::domain(format!("|chi({a})| != 1")));
            }
            order = lcm(order, element_order(v, q)?);
        }
        let phi = self.values.iter().filter(|v| v.norm() > EPS).count() as u64;
        if !phi.is_multiple_of(order) {
            return Err(Error::domain("character order does not divide phi(q)"));
        }
        for a in 0..q {
            for b in a..q {
                let lhs = self.values[(a * b % q) as usize];
                let rhs = self.values[a as usize] * self.values[b as usize];
                if (lhs - rhs).norm() > 1e-9 {
                    return Err(Error::domain(format!("chi({a}*{b}) != chi({a}) chi({b})")));
                }
            }
        }
        let expected = if self.parity == 1 { -1.0 } else { 1.0 };
        if q > 2 && (self.value(q - 1) - C64::new(expected, 0.0)).norm() > EPS {
            return Err(Error::domain("parity mismatch"));
        }
        Ok(())
    }
}

fn element_order(v: C64, bound: u64) -> Result<u64> {
    let mut z = v;
    for k in 1..=bound.max(1) {
        if (z - ONE).norm() < 1e-9 {
            return Ok(k);
        }
        z *= v;
    }
    Err(Error::domain("value is not a root of unity of order <= q"))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// One cyclic factor of `(ℤ/qℤ)^×`: discrete logs of every residue mod q
/// with respect to a generator of order `order` (`u64::MAX` off the units).
struct CyclicComponent {
    order: u64,
    logs: Vec<u64>,
}

fn cyclic_components(q: u64) -> Result<Vec<CyclicComponent>> {
    let qs = modulus_usize(q)?;
    let mut out = Vec::new();
    for &(p, e) in factorize(q)?.factors() {
        let pe = p.pow(e);
        let mut gens: Vec<(u64, u64)> = Vec::new();
        if p == 2 {
            if e >= 2 {
                gens.push((pe - 1, 2));
            }
            if e >= 3 {
                gens.push((5, pe / 4));
            }
        } else {
            let phi = pe / p * (p - 1);
            let g = (2..pe)
                .find(|&g| gcd(g, p) == 1 && multiplicative_order(g, pe) == phi)
                .expect("odd prime powers are cyclic");
            gens.push((g, phi));
        }
        if gens.is_empty() {
            continue;
        }
        // walk the group as products of generator powers
        let mut local_logs: Vec<Vec<u64>> = vec![vec![u64::MAX; pe as usize]; gens.len()];
        let sizes: Vec<u64> = gens.iter().map(|g| g.1).collect();
        let total: u64 = sizes.iter().product();
        let mut idx = vec![0u64; gens.len()];
        for _ in 0..total {
            let mut x = 1u64;
            for (i, &(g, _)) in gens.iter().enumerate() {
                x = x * crate::arith::pow_mod(g, idx[i], pe) % pe;
            }
            for i in 0..gens.len() {
                local_logs[i][x as usize] = idx[i];
            }
            for i in (0..gens.len()).rev() {
                idx[i] += 1;
                if idx[i] < sizes[i] {
                    break;
                }
                idx[i] = 0;
            }
        }
        for (i, &(_, order)) in gens.iter().enumerate() {
            let logs = (0..qs as u64).map(|m| local_logs[i][(m % pe) as usize]).collect();
            out.push(CyclicComponent { order, logs });
        }
    }
    Ok(out)
}

fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = x * g % m;
        k += 1;
    }
    k
}

/// Every character modulo `q`, in mixed-radix order over the cyclic factors.
pub fn all_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    let comps = cyclic_components(q)?;
    let total: u64 = comps.iter().map(|c| c.order).product();
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0u64; comps.len()];
    for _ in 0..total {
        let values = (0..q)
            .map(|m| {
                if gcd(m, q) != 1 {
                    return ZERO;
                }
                comps.iter().zip(&idx).fold(ONE, |acc, (c, &k)| acc * root_of_unity(k * c.logs[m as usize], c.order))
            })
            .collect();
        out.push(DirichletCharacter::from_parts(q, values));
        for i in (0..comps.len()).rev() {
            idx[i] += 1;
            if idx[i] < comps[i].order {
                break;
            }
            idx[i] = 0;
        }
    }
    Ok(out)
}

fn sign(v: i8) -> C64 {
    C64::new(v as f64, 0.0)
}

/// `η_{−n}(m) = (−n/m)` on units modulo `4n`.
pub fn character_eta(n: u64) -> Result<DirichletCharacter> {
    if n == 0 {
        return Err(Error::domain("eta_{-n} needs n >= 1"));
    }
    let q = n.checked_mul(4).ok_or(Error::Overflow("4n"))?;
    let neg = -i64::try_from(n).map_err(|_| Error::Overflow("-n"))?;
    DirichletCharacter::from_fn(q, |m| sign(jacobi(neg, m)))
}

/// The non-principal character modulo 4.
pub fn chi4() -> DirichletCharacter {
    DirichletCharacter::from_fn(4, |m| sign(jacobi(-1, m))).expect("modulus 4")
}

/// `𝟙_3`.
pub fn one3() -> DirichletCharacter {
    DirichletCharacter::principal(3).expect("modulus 3")
}

/// `𝟙_6`.
pub fn one6() -> DirichletCharacter {
    DirichletCharacter::principal(6).expect("modulus 6")
}

/// Residues whose signs index the characters modulo 24.
pub const MOD24_GENERATORS: [u64; 3] = [5, 7, 13];

/// The character mod 24 with `χ(5), χ(7), χ(13)` given by the bits of
/// `pattern` (bit set means −1).
pub fn character_mod24(pattern: u8) -> Result<DirichletCharacter> {
    if pattern >= 8 {
        return Err(Error::domain(format!("mod-24 pattern {pattern} outside 0..8")));
    }
    let mut values = vec![ZERO; 24];
    for mask in 0..8u8 {
        let mut m = 1u64;
        let mut v = 1.0;
        for (bit, &g) in MOD24_GENERATORS.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                m = m * g % 24;
                if pattern >> bit & 1 == 1 {
                    v = -v;
                }
            }
        }
        values[m as usize] = C64::new(v, 0.0);
    }
    DirichletCharacter::from_table(24, values)
}

pub fn characters_mod24() -> Vec<DirichletCharacter> {
    (0..8).map(|p| character_mod24(p).expect("pattern < 8")).collect()
}

/// `ψ_n(m) = χ_4(m) (n/m) 𝟙_3(m)` modulo `12n`, for odd squarefree `n`
/// prime to 3.
pub fn psi_n_character(n: u64) -> Result<DirichletCharacter> {
    if n == 0 || n.is_multiple_of(2) || !crate::arith::is_squarefree(n) {
        return Err(Error::domain(format!("psi_n needs n odd and squarefree, got {n}")));
    }
    if n.is_multiple_of(3) {
        return Err(Error::domain(format!("psi_n is not defined here for 3 | n (n = {n})")));
    }
    let q = n.checked_mul(12).ok_or(Error::Overflow("12n"))?;
    let n = n as i64;
    DirichletCharacter::from_fn(q, |m| sign(jacobi(-1, m) * jacobi(n, m)))
}

/// `χ · (·/m)` for odd `m`: the twist by the Jacobi symbol with denominator `m`.
pub fn jacobi_twist(chi: &DirichletCharacter, m: u64) -> Result<DirichletCharacter> {
    if m.is_multiple_of(2) {
        return Err(Error::domain(format!("Jacobi twist needs odd m, got {m}")));
    }
    let q = lcm(chi.modulus(), m);
    modulus_usize(q)?;
    let values = (0..q)
        .map(|a| {
            let v = chi.value(a);
            if v == ZERO || gcd(a, m) != 1 {
                return ZERO;
            }
            v * sign(jacobi(a as i64, m))
        })
        .collect();
    Ok(DirichletCharacter::from_parts(q, values))
}

/// `χ_d = (d/·)`, the Kronecker character modulo `4|d|`.
pub fn kronecker_character(d: i64) -> Result<DirichletCharacter> {
    if d == 0 {
        return Err(Error::domain("chi_0 is not a character"));
    }
    let q = d.unsigned_abs().checked_mul(4).ok_or(Error::Overflow("4|d|"))?;
    let values: Result<Vec<C64>> =
        (0..q).map(|m| if gcd(m, q) != 1 { Ok(ZERO) } else { kronecker(d, m as i64).map(sign) }).collect();
    DirichletCharacter::from_table(q, values?)
}

/// `Σ_{ℓ=1}^{k} χ(ℓ) e^{2πiℓ/k}` without any primitivity requirement.
pub fn gauss_sum_raw(chi: &DirichletCharacter) -> C64 {
    let k = chi.modulus();
    compensated_sum(
        (1..=k).map(|l| (l, chi.value(l))).filter(|(_, v)| *v != ZERO).map(|(l, v)| v * root_of_unity(l, k)),
    )
}

/// Gauss sum of a primitive character.
pub fn gauss_sum(chi: &DirichletCharacter) -> Result<C64> {
    if !chi.is_primitive() {
        return Err(Error::domain(format!(
            "Gauss sum needs a primitive character; modulus {} has conductor {}",
            chi.modulus(),
            chi.conductor()
        )));
    }
    Ok(gauss_sum_raw(chi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_examples() {
        let e1 = character_eta(1).unwrap();
        assert_eq!(e1.value(3), C64::new(-1.0, 0.0));
        assert_eq!(character_eta(2).unwrap().value(3), ONE);
        let e15 = character_eta(15).unwrap();
        for m in [3u64, 5, 9, 25, 33] {
            assert_eq!(e15.value(m), ZERO);
        }
        for n in 1..=40 {
            character_eta(n).unwrap().check_invariants().unwrap();
        }
    }

    #[test]
    fn mod24_group() {
        let chars = characters_mod24();
        assert_eq!(chars.len(), 8);
        let units: Vec<u64> = (1..24).filter(|&m| gcd(m, 24) == 1).collect();
        for (i, chi) in chars.iter().enumerate() {
            chi.check_invariants().unwrap();
            assert!(chi.is_real());
            assert!(chi.square().is_principal());
            let total = compensated_sum(units.iter().map(|&m| chi.value(m)));
            if i == 0 {
                assert!(chi.is_principal());
                assert_eq!(total, C64::new(8.0, 0.0));
            } else {
                assert_eq!(total, ZERO);
            }
        }
        for &j in &units {
            for &n in &units {
                let s = compensated_sum(chars.iter().map(|c| c.value(j).inv() * c.value(n)));
                let delta = if j == n { 8.0 } else { 0.0 };
                assert_eq!(s, C64::new(delta, 0.0));
            }
        }
        let all: Vec<_> = all_characters(24).unwrap();
        for c in &all {
            assert!(chars.contains(c));
        }
    }

    #[test]
    fn all_characters_are_distinct_and_valid() {
        for q in 1..=60u64 {
            let chars = all_characters(q).unwrap();
            let phi = (1..=q).filter(|&m| gcd(m, q) == 1).count();
            assert_eq!(chars.len(), phi, "q={q}");
            for (i, a) in chars.iter().enumerate() {
                a.check_invariants().unwrap();
                for b in &chars[i + 1..] {
                    assert!(a != b, "q={q}");
                }
            }
        }
    }

    #[test]
    fn conductor_and_primitive_part() {
        assert_eq!(DirichletCharacter::principal(12).unwrap().conductor(), 1);
        assert_eq!(chi4().conductor(), 4);
        let psi1 = psi_n_character(1).unwrap();
        assert_eq!(psi1.conductor(), 4);
        assert_eq!(psi1.primitive(), chi4());
        assert_eq!(psi_n_character(5).unwrap().conductor(), 20);
        assert_eq!(psi_n_character(7).unwrap().conductor(), 7);
        for q in [8u64, 9, 15, 16, 20, 45] {
            for chi in all_characters(q).unwrap() {
                let prim = chi.primitive();
                assert!(prim.is_primitive());
                assert_eq!(q % prim.modulus(), 0);
                for m in 0..q {
                    if gcd(m, q) == 1 {
                        assert!((prim.value(m) - chi.value(m)).norm() < EPS);
                    }
                }
                // no smaller period works
                for d in divisors(q).into_iter().filter(|&d| d < prim.modulus()) {
                    let trivial =
                        (1..q).step_by(d as usize).all(|a| gcd(a, q) != 1 || (chi.value(a) - ONE).norm() < EPS);
                    assert!(!trivial);
                }
            }
        }
    }

    #[test]
    fn psi_parity_and_domain() {
        for n in [1u64, 5, 7, 11, 13, 17, 19, 23, 35] {
            let psi = psi_n_character(n).unwrap();
            assert_eq!(psi.modulus(), 12 * n);
            assert_eq!(psi.parity(), 1);
            assert!(psi.is_real());
            psi.check_invariants().unwrap();
        }
        assert!(psi_n_character(3).is_err());
        assert!(psi_n_character(9).is_err());
        assert!(psi_n_character(4).is_err());
    }

    #[test]
    fn gauss_sums_of_real_primitive_characters() {
        let five = DirichletCharacter::from_fn(5, |m| sign(jacobi(m as i64, 5))).unwrap();
        assert!((gauss_sum(&five).unwrap() - C64::new(5f64.sqrt(), 0.0)).norm() < 1e-12);
        assert!((gauss_sum(&chi4()).unwrap() - C64::new(0.0, 2.0)).norm() < 1e-12);
        assert!(gauss_sum(&DirichletCharacter::principal(6).unwrap()).is_err());
    }

    #[test]
    fn twist_values() {
        let chi = character_mod24(0).unwrap();
        let t = jacobi_twist(&chi, 5).unwrap();
        for a in 0..500u64 {
            let expected = if gcd(a, 30) == 1 { jacobi(a as i64, 5) as f64 } else { 0.0 };
            assert_eq!(t.value(a), C64::new(expected, 0.0), "a={a}");
        }
        t.check_invariants().unwrap();
    }

    #[test]
    fn kronecker_character_matches_symbol() {
        for d in [-4i64, 5, -3, 8, 12, -7] {
            let c = kronecker_character(d).unwrap();
            c.check_invariants().unwrap();
            assert!(c.is_real());
        }
    }
}
