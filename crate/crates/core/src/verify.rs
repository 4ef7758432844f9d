//! Acceptance checks. Each check returns one or more [`CriterionReport`]s:
//! the criterion as stated, and where the stated identity fails, an extra
//! line for the corrected identity that does hold.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, primes_up_to};
use crate::error::{Error, Result};
use crate::euler::{
    local_factor_closed, local_factor_oracle, ramified_even_rational, ramified_even_recursive, LocalFactorInput,
};
use crate::forms::count_forms;
use crate::lfunc::{
    a_j, a_n, all_characters, character_mod24, characters_mod24, dirichlet_l, gauss_sum, gauss_sum_raw,
    psi_n_character, z_n_closed, CorrectionTable, SquarefreeTable,
};
use crate::mds::series::odd_squarefree_up_to;
use crate::mds::{
    decomposition_sides, functional_equation_check, functional_equation_check_primitive, residue_identity_check,
    residue_product, residue_product_tail_corrected, z_coeff, z_direct, z_n_oracle_batch, TruncationSpec,
};
use crate::numeric::{pow_ln, real, rel_err, C64, ONE, ZERO};
use crate::par::{try_map_ordered, Execution};
use crate::sqcount::{coefficient, count_roots_factored, square_histogram};

pub const ROOT_COUNT_RANGE: (u64, i64) = (2000, 2000);
pub const BIJECTION_RANGE: u64 = 300;
pub const LOCAL_PRIME_BOUND: u64 = 53;
pub const LOCAL_N_BOUND: u64 = 400;
pub const LOCAL_ORDER: u32 = 60;
pub const LOCAL_TOL: f64 = 1e-10;
pub const EVEN_FORMS_TOL: f64 = 1e-12;
pub const CLOSED_N_BOUND: u64 = 60;
pub const CLOSED_CUTOFF: u64 = 100_000;
pub const CLOSED_TOL: f64 = 1e-4;
pub const A_N_BOUND: u64 = 1000;
pub const A_N_TOL: f64 = 1e-12;
pub const GAUSS_MODULUS_BOUND: u64 = 200;
pub const GAUSS_TOL: f64 = 1e-10;
pub const PSI_NS: [u64; 5] = [1, 5, 7, 11, 13];
pub const FE_NS: [u64; 6] = [1, 5, 7, 11, 13, 17];
pub const FE_TOL: f64 = 1e-8;
pub const RESTRICTED_MODULUS_BOUND: u64 = 60;
pub const RESTRICTED_B_BOUND: u64 = 30;
pub const RESTRICTED_CUTOFF: u64 = 100_000;
pub const RESTRICTED_TOL: f64 = 1e-6;
pub const RESIDUE_CUTOFFS: (u64, u64) = (2000, 2000);
pub const RESIDUE_TOL: f64 = 1e-3;
pub const PRODUCT_BOUND: u64 = 20_000;
pub const PRODUCT_TOL: f64 = 1e-8;
pub const REGROUP_CUTOFFS: (u64, u64) = (300, 300);
pub const REGROUP_TOL: f64 = 1e-13;
pub const DECOMP_CUTOFFS: (u64, u64) = (1_000_000, 300);
pub const DECOMP_TOL: f64 = 1e-8;

pub fn fe_grid() -> Vec<C64> {
    vec![real(0.3), real(0.75), C64::new(0.6, 2.0), C64::new(0.5, 5.0)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    /// The criterion exactly as stated.
    Stated,
    /// A corrected identity reported next to a stated one that fails.
    Corrected,
    /// An internal consistency check accompanying a criterion.
    Consistency,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: String,
    pub kind: ReportKind,
    pub title: String,
    pub passed: bool,
    /// Largest observed error (relative or absolute as the title says, or a
    /// mismatch count for exact checks).
    pub worst: f64,
    pub tolerance: f64,
    pub cases: u64,
    pub detail: String,
    pub elapsed_s: f64,
    pub budget_s: f64,
}

impl CriterionReport {
    /// One status line; without timings the line is reproducible.
    pub fn line(&self, timing: bool) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        let kind = match self.kind {
            ReportKind::Stated => "",
            ReportKind::Corrected => " [corrected]",
            ReportKind::Consistency => " [consistency]",
        };
        let mut out = format!(
            "[{tag}] {}{kind}: {} | worst {:.3e} vs tol {:.1e} over {} cases",
            self.id, self.title, self.worst, self.tolerance, self.cases
        );
        if timing {
            out.push_str(&format!(" | {:.2} s (budget {} s)", self.elapsed_s, self.budget_s));
        }
        if !self.detail.is_empty() {
            out.push_str(" | ");
            out.push_str(&self.detail);
        }
        out
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line(true))
    }
}

struct Draft {
    id: &'static str,
    kind: ReportKind,
    title: String,
    tolerance: f64,
    budget_s: f64,
    start: Instant,
}

impl Draft {
    fn new(id: &'static str, kind: ReportKind, title: impl Into<String>, tolerance: f64, budget_s: f64) -> Self {
        Self { id, kind, title: title.into(), tolerance, budget_s, start: Instant::now() }
    }

    fn restart(mut self) -> Self {
        self.start = Instant::now();
        self
    }

    fn finish(self, worst: f64, cases: u64, detail: String) -> CriterionReport {
        let passed = worst.is_finite() && worst <= self.tolerance;
        self.finish_with(passed, worst, cases, detail)
    }

    fn finish_with(self, passed: bool, worst: f64, cases: u64, detail: String) -> CriterionReport {
        CriterionReport {
            id: self.id.to_string(),
            kind: self.kind,
            title: self.title,
            passed,
            worst,
            tolerance: self.tolerance,
            cases,
            detail,
            elapsed_s: self.start.elapsed().as_secs_f64(),
            budget_s: self.budget_s,
        }
    }

    fn error(self, e: &Error) -> CriterionReport {
        self.finish_with(false, f64::INFINITY, 0, format!("error: {e}"))
    }
}

/// Running maximum remembering the case that produced it.
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Self { value: 0.0, at: String::new() }
    }

    fn update(&mut self, v: f64, at: impl FnOnce() -> String) {
        let v = if v.is_nan() { f64::INFINITY } else { v };
        if v > self.value || (self.at.is_empty() && v == self.value && v > 0.0) {
            self.value = v;
            self.at = at();
        }
    }

    fn detail(&self) -> String {
        if self.at.is_empty() {
            String::new()
        } else {
            format!("worst at {}", self.at)
        }
    }
}

/// Fast multiplicative root counts against exhaustive counts.
pub fn root_counts(exec: Execution) -> Vec<CriterionReport> {
    let (m_max, n_max) = ROOT_COUNT_RANGE;
    let d = Draft::new(
        "C1",
        ReportKind::Stated,
        format!("C(m,n) fast = exhaustive, m <= {m_max}, |n| <= {n_max}"),
        0.0,
        60.0,
    );
    let ms: Vec<u64> = (1..=m_max).collect();
    let rows = try_map_ordered(exec, &ms, |&m| -> Result<(u64, Option<(u64, i64)>)> {
        let hist = square_histogram(m)?;
        let fact = factorize(m)?;
        let mut bad = 0;
        let mut first = None;
        for n in -n_max..=n_max {
            let fast = count_roots_factored(&fact, n)?;
            if fast != hist[n.rem_euclid(m as i64) as usize] as u64 {
                bad += 1;
                first.get_or_insert((m, n));
            }
        }
        Ok((bad, first))
    });
    match rows {
        Err(e) => vec![d.error(&e)],
        Ok(rows) => {
            let bad: u64 = rows.iter().map(|r| r.0).sum();
            let first = rows.iter().find_map(|r| r.1);
            let detail = first.map(|(m, n)| format!("first mismatch at m={m} n={n}")).unwrap_or_default();
            vec![d.finish(bad as f64, m_max * (2 * n_max as u64 + 1), detail)]
        }
    }
}

/// Reduced forms per cell against the coefficient `C(3m, −n)`.
pub fn bijection(exec: Execution) -> Vec<CriterionReport> {
    let b = BIJECTION_RANGE;
    let d = Draft::new("C2", ReportKind::Stated, format!("count_forms(m,n) = C(3m,-n), m, n <= {b}"), 0.0, 10.0);
    let ms: Vec<u64> = (1..=b).collect();
    let rows = try_map_ordered(exec, &ms, |&m| -> Result<Vec<u64>> {
        let mut bad = Vec::new();
        for n in 1..=b {
            if count_forms(m, n)? != coefficient(m, n)? {
                bad.push(n);
            }
        }
        Ok(bad)
    });
    match rows {
        Err(e) => vec![d.error(&e)],
        Ok(rows) => {
            let bad: usize = rows.iter().map(Vec::len).sum();
            vec![d.finish(bad as f64, b * b, String::new())]
        }
    }
}

/// Closed local factors against the truncated local series, plus the two
/// forms of the even-ramified case.
pub fn local_factors(exec: Execution) -> Vec<CriterionReport> {
    let s = real(2.0);
    let d = Draft::new(
        "C3",
        ReportKind::Stated,
        format!(
            "local factor closed vs oracle K={LOCAL_ORDER} at s=2, p <= {LOCAL_PRIME_BOUND}, n <= {LOCAL_N_BOUND}, rel"
        ),
        LOCAL_TOL,
        30.0,
    );
    let primes = primes_up_to(LOCAL_PRIME_BOUND);
    let rows = try_map_ordered(exec, &primes, |&p| -> Result<Vec<(u64, f64)>> {
        (1..=LOCAL_N_BOUND)
            .map(|n| {
                let closed = local_factor_closed(p, n, s)?;
                let oracle = local_factor_oracle(&LocalFactorInput { p, n, s, order: LOCAL_ORDER })?;
                Ok((n, rel_err(closed, oracle)))
            })
            .collect()
    });
    let mut out = Vec::new();
    match rows {
        Err(e) => out.push(d.error(&e)),
        Ok(rows) => {
            let mut w = Worst::new();
            for (p, row) in primes.iter().zip(&rows) {
                for &(n, e) in row {
                    w.update(e, || format!("p={p} n={n}"));
                }
            }
            out.push(d.finish(w.value, primes.len() as u64 * LOCAL_N_BOUND, w.detail()));
        }
    }
    let d = Draft::new(
        "C3",
        ReportKind::Consistency,
        "even-ramified single fraction = geometric part plus recursion, odd p, rel",
        EVEN_FORMS_TOL,
        30.0,
    );
    let mut w = Worst::new();
    let mut cases = 0;
    for &p in primes.iter().filter(|&&p| p > 3) {
        for n in 1..=LOCAL_N_BOUND {
            let r = crate::arith::valuation(n, p);
            if r < 2 || r % 2 == 1 {
                continue;
            }
            cases += 1;
            match (ramified_even_rational(p, n, s), ramified_even_recursive(p, n, s)) {
                (Ok(a), Ok(b)) => w.update(rel_err(a, b), || format!("p={p} n={n}")),
                (Err(e), _) | (_, Err(e)) => {
                    out.push(d.error(&e));
                    return out;
                }
            }
        }
    }
    out.push(d.finish(w.value, cases, w.detail()));
    out
}

fn closed_form_report(
    id: &'static str,
    kind: ReportKind,
    table: CorrectionTable,
    ns: &[u64],
    oracle: &[C64],
) -> CriterionReport {
    let s = real(2.5);
    let label = match table {
        CorrectionTable::Displayed => "table with L(s, eta_{-n})",
        CorrectionTable::Derived => "derived table with L_{2,3}(s, eta_{-n})",
    };
    let d = Draft::new(
        id,
        kind,
        format!("Z_n closed ({label}) vs coefficient sum M={CLOSED_CUTOFF} at s=2.5, odd squarefree n <= {CLOSED_N_BOUND}, rel"),
        CLOSED_TOL,
        120.0,
    );
    let mut w = Worst::new();
    let mut zero_violations = 0;
    for (&n, &o) in ns.iter().zip(oracle) {
        let closed = match z_n_closed(table, n, s) {
            Ok(v) => v,
            Err(e) => return d.error(&e),
        };
        if n % 3 == 1 && (closed != ZERO || o != ZERO) {
            zero_violations += 1;
        }
        w.update(rel_err(closed, o), || format!("n={n} closed={closed:.10e} oracle={o:.10e}"));
    }
    let mut detail = w.detail();
    if zero_violations > 0 {
        detail.push_str(&format!("; {zero_violations} nonzero values for n = 1 mod 3"));
    }
    let passed = w.value <= CLOSED_TOL && zero_violations == 0;
    d.finish_with(passed, w.value, ns.len() as u64, detail)
}

/// `Z_n` closed forms against the coefficient series.
pub fn closed_forms(exec: Execution) -> Vec<CriterionReport> {
    let start = Instant::now();
    let ns = odd_squarefree_up_to(CLOSED_N_BOUND);
    let oracle = match z_n_oracle_batch(&ns, real(2.5), CLOSED_CUTOFF, exec) {
        Ok(v) => v,
        Err(e) => {
            return vec![Draft::new("C4", ReportKind::Stated, "Z_n closed vs oracle", CLOSED_TOL, 120.0).error(&e)]
        }
    };
    let shared = start.elapsed().as_secs_f64();
    let mut out = vec![
        closed_form_report("C4", ReportKind::Stated, CorrectionTable::Displayed, &ns, &oracle),
        closed_form_report("C4", ReportKind::Corrected, CorrectionTable::Derived, &ns, &oracle),
    ];
    for r in &mut out {
        r.elapsed_s += shared;
    }
    out
}

/// `a_n` from the character decomposition against the direct branch.
pub fn a_n_decomposition() -> Vec<CriterionReport> {
    let d = Draft::new(
        "C5",
        ReportKind::Stated,
        format!("a_n(s) = A_(n mod 24)(s), gcd(n,24)=1, n <= {A_N_BOUND}, s in {{2, 3, 1.5+0.7i}}, abs"),
        A_N_TOL,
        5.0,
    );
    let grid = [real(2.0), real(3.0), C64::new(1.5, 0.7)];
    let chars = characters_mod24();
    let mut w = Worst::new();
    let mut cases = 0;
    for table in [CorrectionTable::Displayed, CorrectionTable::Derived] {
        for n in (1..=A_N_BOUND).filter(|&n| gcd(n, 24) == 1) {
            for &s in &grid {
                let lhs = crate::lfunc::closed::a_n_with(&chars, table, n, s);
                let rhs = a_j(table, (n % 24) as i64, s);
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => w.update((l - r).norm(), || format!("{table:?} n={n} s={s}")),
                    (Err(e), _) | (_, Err(e)) => return vec![d.error(&e)],
                }
                cases += 1;
            }
        }
    }
    // the public entry point agrees with the prebuilt-character path
    if let (Ok(a), Ok(b)) =
        (a_n(CorrectionTable::Displayed, 47, real(2.0)), a_j(CorrectionTable::Displayed, 23, real(2.0)))
    {
        w.update((a - b).norm(), || "n=47".into());
    }
    vec![d.finish(w.value, cases, format!("both tables; {}", w.detail()))]
}

/// Gauss sums of real primitive characters, and of `ψ_n`.
pub fn gauss_sums() -> Vec<CriterionReport> {
    let mut out = Vec::new();
    let d = Draft::new(
        "C6a",
        ReportKind::Stated,
        format!("tau(chi) = sqrt(k) or i sqrt(k) for real primitive chi, k <= {GAUSS_MODULUS_BOUND}, abs"),
        GAUSS_TOL,
        10.0,
    );
    let mut w = Worst::new();
    let mut cases = 0;
    for k in 1..=GAUSS_MODULUS_BOUND {
        let chars = match all_characters(k) {
            Ok(c) => c,
            Err(e) => return vec![d.error(&e)],
        };
        for chi in chars.iter().filter(|c| c.is_real() && c.is_primitive()) {
            let tau = match gauss_sum(chi) {
                Ok(t) => t,
                Err(e) => return vec![d.error(&e)],
            };
            let root = (k as f64).sqrt();
            let expected = if chi.parity() == 0 { real(root) } else { C64::new(0.0, root) };
            w.update((tau - expected).norm(), || format!("k={k}"));
            cases += 1;
        }
    }
    out.push(d.finish(w.value, cases, w.detail()));

    let d = Draft::new(
        "C6b",
        ReportKind::Stated,
        "tau(psi_n) = i sqrt(12n) by direct summation mod 12n, abs",
        GAUSS_TOL,
        10.0,
    );
    let mut w = Worst::new();
    let mut values = Vec::new();
    let mut prim = Vec::new();
    for &n in &PSI_NS {
        let psi = match psi_n_character(n) {
            Ok(p) => p,
            Err(e) => {
                out.push(d.error(&e));
                return out;
            }
        };
        let tau = gauss_sum_raw(&psi);
        let expected = C64::new(0.0, (12.0 * n as f64).sqrt());
        w.update((tau - expected).norm(), || format!("n={n}"));
        values.push(format!("n={n}: {:+.6}{:+.6}i", tau.re, tau.im));
        prim.push(psi.primitive());
    }
    out.push(d.finish(
        w.value,
        PSI_NS.len() as u64,
        format!(
            "{}; conductors {:?}; {}",
            values.join(", "),
            prim.iter().map(|c| c.modulus()).collect::<Vec<_>>(),
            w.detail()
        ),
    ));

    let d = Draft::new(
        "C6b",
        ReportKind::Corrected,
        "tau(psi_n*) = i sqrt(q*) for the primitive character psi_n* of conductor q* inducing psi_n, abs",
        GAUSS_TOL,
        10.0,
    );
    let mut w = Worst::new();
    for (&n, p) in PSI_NS.iter().zip(&prim) {
        match gauss_sum(p) {
            Ok(tau) => {
                let expected = C64::new(0.0, (p.modulus() as f64).sqrt());
                w.update((tau - expected).norm(), || format!("n={n} q*={}", p.modulus()));
            }
            Err(e) => {
                out.push(d.error(&e));
                return out;
            }
        }
    }
    out.push(d.finish(w.value, PSI_NS.len() as u64, w.detail()));
    out
}

fn fe_report(
    id: &'static str,
    kind: ReportKind,
    title: &str,
    check: impl Fn(u64, &[C64]) -> Vec<Result<crate::mds::SeriesComparison>>,
) -> CriterionReport {
    let d = Draft::new(id, kind, title.to_string(), FE_TOL, 30.0);
    let grid = fe_grid();
    let mut w = Worst::new();
    let mut cases = 0;
    for &n in &FE_NS {
        for (s, r) in grid.iter().zip(check(n, &grid)) {
            match r {
                Ok(c) => w.update(c.rel_err, || format!("n={n} s={s}")),
                Err(e) => return d.error(&e),
            }
            cases += 1;
        }
    }
    d.finish(w.value, cases, w.detail())
}

/// `Λ(1 − s) = Λ(s)` per `n`.
pub fn functional_equation() -> Vec<CriterionReport> {
    vec![
        fe_report(
            "C7",
            ReportKind::Stated,
            "|Lambda(1-s) - Lambda(s)|/|Lambda(s)| with (pi/12n) and psi_n mod 12n, n in {1,5,7,11,13,17}",
            functional_equation_check,
        ),
        fe_report(
            "C7",
            ReportKind::Corrected,
            "same residual for the primitive character inducing psi_n, normalized by its conductor",
            functional_equation_check_primitive,
        ),
    ]
}

/// `L(2w, ψ²) L_b(w, ψ)` against `L(w, ψ)` times finite products over `p | b`.
pub fn squarefree_restricted(exec: Execution) -> Vec<CriterionReport> {
    let w_val = real(2.5);
    let start = Instant::now();
    let table = match SquarefreeTable::new(w_val, RESTRICTED_CUTOFF) {
        Ok(t) => t,
        Err(e) => {
            return vec![
                Draft::new("C8", ReportKind::Stated, "restricted L-series identity", RESTRICTED_TOL, 30.0).error(&e)
            ]
        }
    };
    let bs: Vec<u64> = (1..=RESTRICTED_B_BOUND).collect();
    let chars: Vec<_> = (1..=RESTRICTED_MODULUS_BOUND).flat_map(|q| all_characters(q).unwrap_or_default()).collect();
    // per character: (modulus, conductor, stated rel errs, corrected rel errs)
    let rows = try_map_ordered(exec, &chars, |psi| -> Result<(u64, Vec<f64>, Vec<f64>)> {
        let sums = table.restricted_sums(psi, &bs)?;
        let l_w = dirichlet_l(psi, w_val)?.value;
        let l_2w = dirichlet_l(&psi.square(), 2.0 * w_val)?.value;
        let cond_primes: Vec<u64> = factorize(psi.conductor())?.primes().collect();
        let mut cond = ONE;
        for &p in &cond_primes {
            let v = psi.value(p);
            cond /= ONE - v * v * pow_ln((p as f64).ln(), -2.0 * w_val);
        }
        let mut stated = Vec::with_capacity(bs.len());
        let mut fixed = Vec::with_capacity(bs.len());
        for (&b, &lb) in bs.iter().zip(&sums) {
            let lhs = l_2w * lb;
            let mut minus = ONE;
            let mut plus = ONE;
            for p in factorize(b)?.primes() {
                let t = psi.value(p) * pow_ln((p as f64).ln(), -w_val);
                minus /= ONE - t;
                plus /= ONE + t;
            }
            stated.push(rel_err(lhs, l_w * minus * cond));
            fixed.push(rel_err(lhs, l_w * plus));
        }
        Ok((psi.modulus(), stated, fixed))
    });
    let shared = start.elapsed().as_secs_f64();
    let rows = match rows {
        Ok(r) => r,
        Err(e) => {
            return vec![
                Draft::new("C8", ReportKind::Stated, "restricted L-series identity", RESTRICTED_TOL, 30.0).error(&e)
            ]
        }
    };
    let cases = (rows.len() * bs.len()) as u64;
    let mut reports = Vec::new();
    for (kind, title, pick) in [
        (
            ReportKind::Stated,
            format!("L(2w,psi^2) L_b(w,psi) = L(w,psi) prod_(p|b) (1-psi(p)p^-w)^-1 prod_(p|cond) (1-psi(p)^2 p^-2w)^-1 at w=2.5, modulus <= {RESTRICTED_MODULUS_BOUND}, b <= {RESTRICTED_B_BOUND}, rel"),
            0usize,
        ),
        (ReportKind::Corrected, "same left side = L(w,psi) prod_(p|b) (1+psi(p)p^-w)^-1, rel".to_string(), 1),
    ] {
        let d = Draft::new("C8", kind, title, RESTRICTED_TOL, 30.0);
        let mut w = Worst::new();
        let mut failing = 0u64;
        for (q, st, fx) in &rows {
            let errs = if pick == 0 { st } else { fx };
            for (b, &e) in bs.iter().zip(errs) {
                if e > RESTRICTED_TOL {
                    failing += 1;
                }
                w.update(e, || format!("modulus {q} b={b}"));
            }
        }
        let mut r = d.finish(w.value, cases, format!("{failing} of {cases} pairs outside tolerance; {}", w.detail()));
        r.elapsed_s += shared;
        reports.push(r);
    }
    reports
}

/// The `m`-expansion of `L(2s2, χ²) Z*` and the residue Euler product.
pub fn residue(exec: Execution) -> Vec<CriterionReport> {
    let mut out = Vec::new();
    let (mc, nc) = RESIDUE_CUTOFFS;
    let d = Draft::new(
        "C9a",
        ReportKind::Stated,
        format!("L(2s2,chi^2) Z*(s1,s2) = sum_m (-1/m) m^-s1 prod (1-chi^2(p)p^-2s2)^-1 L(s2, chi (./m)) at (2.5, 2.0), cutoffs ({mc},{nc}), all chi mod 24, rel"),
        RESIDUE_TOL,
        60.0,
    );
    let spec = TruncationSpec { m_cutoff: mc, n_cutoff: nc, local_order: 1, tolerance: RESIDUE_TOL };
    let mut w = Worst::new();
    let mut cases = 0;
    for (pattern, chi) in characters_mod24().iter().enumerate() {
        match residue_identity_check(chi, real(2.5), real(2.0), &spec, exec) {
            Ok(c) => w.update(c.rel_err, || format!("chi pattern {pattern}")),
            Err(e) => {
                out.push(d.error(&e));
                return out;
            }
        }
        cases += 1;
    }
    out.push(d.finish(w.value, cases, w.detail()));

    let chi = match character_mod24(0) {
        Ok(c) => c,
        Err(e) => {
            out.push(Draft::new("C9b", ReportKind::Stated, "residue product", PRODUCT_TOL, 60.0).error(&e));
            return out;
        }
    };
    let half = PRODUCT_BOUND / 2;
    for (kind, title, f) in [
        (
            ReportKind::Stated,
            format!("residue Euler product at s1=1/2, trivial chi: |partial({PRODUCT_BOUND}) - partial({half})|"),
            residue_product as fn(&_, C64, u64) -> Result<crate::mds::ResidueProduct>,
        ),
        (
            ReportKind::Corrected,
            "same product with each factor divided by 1-p^-(2s1+1) and the exact prod_(p>=5)(1-p^-(2s1+1)) restored"
                .to_string(),
            residue_product_tail_corrected,
        ),
    ] {
        let d = Draft::new("C9b", kind, title, PRODUCT_TOL, 60.0);
        match f(&chi, real(0.5), PRODUCT_BOUND) {
            Ok(r) => out.push(d.finish(
                r.monitor,
                1,
                format!("partial({PRODUCT_BOUND}) = {:.15e}, partial({half}) = {:.15e}", r.value_re, r.half_re),
            )),
            Err(e) => out.push(d.error(&e)),
        }
    }
    out
}

/// `Z_direct = Z_coeff`, and the decomposition of the `gcd(n, 6) = 1` slice.
pub fn regrouping(exec: Execution) -> Vec<CriterionReport> {
    let mut out = Vec::new();
    let (mc, nc) = REGROUP_CUTOFFS;
    let d = Draft::new(
        "C10a",
        ReportKind::Stated,
        format!("Z_direct = Z_coeff at (2,2), cutoffs ({mc},{nc}), rel"),
        REGROUP_TOL,
        60.0,
    );
    let spec = TruncationSpec { m_cutoff: mc, n_cutoff: nc, local_order: 1, tolerance: REGROUP_TOL };
    let s = real(2.0);
    match (z_direct(s, s, &spec), z_coeff(s, s, &spec, exec)) {
        (Ok(a), Ok(b)) => {
            out.push(d.finish(rel_err(a, b), 1, format!("Z_direct = {:.17e}, Z_coeff = {:.17e}", a.re, b.re)))
        }
        (Err(e), _) | (_, Err(e)) => out.push(d.error(&e)),
    }

    let (mc, nc) = DECOMP_CUTOFFS;
    let d = Draft::new("C10b", ReportKind::Stated, "decomposition", DECOMP_TOL, 60.0);
    let spec = TruncationSpec { m_cutoff: mc, n_cutoff: nc, local_order: 1, tolerance: DECOMP_TOL };
    let sides = match decomposition_sides(real(2.5), real(2.0), &spec, exec) {
        Ok(s) => s,
        Err(e) => {
            out.push(d.error(&e));
            return out;
        }
    };
    let shared = d.start.elapsed().as_secs_f64();
    for (kind, table, label) in [
        (ReportKind::Stated, CorrectionTable::Displayed, "table"),
        (ReportKind::Corrected, CorrectionTable::Derived, "derived table"),
    ] {
        let d = Draft::new(
            "C10b",
            kind,
            format!("gcd(n,6)=1 slice = (1/8) zeta(s1)/zeta(2s1) sum_j sum_chi chi(j)^-1 A_j Z*_chi with the {label}, (2.5, 2.0), cutoffs ({mc},{nc}), rel"),
            DECOMP_TOL,
            60.0,
        )
        .restart();
        match sides.comparison(table) {
            Ok(c) => {
                let mut r = d.finish(c.rel_err, 1, format!("lhs = {:.15e}, rhs = {:.15e}", c.lhs_re, c.rhs_re));
                r.elapsed_s += shared;
                out.push(r);
            }
            Err(e) => out.push(d.error(&e)),
        }
    }
    out
}

/// Suite names accepted by [`run_suite`], in criterion order.
pub const SUITES: [&str; 10] =
    ["roots", "bijection", "local", "closed", "characters", "gauss", "fe", "restricted", "residue", "regroup"];

pub fn run_suite(name: &str, exec: Execution) -> Result<Vec<CriterionReport>> {
    let idx = match name.parse::<usize>() {
        Ok(k) if (1..=SUITES.len()).contains(&k) => k - 1,
        _ => SUITES.iter().position(|&s| s == name).ok_or_else(|| {
            Error::domain(format!("unknown suite '{name}'; expected one of {SUITES:?}, 1..=10 or all"))
        })?,
    };
    Ok(match idx {
        0 => root_counts(exec),
        1 => bijection(exec),
        2 => local_factors(exec),
        3 => closed_forms(exec),
        4 => a_n_decomposition(),
        5 => gauss_sums(),
        6 => functional_equation(),
        7 => squarefree_restricted(exec),
        8 => residue(exec),
        _ => regrouping(exec),
    })
}

pub fn run_all(exec: Execution) -> Vec<CriterionReport> {
    SUITES.iter().flat_map(|s| run_suite(s, exec).expect("suite names are valid")).collect()
}

/// A suite passes when every stated and consistency line passes.
pub fn all_stated_pass(reports: &[CriterionReport]) -> bool {
    reports.iter().filter(|r| r.kind != ReportKind::Corrected).all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::map_ordered;

    #[test]
    fn suite_names_resolve() {
        assert!(run_suite("nope", Execution::Sequential).is_err());
        assert!(run_suite("11", Execution::Sequential).is_err());
        let r = run_suite("5", Execution::Sequential).unwrap();
        assert_eq!(r[0].id, "C5");
    }

    #[test]
    fn report_line_shape() {
        let r = Draft::new("C0", ReportKind::Corrected, "demo", 1.0, 1.0).finish(0.5, 3, String::new());
        let line = r.to_string();
        assert!(line.starts_with("[PASS] C0 [corrected]: demo"));
        let bad = Draft::new("C0", ReportKind::Stated, "demo", 1.0, 1.0).finish(f64::NAN, 1, String::new());
        assert!(!bad.passed);
    }

    #[test]
    fn small_root_count_sweep_is_cheap_to_parallelize() {
        let seq = map_ordered(Execution::Sequential, &[1u64, 2, 3], |&m| square_histogram(m).unwrap());
        let par = map_ordered(Execution::Parallel, &[1u64, 2, 3], |&m| square_histogram(m).unwrap());
        assert_eq!(seq, par);
    }
}
