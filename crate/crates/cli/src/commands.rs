use anyhow::{bail, Result};
use clap::{Subcommand, ValueEnum};
use cubic_mds::arith::is_squarefree;
use cubic_mds::euler::{classify, local_factor_closed, local_factor_oracle, LocalFactorInput};
use cubic_mds::forms::enumerate_representatives;
use cubic_mds::lfunc::{all_characters, dirichlet_l, gauss_sum, z_n_closed, CorrectionTable};
use cubic_mds::mds::{
    decomposition_sides, functional_equation_check, functional_equation_check_primitive, odd_squarefree_up_to, z_coeff,
    z_direct, z_n_euler_product, z_n_oracle, z_n_oracle_batch, SeriesComparison, TruncationSpec,
};
use cubic_mds::numeric::rel_err;
use cubic_mds::par::{configure_threads, Execution};
use cubic_mds::sqcount::{count_roots, count_roots_bruteforce};
use cubic_mds::verify::{self, ReportKind};
use num_complex::Complex64;

use crate::args::{parse_character, parse_complex};
use crate::output::{fmt_c64, Cell, OutputRecord, Status};
use crate::{Command, Zeta2Args};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Normalization {
    /// `(π/12n)` and `ψ_n` as a character mod `12n`.
    Modulus,
    /// The primitive character inducing `ψ_n`, with its conductor.
    Primitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Displayed,
    Derived,
}

impl From<Table> for CorrectionTable {
    fn from(t: Table) -> Self {
        match t {
            Table::Displayed => CorrectionTable::Displayed,
            Table::Derived => CorrectionTable::Derived,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum TableKind {
    /// Columns: m,n,fast,oracle.
    Counts {
        #[arg(long)]
        mmax: u64,
        #[arg(long, allow_hyphen_values = true)]
        nmin: i64,
        #[arg(long, allow_hyphen_values = true)]
        nmax: i64,
    },
    /// Columns: p,n,case,closed_re,closed_im,oracle_re,oracle_im,rel_err.
    Local {
        #[arg(long, default_value_t = 53)]
        pmax: u64,
        #[arg(long, default_value_t = 400)]
        nmax: u64,
        #[arg(long, value_parser = parse_complex, default_value = "2")]
        s: Complex64,
        #[arg(long, default_value_t = 60)]
        k: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Columns: n,oracle_re,oracle_im,closed_re,closed_im,rel_err over odd
    /// squarefree n.
    Zn {
        #[arg(long, default_value_t = 60)]
        nmax: u64,
        #[arg(long, value_parser = parse_complex, default_value = "2.5")]
        s: Complex64,
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
        #[arg(long, value_enum, default_value = "displayed")]
        table: Table,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Columns: modulus,parity,tau_re,tau_im,expected_re,expected_im,abs_err
    /// over real primitive characters.
    Gauss {
        #[arg(long, default_value_t = 200)]
        qmax: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

pub fn execution(jobs: Option<usize>) -> Result<Execution> {
    match jobs {
        Some(0) => bail!("--jobs must be at least 1"),
        Some(1) => Ok(Execution::Sequential),
        Some(n) => {
            configure_threads(n);
            Ok(Execution::Parallel)
        }
        None => Ok(Execution::default()),
    }
}

pub fn run(cmd: &Command, exec: Execution) -> Result<OutputRecord> {
    match cmd {
        Command::Count { m, n } => count(*m, *n),
        Command::Forms { mmax, nmax, odd_squarefree } => forms(*mmax, *nmax, *odd_squarefree),
        Command::Euler { p, n, s, k, tol } => euler(*p, *n, *s, *k, *tol),
        Command::Zn { n, s, cutoff, primes, tol } => zn(*n, *s, *cutoff, *primes, *tol),
        Command::Lfun { character, s } => lfun(character, *s),
        Command::Zeta2(a) => zeta2(a, exec),
        Command::Fe { n, grid, normalization, tol } => fe(*n, grid, *normalization, *tol),
        Command::Verify { suite, timings } => verify_suite(suite, *timings, exec),
        Command::Table(kind) => table(kind, exec),
    }
}

fn exact_match(lhs: f64, rhs: f64) -> SeriesComparison {
    SeriesComparison::new(Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0), TruncationSpec::exact(0.0))
}

fn count(m: u64, n: i64) -> Result<OutputRecord> {
    let fast = count_roots(m, n)?;
    let oracle = count_roots_bruteforce(m, n)?;
    let mut r = OutputRecord::new("count");
    r.param("m", m)
        .param("n", n)
        .integer("count", fast as i64)
        .integer("oracle", oracle as i64)
        .compare("fast_vs_oracle", exact_match(fast as f64, oracle as f64))
        .settle();
    Ok(r)
}

fn forms(mmax: u64, nmax: u64, odd_squarefree: bool) -> Result<OutputRecord> {
    let rows: Vec<Vec<Cell>> = enumerate_representatives(mmax, nmax, odd_squarefree)?
        .map(|t| vec![Cell::Int(t.a as i64), Cell::Int(t.b as i64), Cell::Int(t.c), Cell::Int(t.n as i64)])
        .collect();
    let mut r = OutputRecord::new("forms");
    r.param("mmax", mmax)
        .param("nmax", nmax)
        .param("odd_squarefree", odd_squarefree)
        .integer("total", rows.len() as i64)
        .table(&["a", "b", "c", "n"], rows);
    Ok(r)
}

fn euler(p: u64, n: u64, s: Complex64, k: u32, tol: f64) -> Result<OutputRecord> {
    let oracle = local_factor_oracle(&LocalFactorInput { p, n, s, order: k })?;
    let closed = local_factor_closed(p, n, s)?;
    let mut r = OutputRecord::new("euler");
    r.param("p", p)
        .param("n", n)
        .param("s", fmt_c64(s))
        .param("k", k)
        .text("case", classify(p, n).to_string())
        .complex("oracle", oracle)
        .complex("closed", closed)
        .compare("closed_vs_oracle", SeriesComparison::new(closed, oracle, TruncationSpec::exact(tol)))
        .settle();
    Ok(r)
}

fn zn(n: u64, s: Complex64, cutoff: u64, primes: u64, tol: f64) -> Result<OutputRecord> {
    let oracle = z_n_oracle(n, s, cutoff)?;
    let product = z_n_euler_product(n, s, primes)?;
    let spec = TruncationSpec::new(cutoff, n, 1, tol)?;
    let mut r = OutputRecord::new("zn");
    r.param("n", n)
        .param("s", fmt_c64(s))
        .param("cutoff", cutoff)
        .param("primes", primes)
        .complex("oracle", oracle)
        .complex("euler_product", product);
    if n % 2 == 1 && is_squarefree(n) {
        let displayed = z_n_closed(CorrectionTable::Displayed, n, s)?;
        let derived = z_n_closed(CorrectionTable::Derived, n, s)?;
        r.complex("closed_displayed", displayed)
            .complex("closed_derived", derived)
            .compare("closed_displayed_vs_oracle", SeriesComparison::new(displayed, oracle, spec))
            .compare("closed_derived_vs_oracle", SeriesComparison::new(derived, oracle, spec));
    }
    r.compare("euler_product_vs_oracle", SeriesComparison::new(product, oracle, spec)).settle();
    Ok(r)
}

fn lfun(spec: &str, s: Complex64) -> Result<OutputRecord> {
    let chi = parse_character(spec)?;
    let v = dirichlet_l(&chi, s)?;
    let mut r = OutputRecord::new("lfun");
    r.param("char", spec)
        .param("s", fmt_c64(s))
        .integer("modulus", chi.modulus() as i64)
        .integer("conductor", chi.conductor() as i64)
        .integer("parity", chi.parity() as i64)
        .complex("value", v.value)
        .complex("error_estimate", Complex64::new(v.error_estimate, 0.0))
        .text("method", format!("{:?}", v.method));
    Ok(r)
}

fn zeta2(a: &Zeta2Args, exec: Execution) -> Result<OutputRecord> {
    let spec = TruncationSpec::new(a.mmax, a.nmax, 1, a.tol)?;
    let direct = z_direct(a.s1, a.s2, &spec)?;
    let coeff = z_coeff(a.s1, a.s2, &spec, exec)?;
    let mut r = OutputRecord::new("zeta2");
    r.param("s1", fmt_c64(a.s1))
        .param("s2", fmt_c64(a.s2))
        .param("mmax", a.mmax)
        .param("nmax", a.nmax)
        .complex("z_direct", direct)
        .complex("z_coeff", coeff)
        .compare("direct_vs_coeff", SeriesComparison::new(direct, coeff, spec));
    if a.decomposition {
        let dspec = TruncationSpec::new(a.decomposition_mmax, a.nmax, 1, a.decomposition_tol)?;
        let sides = decomposition_sides(a.s1, a.s2, &dspec, exec)?;
        r.param("decomposition_mmax", a.decomposition_mmax).complex("slice_prime_to_6", sides.lhs);
        for (name, table) in [("displayed", CorrectionTable::Displayed), ("derived", CorrectionTable::Derived)] {
            let c = sides.comparison(table)?;
            r.complex(&format!("decomposition_{name}"), c.rhs());
            r.compare(&format!("slice_vs_decomposition_{name}"), c);
        }
    }
    r.settle();
    Ok(r)
}

fn fe(n: u64, grid: &[Complex64], norm: Normalization, tol: f64) -> Result<OutputRecord> {
    let checks = match norm {
        Normalization::Modulus => functional_equation_check(n, grid),
        Normalization::Primitive => functional_equation_check_primitive(n, grid),
    };
    let mut r = OutputRecord::new("fe");
    r.param("n", n).param("normalization", format!("{norm:?}").to_lowercase());
    for (s, c) in grid.iter().zip(checks) {
        let mut c = c?;
        c.spec.tolerance = tol;
        r.compare(&format!("lambda(1-s)_vs_lambda(s)@{}", fmt_c64(*s)), c);
    }
    r.settle();
    Ok(r)
}

fn verify_suite(suite: &str, timings: bool, exec: Execution) -> Result<OutputRecord> {
    let reports = if suite == "all" { verify::run_all(exec) } else { verify::run_suite(suite, exec)? };
    let mut columns = vec!["id", "kind", "passed", "worst", "tolerance", "cases", "title", "detail"];
    if timings {
        columns.extend(["elapsed_s", "budget_s"]);
    }
    let rows = reports
        .iter()
        .map(|rep| {
            let kind = match rep.kind {
                ReportKind::Stated => "stated",
                ReportKind::Corrected => "corrected",
                ReportKind::Consistency => "consistency",
            };
            let mut row = vec![
                Cell::Text(rep.id.clone()),
                Cell::Text(kind.into()),
                Cell::Text(rep.passed.to_string()),
                Cell::Float(rep.worst),
                Cell::Float(rep.tolerance),
                Cell::Int(rep.cases as i64),
                Cell::Text(rep.title.clone()),
                Cell::Text(rep.detail.clone()),
            ];
            if timings {
                row.extend([Cell::Float(rep.elapsed_s), Cell::Float(rep.budget_s)]);
            }
            row
        })
        .collect();
    let mut r = OutputRecord::new("verify");
    r.param("suite", suite).table(&columns, rows);
    r.lines = reports.iter().map(|rep| rep.line(timings)).collect();
    r.status =
        Status::from_checks(reports.iter().filter(|rep| rep.kind != ReportKind::Corrected).map(|rep| rep.passed));
    Ok(r)
}

fn table(kind: &TableKind, exec: Execution) -> Result<OutputRecord> {
    let mut r = OutputRecord::new("table");
    match kind {
        TableKind::Counts { mmax, nmin, nmax } => {
            if nmin > nmax {
                bail!("--nmin {nmin} exceeds --nmax {nmax}");
            }
            let mut rows = Vec::new();
            let mut ok = Vec::new();
            for m in 1..=*mmax {
                for n in *nmin..=*nmax {
                    let fast = count_roots(m, n)?;
                    let oracle = count_roots_bruteforce(m, n)?;
                    ok.push(fast == oracle);
                    rows.push(vec![
                        Cell::Int(m as i64),
                        Cell::Int(n),
                        Cell::Int(fast as i64),
                        Cell::Int(oracle as i64),
                    ]);
                }
            }
            r.param("kind", "counts").param("mmax", mmax).param("nmin", nmin).param("nmax", nmax);
            r.table(&["m", "n", "fast", "oracle"], rows);
            r.status = Status::from_checks(ok);
        }
        TableKind::Local { pmax, nmax, s, k, tol } => {
            let mut rows = Vec::new();
            let mut ok = Vec::new();
            for p in cubic_mds::arith::primes_up_to(*pmax) {
                for n in 1..=*nmax {
                    let closed = local_factor_closed(p, n, *s)?;
                    let oracle = local_factor_oracle(&LocalFactorInput { p, n, s: *s, order: *k })?;
                    let e = rel_err(closed, oracle);
                    ok.push(e <= *tol);
                    rows.push(vec![
                        Cell::Int(p as i64),
                        Cell::Int(n as i64),
                        Cell::Text(classify(p, n).to_string()),
                        Cell::Float(closed.re),
                        Cell::Float(closed.im),
                        Cell::Float(oracle.re),
                        Cell::Float(oracle.im),
                        Cell::Float(e),
                    ]);
                }
            }
            r.param("kind", "local").param("pmax", pmax).param("nmax", nmax).param("s", fmt_c64(*s)).param("k", k);
            r.table(&["p", "n", "case", "closed_re", "closed_im", "oracle_re", "oracle_im", "rel_err"], rows);
            r.status = Status::from_checks(ok);
        }
        TableKind::Zn { nmax, s, cutoff, table, tol } => {
            let ns = odd_squarefree_up_to(*nmax);
            let oracle = z_n_oracle_batch(&ns, *s, *cutoff, exec)?;
            let mut rows = Vec::new();
            let mut ok = Vec::new();
            for (&n, &o) in ns.iter().zip(&oracle) {
                let closed = z_n_closed((*table).into(), n, *s)?;
                let e = rel_err(closed, o);
                ok.push(e <= *tol);
                rows.push(vec![
                    Cell::Int(n as i64),
                    Cell::Float(o.re),
                    Cell::Float(o.im),
                    Cell::Float(closed.re),
                    Cell::Float(closed.im),
                    Cell::Float(e),
                ]);
            }
            r.param("kind", "zn")
                .param("nmax", nmax)
                .param("s", fmt_c64(*s))
                .param("cutoff", cutoff)
                .param("table", format!("{table:?}").to_lowercase());
            r.table(&["n", "oracle_re", "oracle_im", "closed_re", "closed_im", "rel_err"], rows);
            r.status = Status::from_checks(ok);
        }
        TableKind::Gauss { qmax, tol } => {
            let mut rows = Vec::new();
            let mut ok = Vec::new();
            for q in 1..=*qmax {
                for chi in all_characters(q)?.into_iter().filter(|c| c.is_real() && c.is_primitive()) {
                    let tau = gauss_sum(&chi)?;
                    let root = (q as f64).sqrt();
                    let expected =
                        if chi.parity() == 0 { Complex64::new(root, 0.0) } else { Complex64::new(0.0, root) };
                    let e = (tau - expected).norm();
                    ok.push(e <= *tol);
                    rows.push(vec![
                        Cell::Int(q as i64),
                        Cell::Int(chi.parity() as i64),
                        Cell::Float(tau.re),
                        Cell::Float(tau.im),
                        Cell::Float(expected.re),
                        Cell::Float(expected.im),
                        Cell::Float(e),
                    ]);
                }
            }
            r.param("kind", "gauss").param("qmax", qmax);
            r.table(&["modulus", "parity", "tau_re", "tau_im", "expected_re", "expected_im", "abs_err"], rows);
            r.status = Status::from_checks(ok);
        }
    }
    Ok(r)
}
