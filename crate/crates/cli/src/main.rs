//! `cubic-mds`: single computations, acceptance suites and tables for the
//! double Dirichlet series of positive-definite binary cubic forms.
//!
//! Exit status: 0 when every comparison holds, 1 when any verification
//! fails, 2 on malformed input. Data goes to stdout, diagnostics to stderr.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use args::parse_complex;
use output::{Format, Status};

#[derive(Debug, Parser)]
#[command(name = "cubic-mds", version, about = "Double Dirichlet series of positive-definite binary cubic forms")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Worker threads; 1 runs sequentially. Defaults to the available cores.
    #[arg(long, global = true, env = "CUBIC_MDS_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Square roots of n modulo m, fast and by enumeration.
    Count {
        m: u64,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Reduced triples (a, b, c) with a <= mmax and 1 <= 3ac - b^2 <= nmax.
    /// CSV columns: a,b,c,n.
    Forms {
        #[arg(long)]
        mmax: u64,
        #[arg(long)]
        nmax: u64,
        #[arg(long)]
        odd_squarefree: bool,
    },
    /// Local factor at p: truncated local series against the closed form.
    Euler {
        p: u64,
        n: u64,
        #[arg(long, value_parser = parse_complex, default_value = "2")]
        s: Complex64,
        #[arg(long, default_value_t = 60)]
        k: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Z_n(s): coefficient sum against closed forms and the Euler product.
    Zn {
        n: u64,
        #[arg(long, value_parser = parse_complex, default_value = "2.5")]
        s: Complex64,
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
        /// Prime bound of the Euler product.
        #[arg(long, default_value_t = 10_000)]
        primes: u64,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Dirichlet L-value; SPEC is eta:-n, mod24:j or psi:n.
    Lfun {
        #[arg(long = "char", allow_hyphen_values = true)]
        character: String,
        #[arg(long, value_parser = parse_complex)]
        s: Complex64,
    },
    /// Z(s1, s2) by forms and by coefficients; optionally the gcd(n,6)=1
    /// slice against its character decomposition.
    Zeta2(Zeta2Args),
    /// Completed L-function residual |Lambda(1-s) - Lambda(s)| / |Lambda(s)|.
    Fe {
        n: u64,
        #[arg(long, value_parser = parse_complex, num_args = 1.., default_values = ["0.3", "0.75", "0.6,2", "0.5,5"])]
        grid: Vec<Complex64>,
        #[arg(long, value_enum, default_value = "modulus")]
        normalization: commands::Normalization,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Acceptance suites: roots, bijection, local, closed, characters, gauss,
    /// fe, restricted, residue, regroup (or 1..10), or all.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        /// Include wall-clock timings (making output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Case-by-case tables.
    #[command(subcommand)]
    Table(commands::TableKind),
}

#[derive(Debug, Args)]
pub struct Zeta2Args {
    #[arg(long, value_parser = parse_complex, default_value = "2")]
    pub s1: Complex64,
    #[arg(long, value_parser = parse_complex, default_value = "2")]
    pub s2: Complex64,
    #[arg(long, default_value_t = 300)]
    pub mmax: u64,
    #[arg(long, default_value_t = 300)]
    pub nmax: u64,
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    /// Also check the decomposition of the gcd(n,6)=1 slice.
    #[arg(long)]
    pub decomposition: bool,
    /// m cutoff for the slice in the decomposition check.
    #[arg(long, default_value_t = 1_000_000)]
    pub decomposition_mmax: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub decomposition_tol: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let record = match commands::execution(cli.jobs).and_then(|exec| commands::run(&cli.command, exec)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = record.write(cli.format, &mut out).and_then(|_| Ok(out.flush()?)) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match record.status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail | Status::Partial => ExitCode::from(1),
    }
}
