//! One test per acceptance criterion. Every report line is printed; the
//! stated criterion (and any consistency line) decides the test outcome.
//! Run with `--nocapture` to see the lines, or use `cubic-mds verify all`.

use cubic_mds::par::Execution;
use cubic_mds::verify::{self, CriterionReport, ReportKind};

fn check(name: &str, reports: Vec<CriterionReport>) {
    assert!(!reports.is_empty(), "{name}: no reports");
    for r in &reports {
        println!("{r}");
    }
    let failing: Vec<String> =
        reports.iter().filter(|r| r.kind != ReportKind::Corrected && !r.passed).map(|r| r.to_string()).collect();
    assert!(failing.is_empty(), "{name}: {}", failing.join("\n"));
}

fn run(name: &str) {
    check(name, verify::run_suite(name, Execution::default()).expect("known suite"));
}

#[test]
fn c01_root_counts() {
    run("roots");
}

#[test]
fn c02_reduced_forms_match_coefficients() {
    run("bijection");
}

#[test]
fn c03_local_factors() {
    run("local");
}

#[test]
fn c04_closed_forms_of_inner_series() {
    run("closed");
}

#[test]
fn c05_character_decomposition_of_a_n() {
    run("characters");
}

#[test]
fn c06_gauss_sums() {
    run("gauss");
}

#[test]
fn c07_functional_equation_per_n() {
    run("fe");
}

#[test]
fn c08_squarefree_restricted_l_series() {
    run("restricted");
}

#[test]
fn c09_residue_identities() {
    run("residue");
}

#[test]
fn c10_regrouping_and_decomposition() {
    run("regroup");
}
