use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-mds")).args(args).output().expect("binary runs")
}

fn run_jobs(args: &[&str], jobs: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-mds")).args(args).env("CUBIC_MDS_JOBS", jobs).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_example() {
    let o = run(&["count", "45", "19"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["count", "4"]), "{text}");
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["oracle", "4"]));
    assert!(text.ends_with("status pass\n"));
}

#[test]
fn negative_residue_is_accepted() {
    let o = run(&["count", "12", "-3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"][0]["value"], 2);
}

#[test]
fn triadic_vanishing_factor() {
    let o = run(&["euler", "3", "7", "--s", "2,0", "--k", "40", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for r in v["results"].as_array().unwrap().iter().filter(|r| r["kind"] == "complex") {
        assert_eq!(r["re"], 0.0);
        assert_eq!(r["im"], 0.0);
    }
    assert_eq!(v["status"], "pass");
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        &["count", "x", "1"][..],
        &["count", "0", "1"],
        &["euler", "3", "7", "--s", "2,"],
        &["lfun", "--char", "psi:3", "--s", "2"],
        &["lfun", "--char", "nope", "--s", "2"],
        &["verify", "eleven"],
        &["bogus"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(run_jobs(&["count", "4", "1"], "0").status.code(), Some(2));
}

#[test]
fn failing_verification_exits_one() {
    let o = run(&["fe", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("status fail\n"));
    let o = run(&["fe", "5", "--normalization", "primitive"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_round_trips_losslessly() {
    let o = run(&["lfun", "--char", "mod24:5", "--s", "0.5,14.1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
    let value = v["results"].as_array().unwrap().iter().find(|r| r["name"] == "value").unwrap();
    let re = value["re"].as_f64().unwrap();
    assert_eq!(re.to_string().parse::<f64>().unwrap(), re);
}

#[test]
fn output_is_independent_of_worker_count() {
    let args = ["zeta2", "--mmax", "80", "--nmax", "80", "--s1", "2,1", "--s2", "1.8", "--format", "json"];
    let one = run_jobs(&args, "1");
    let four = run_jobs(&args, "4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let t1 = run_jobs(
        &["table", "zn", "--nmax", "30", "--cutoff", "5000", "--table", "derived", "--tol", "1e-2", "--format", "csv"],
        "1",
    );
    let t3 = run_jobs(
        &["table", "zn", "--nmax", "30", "--cutoff", "5000", "--table", "derived", "--tol", "1e-2", "--format", "csv"],
        "3",
    );
    assert_eq!(t1.stdout, t3.stdout);
    assert_eq!(t1.status.code(), Some(0));
}

#[test]
fn csv_tables_have_fixed_columns() {
    let o = run(&["table", "counts", "--mmax", "6", "--nmin", "-2", "--nmax", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,n,fast,oracle"));
    assert_eq!(lines.count(), 6 * 5);
    let o = run(&["forms", "--mmax", "3", "--nmax", "20", "--odd-squarefree", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("a,b,c,n"));
    for l in text.lines().skip(1) {
        let n: u64 = l.rsplit(',').next().unwrap().parse().unwrap();
        assert!(n % 2 == 1);
    }
}

#[test]
fn verify_suite_lines() {
    let o = run(&["verify", "characters"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[PASS] C5"));
    let o = run(&["verify", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "partial");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}
