use std::process::{Command, Output};
use std::str::FromStr;

use bernoulli_denom::{frac_sum, Prime};
use bernoulli_denom_cli::OutputRecord;
use num_bigint::BigUint;
use num_rational::BigRational;

fn bdenom(args: &[&str]) -> Output {
    bdenom_env(args, &[])
}

fn bdenom_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bdenom"));
    cmd.args(args)
        .env_remove("BDENOM_BERNOULLI_CAP")
        .env_remove("BDENOM_K_CAP")
        .env_remove("BDENOM_JOBS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn record(out: &Output) -> OutputRecord {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn denom_examples() {
    let out = bdenom(&["denom", "5", "--method", "both"]);
    assert_eq!(code(&out), 0);
    let r = record(&out);
    assert_eq!(r.result["formula"]["primes"], serde_json::json!([2, 3]));
    assert_eq!(r.result["oracle"]["product"], "6");
    assert_eq!(r.result["agree"], true);

    let r = record(&bdenom(&["denom", "1"]));
    assert_eq!(r.result["formula"]["product"], "1");

    let r = record(&bdenom(&["denom", "9", "--method", "formula"]));
    assert_eq!(r.result["formula"]["primes"], serde_json::json!([2, 5]));
    assert_eq!(r.result["formula"]["product"], "10");
    assert!(r.result.get("oracle").is_none());

    assert_eq!(code(&bdenom(&["denom", "0"])), 1);
    assert_eq!(code(&bdenom(&["denom", "x"])), 1);
}

#[test]
fn denom_csv_and_plain() {
    let out = bdenom(&["denom", "13", "--method", "both", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "method,n,primes,product\nformula,13,2 3 5 7,210\noracle,13,2 3 5 7,210\n"
    );
    let out = bdenom(&["--format", "plain", "denom", "13", "--method", "oracle"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "oracle:  2*3*5*7 = 210\n"
    );
}

#[test]
fn frac_examples_round_trip() {
    let out = bdenom(&["frac", "9", "5"]);
    assert_eq!(code(&out), 0);
    let r = record(&out);
    assert_eq!(r.result["frac_sum"], "5/4");
    assert_eq!(r.result["gt_one"], true);
    let parsed = BigRational::from_str(r.result["frac_sum"].as_str().unwrap()).unwrap();
    assert_eq!(
        &parsed,
        frac_sum(&BigUint::from(9u32), Prime::new(5).unwrap()).value()
    );

    let r = record(&bdenom(&["frac", "0", "7"]));
    assert_eq!(r.result["frac_sum"], "0");
    assert_eq!(r.result["gt_one"], false);

    let out = bdenom(&["frac", "9", "4"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("4 is not prime"));

    // arbitrary-size n
    let r = record(&bdenom(&["frac", "123456789012345678901234567890", "3"]));
    assert_eq!(r.inputs["n"], "123456789012345678901234567890");
}

#[test]
fn verify_exit_codes() {
    let out = bdenom(&["verify", "main", "--max-n", "1"]);
    assert_eq!(code(&out), 0);
    let r = record(&out);
    assert_eq!(r.result["suites"].as_array().unwrap().len(), 1);
    assert_eq!(r.result["suites"][0]["cases_total"], 1);
    assert_eq!(r.result["passed"], true);
    assert!(r.meta.suite_elapsed_ms.contains_key("main"));

    assert_eq!(code(&bdenom(&["verify", "bogus"])), 1);
    assert_eq!(code(&bdenom(&["verify", "main", "--max-n", "0"])), 1);
}

#[test]
fn verify_csv() {
    let out = bdenom(&["verify", "clausen", "--max-n", "20", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "suite,range,cases_total,cases_failed,passed\nclausen,n in 1..=20,30,0,true\n"
    );
}

#[test]
fn verify_output_independent_of_jobs() {
    let strip = |out: Output| {
        let mut r = record(&out);
        r.meta.elapsed_ms = 0;
        r.meta.suite_elapsed_ms.clear();
        r
    };
    let one = strip(bdenom(&["verify", "all", "--max-n", "40", "--jobs", "1"]));
    let four = strip(bdenom(&["verify", "all", "--max-n", "40", "--jobs", "4"]));
    assert_eq!(one, four);
}

#[test]
fn scan_examples() {
    let out = bdenom(&["scan", "7", "--primes", "5", "--k-cap", "16"]);
    assert_eq!(code(&out), 0);
    let r = record(&out);
    assert_eq!(r.result["per_prime_min_k"]["5"], 2);
    assert_eq!(r.result["m"], 2);

    let out = bdenom(&["scan", "8", "--primes", "2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("power of p = 2"));

    let r = record(&bdenom(&["scan", "10", "--primes", "2,3,5,7"]));
    assert_eq!(r.result["m"], 9);
    assert_eq!(r.result["capped"], false);

    assert_eq!(code(&bdenom(&["scan", "10", "--primes", "4"])), 1);
}

#[test]
fn env_defaults_and_flag_precedence() {
    // s_5(10^k) < 5 for k <= 5
    let capped = bdenom_env(&["scan", "10", "--primes", "5"], &[("BDENOM_K_CAP", "5")]);
    assert_eq!(code(&capped), 3);
    let flagged = bdenom_env(
        &["scan", "10", "--primes", "5", "--k-cap", "64"],
        &[("BDENOM_K_CAP", "5")],
    );
    assert_eq!(code(&flagged), 0);

    let over = bdenom_env(
        &["bernoulli", "--max", "11"],
        &[("BDENOM_BERNOULLI_CAP", "10")],
    );
    assert_eq!(code(&over), 1);
    let raised = bdenom_env(
        &["bernoulli", "--max", "11", "--bernoulli-cap", "11"],
        &[("BDENOM_BERNOULLI_CAP", "10")],
    );
    assert_eq!(code(&raised), 0);
}

#[test]
fn bernoulli_table_output() {
    let r = record(&bdenom(&["bernoulli", "--max", "2"]));
    assert_eq!(r.result["values"], serde_json::json!(["1", "-1/2", "1/6"]));
    let r = record(&bdenom(&["bernoulli", "--max", "0"]));
    assert_eq!(r.result["values"], serde_json::json!(["1"]));
    let r = record(&bdenom(&["bernoulli", "--max", "15"]));
    for k in (3..=15).step_by(2) {
        assert_eq!(r.result["values"][k], "0");
    }
    let csv = bdenom(&["bernoulli", "--max", "4", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap(),
        "index,value\n0,1\n1,-1/2\n2,1/6\n3,0\n4,-1/30\n"
    );
    assert_eq!(code(&bdenom(&["bernoulli", "--max", "5001"])), 1);
}

#[test]
fn growth_and_stewart() {
    let r = record(&bdenom(&["growth", "10", "3", "--k-cap", "3"]));
    assert_eq!(
        r.result["points"],
        serde_json::json!([[1, 2], [2, 4], [3, 4]])
    );
    assert!(r.exact);
    assert_eq!(code(&bdenom(&["growth", "9", "3"])), 1);

    let r = record(&bdenom(&["stewart", "26", "--c", "1"]));
    assert!(!r.exact);
    assert!(r.result["bound"].as_f64().unwrap().is_finite());
    assert_eq!(code(&bdenom(&["stewart", "25", "--c", "1"])), 1);
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(code(&bdenom(&["--help"])), 0);
    assert_eq!(code(&bdenom(&["--version"])), 0);
    assert_eq!(code(&bdenom(&[])), 1);
}
