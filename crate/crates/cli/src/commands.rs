use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use bernoulli_denom::arith::primes_up_to;
use bernoulli_denom::bernoulli::DEFAULT_BERNOULLI_CAP;
use bernoulli_denom::lab::{
    digit_sum_growth, power_scan, stewart_bound, Lab, TheoremId, VerificationReport, DEFAULT_K_CAP,
};
use bernoulli_denom::{denom_formula, digit_sum, frac_sum, BernoulliTable, Prime};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::output::{Meta, OutputRecord, Rendered};
use crate::{Context, Outcome, EXIT_CAPPED, EXIT_FALSIFIED, EXIT_OK};

#[derive(Debug, Parser)]
#[command(
    name = "bdenom",
    version,
    about = "Denominators of Bernoulli polynomials B_n(x) - B_n"
)]
pub struct Cli {
    /// Largest Bernoulli index the brute-force route may compute.
    #[arg(long, global = true, env = "BDENOM_BERNOULLI_CAP", default_value_t = DEFAULT_BERNOULLI_CAP)]
    pub bernoulli_cap: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Product of the primes with s_p(n) >= p.
    Formula,
    /// lcm of the coefficient denominators of B_n(x) - B_n.
    Oracle,
    /// Both, with an agreement check.
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Denominator of B_n(x) - B_n.
    Denom {
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// The fractional-part sum <n|p> = s_p(n) / (p - 1).
    Frac {
        #[arg(value_parser = parse_natural)]
        n: BigUint,
        p: u64,
    },
    /// Run verification suites (main, bound, squarefree, binom, witness,
    /// btnp, clausen, fracsum, or all).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 300)]
        max_n: u64,
        /// Worker threads; 0 uses the available parallelism.
        #[arg(long, env = "BDENOM_JOBS", default_value_t = 0)]
        jobs: usize,
    },
    /// Find k beyond which every listed prime divides the denominator for n^k.
    Scan {
        #[arg(value_parser = parse_natural)]
        n: BigUint,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, env = "BDENOM_K_CAP", default_value_t = DEFAULT_K_CAP)]
        k_cap: u32,
    },
    /// Digit sums s_p(n^k) for k = 1..=k_cap.
    Growth {
        #[arg(value_parser = parse_natural)]
        n: BigUint,
        p: u64,
        #[arg(long, env = "BDENOM_K_CAP", default_value_t = DEFAULT_K_CAP)]
        k_cap: u32,
    },
    /// Exact Bernoulli numbers B_0..=B_max.
    Bernoulli {
        #[arg(long)]
        max: usize,
    },
    /// Evaluate log log n / (log log log n + c) - 1 (floating point).
    Stewart {
        #[arg(value_parser = parse_natural)]
        n: BigUint,
        #[arg(long)]
        c: f64,
    },
}

fn parse_natural(s: &str) -> Result<BigUint, String> {
    BigUint::from_str(s).map_err(|_| format!("`{s}` is not a natural number"))
}

type CmdResult = Result<(Rendered, u8), Outcome>;

fn usage<E: std::fmt::Display>(e: E) -> Outcome {
    Outcome::usage(e)
}

fn meta(start: Instant) -> Meta {
    Meta {
        elapsed_ms: start.elapsed().as_millis() as u64,
        version: env!("CARGO_PKG_VERSION").to_string(),
        suite_elapsed_ms: BTreeMap::new(),
    }
}

fn record(
    command: &str,
    inputs: Value,
    result: Value,
    exact: bool,
    start: Instant,
) -> OutputRecord {
    OutputRecord {
        command: command.to_string(),
        inputs,
        result,
        exact,
        meta: meta(start),
    }
}

pub(crate) fn execute(cli: Cli, ctx: &Context) -> Outcome {
    let start = Instant::now();
    let format = cli.format;
    let outcome = match cli.command {
        Command::Denom { n, method } => denom(n, method, cli.bernoulli_cap, ctx, start),
        Command::Frac { n, p } => frac(&n, p, start),
        Command::Verify { suite, max_n, jobs } => {
            verify(&suite, max_n, jobs, cli.bernoulli_cap, ctx, start)
        }
        Command::Scan { n, primes, k_cap } => scan(&n, &primes, k_cap, start),
        Command::Growth { n, p, k_cap } => growth(&n, p, k_cap, start),
        Command::Bernoulli { max } => bernoulli(max, cli.bernoulli_cap, start),
        Command::Stewart { n, c } => stewart(&n, c, start),
    };
    match outcome {
        Ok((rendered, code)) => Outcome {
            code,
            stdout: rendered.to_text(format),
            stderr: String::new(),
        },
        Err(outcome) => outcome,
    }
}

fn table_for(max_index: usize, cap: usize, ctx: &Context) -> Result<BernoulliTable, Outcome> {
    match &ctx.bernoulli {
        Some(t) if t.max_index() >= max_index => Ok(t.clone()),
        Some(t) => Err(usage(format!(
            "supplied Bernoulli table stops at index {}",
            t.max_index()
        ))),
        None => BernoulliTable::with_cap(max_index, cap).map_err(usage),
    }
}

/// Distinct prime factors of the oracle denominator, with whatever is left
/// after dividing out primes up to `n + 1` and whether any prime repeated.
fn factor_oracle(denominator: &BigUint, n: u64) -> (Vec<u64>, BigUint, bool) {
    let mut rest = denominator.clone();
    let mut primes = Vec::new();
    let mut squarefree = true;
    for p in primes_up_to(n + 1) {
        let p = p.get();
        let mut count = 0;
        while (&rest % p) == BigUint::ZERO {
            rest /= p;
            count += 1;
        }
        if count > 0 {
            primes.push(p);
        }
        squarefree &= count <= 1;
    }
    (primes, rest, squarefree)
}

fn denom(n: u64, method: Method, cap: usize, ctx: &Context, start: Instant) -> CmdResult {
    let formula = denom_formula(n).map_err(usage)?;
    let mut result = serde_json::Map::new();
    let mut rows = Vec::new();
    let mut plain = String::new();
    let mut agree = true;

    if matches!(method, Method::Formula | Method::Both) {
        result.insert(
            "formula".into(),
            json!({ "primes": formula.primes(), "product": formula.product().to_string() }),
        );
        rows.push(vec![
            "formula".into(),
            n.to_string(),
            join(formula.primes()),
            formula.product().to_string(),
        ]);
        writeln!(
            plain,
            "formula: {} = {}",
            factorization(formula.primes()),
            formula.product()
        )
        .ok();
    }
    if matches!(method, Method::Oracle | Method::Both) {
        let table = table_for(n as usize - 1, cap, ctx)?;
        let poly = table.bt_poly(n as usize).map_err(usage)?;
        let denominator = poly.denominator();
        let (primes, unfactored, squarefree) = factor_oracle(&denominator, n);
        let mut oracle = json!({
            "primes": primes,
            "product": denominator.to_string(),
            "squarefree": squarefree,
        });
        if unfactored != BigUint::from(1u32) {
            oracle["unfactored"] = Value::String(unfactored.to_string());
        }
        result.insert("oracle".into(), oracle);
        rows.push(vec![
            "oracle".into(),
            n.to_string(),
            join(&primes),
            denominator.to_string(),
        ]);
        writeln!(
            plain,
            "oracle:  {} = {}",
            factorization(&primes),
            denominator
        )
        .ok();
        if method == Method::Both {
            agree = &denominator == formula.product();
            result.insert("agree".into(), Value::Bool(agree));
            writeln!(plain, "agree:   {agree}").ok();
        }
    }

    let method_name = match method {
        Method::Formula => "formula",
        Method::Oracle => "oracle",
        Method::Both => "both",
    };
    let rendered = Rendered {
        record: record(
            "denom",
            json!({ "n": n, "method": method_name }),
            Value::Object(result),
            true,
            start,
        ),
        header: vec!["method", "n", "primes", "product"],
        rows,
        plain,
    };
    Ok((rendered, if agree { EXIT_OK } else { EXIT_FALSIFIED }))
}

fn join(primes: &[u64]) -> String {
    primes
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn factorization(primes: &[u64]) -> String {
    if primes.is_empty() {
        "1".into()
    } else {
        primes
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn frac(n: &BigUint, p: u64, start: Instant) -> CmdResult {
    let p = Prime::new(p).map_err(usage)?;
    let fs = frac_sum(n, p);
    let s = digit_sum(n, p);
    let result = json!({
        "frac_sum": fs.to_string(),
        "digit_sum": s,
        "gt_one": fs.exceeds_one(),
        "is_integer": fs.is_integer(),
    });
    let rendered = Rendered {
        record: record(
            "frac",
            json!({ "n": n.to_string(), "p": p.get() }),
            result,
            true,
            start,
        ),
        header: vec!["n", "p", "frac_sum", "digit_sum", "gt_one"],
        rows: vec![vec![
            n.to_string(),
            p.to_string(),
            fs.to_string(),
            s.to_string(),
            fs.exceeds_one().to_string(),
        ]],
        plain: format!("<{n}|{p}> = {fs}  (s_p = {s}, > 1: {})\n", fs.exceeds_one()),
    };
    Ok((rendered, EXIT_OK))
}

fn parse_suites(name: &str) -> Result<Vec<TheoremId>, Outcome> {
    if name == "all" {
        return Ok(TheoremId::ALL.to_vec());
    }
    name.parse::<TheoremId>().map(|t| vec![t]).map_err(usage)
}

fn needs_table(suite: TheoremId) -> bool {
    matches!(
        suite,
        TheoremId::MainTheorem | TheoremId::Squarefree | TheoremId::BtnpLemma | TheoremId::Clausen
    )
}

fn verify(
    name: &str,
    max_n: u64,
    jobs: usize,
    cap: usize,
    ctx: &Context,
    start: Instant,
) -> CmdResult {
    let suites = parse_suites(name)?;
    if max_n == 0 {
        return Err(usage("--max-n must be at least 1"));
    }
    let mut lab = Lab::new(jobs).map_err(usage)?;
    if suites.iter().copied().any(needs_table) {
        let index = usize::try_from(max_n).map_err(usage)?;
        lab = lab.with_table(table_for(index, cap, ctx)?);
    }
    let reports: Vec<VerificationReport> = suites
        .iter()
        .map(|&s| lab.run_suite(s, max_n))
        .collect::<Result<_, _>>()
        .map_err(usage)?;
    let passed = reports.iter().all(VerificationReport::passed);

    let mut plain = String::new();
    let mut rows = Vec::new();
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(
            plain,
            "{status} {:<10} {:>9} cases {:>4} failed  [{}]  {:.1?}",
            r.theorem().suite_name(),
            r.cases_total(),
            r.cases_failed(),
            r.range(),
            r.elapsed()
        )
        .ok();
        for f in r.failures() {
            writeln!(
                plain,
                "    n = {}, p = {}: {} vs {}",
                f.n, f.p, f.lhs, f.rhs
            )
            .ok();
        }
        rows.push(vec![
            r.theorem().suite_name().to_string(),
            r.range().to_string(),
            r.cases_total().to_string(),
            r.cases_failed().to_string(),
            r.passed().to_string(),
        ]);
    }

    let mut rec = record(
        "verify",
        json!({ "suite": name, "max_n": max_n }),
        json!({ "passed": passed, "suites": reports }),
        true,
        start,
    );
    rec.meta.suite_elapsed_ms = reports
        .iter()
        .map(|r| {
            (
                r.theorem().suite_name().to_string(),
                r.elapsed().as_millis() as u64,
            )
        })
        .collect();
    rec.meta.elapsed_ms = start.elapsed().as_millis() as u64;
    let rendered = Rendered {
        record: rec,
        header: vec!["suite", "range", "cases_total", "cases_failed", "passed"],
        rows,
        plain,
    };
    Ok((rendered, if passed { EXIT_OK } else { EXIT_FALSIFIED }))
}

fn primes_from(list: &[u64]) -> Result<Vec<Prime>, Outcome> {
    list.iter().map(|&p| Prime::new(p).map_err(usage)).collect()
}

fn scan(n: &BigUint, primes: &[u64], k_cap: u32, start: Instant) -> CmdResult {
    let primes = primes_from(primes)?;
    let result = power_scan(n, &primes, k_cap).map_err(usage)?;
    let mut plain = String::new();
    let mut rows = Vec::new();
    for &p in &result.prime_set {
        let first = result
            .per_prime_min_k
            .get(&p)
            .map_or("-".to_string(), u32::to_string);
        let stable = result
            .per_prime_stable_k
            .get(&p)
            .map_or("-".to_string(), u32::to_string);
        writeln!(plain, "p = {p}: first k = {first}, holds from k = {stable}").ok();
        rows.push(vec![p.to_string(), first, stable]);
    }
    writeln!(
        plain,
        "M = {}{}",
        result.m,
        if result.capped { " (capped)" } else { "" }
    )
    .ok();
    let code = if result.capped { EXIT_CAPPED } else { EXIT_OK };
    let inputs = json!({ "n": n.to_string(), "primes": result.prime_set, "k_cap": k_cap });
    let rendered = Rendered {
        record: record(
            "scan",
            inputs,
            serde_json::to_value(&result).expect("serializable"),
            true,
            start,
        ),
        header: vec!["p", "min_k", "stable_k"],
        rows,
        plain,
    };
    Ok((rendered, code))
}

fn growth(n: &BigUint, p: u64, k_cap: u32, start: Instant) -> CmdResult {
    let p = Prime::new(p).map_err(usage)?;
    let series = digit_sum_growth(n, p, k_cap).map_err(usage)?;
    let rows: Vec<Vec<String>> = series
        .points
        .iter()
        .zip(&series.running_max)
        .map(|(&(k, s), m)| vec![k.to_string(), s.to_string(), m.to_string()])
        .collect();
    let plain = rows.iter().map(|r| r.join("\t") + "\n").collect();
    let inputs = json!({ "n": n.to_string(), "p": p.get(), "k_cap": k_cap });
    let rendered = Rendered {
        record: record(
            "growth",
            inputs,
            serde_json::to_value(&series).expect("serializable"),
            true,
            start,
        ),
        header: vec!["k", "digit_sum", "running_max"],
        rows,
        plain,
    };
    Ok((rendered, EXIT_OK))
}

fn bernoulli(max: usize, cap: usize, start: Instant) -> CmdResult {
    let table = BernoulliTable::with_cap(max, cap).map_err(usage)?;
    let values: Vec<String> = table.values().iter().map(ToString::to_string).collect();
    let rows = values
        .iter()
        .enumerate()
        .map(|(i, v)| vec![i.to_string(), v.clone()])
        .collect();
    let plain = values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("B_{i} = {v}\n"))
        .collect();
    let rendered = Rendered {
        record: record(
            "bernoulli",
            json!({ "max": max }),
            json!({ "values": values }),
            true,
            start,
        ),
        header: vec!["index", "value"],
        rows,
        plain,
    };
    Ok((rendered, EXIT_OK))
}

fn stewart(n: &BigUint, c: f64, start: Instant) -> CmdResult {
    let bound = stewart_bound(n, c).map_err(usage)?;
    let rendered = Rendered {
        record: record(
            "stewart",
            json!({ "n": n.to_string(), "c": c }),
            json!({ "bound": bound }),
            false,
            start,
        ),
        header: vec!["n", "c", "bound"],
        rows: vec![vec![n.to_string(), c.to_string(), bound.to_string()]],
        plain: format!("{bound}\n"),
    };
    Ok((rendered, EXIT_OK))
}
