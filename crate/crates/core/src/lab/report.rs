use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// `<n|p> > 1` iff `p` divides the denominator of `B_n(x) - B_n`.
    MainTheorem,
    /// `p > (n + 1) / lambda(n)` forces `<n|p> <= 1`.
    LemmaBound,
    /// The denominator is squarefree: `ord_p` of the polynomial is -1 or 0.
    Squarefree,
    /// Legendre, Kummer, exact factorization and Lucas agree on `C(n, k)`.
    Binomial,
    /// A carry-free `k` with `(p - 1) | k` exists iff `<n|p> > 1`.
    Witness,
    /// Valuation of the `(p - 1) | k` part of `B_n(x) - B_n`.
    BtnpLemma,
    /// von Staudt-Clausen for `B_n`.
    Clausen,
    /// Three evaluations of `<n|p>` agree.
    FracSum,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::MainTheorem,
        TheoremId::LemmaBound,
        TheoremId::Squarefree,
        TheoremId::Binomial,
        TheoremId::Witness,
        TheoremId::BtnpLemma,
        TheoremId::Clausen,
        TheoremId::FracSum,
    ];

    /// Short name used on the command line.
    pub fn suite_name(self) -> &'static str {
        match self {
            TheoremId::MainTheorem => "main",
            TheoremId::LemmaBound => "bound",
            TheoremId::Squarefree => "squarefree",
            TheoremId::Binomial => "binom",
            TheoremId::Witness => "witness",
            TheoremId::BtnpLemma => "btnp",
            TheoremId::Clausen => "clausen",
            TheoremId::FracSum => "fracsum",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.suite_name())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.suite_name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFailure {
    pub n: u64,
    pub p: u64,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one suite over a range. `cases_failed` always equals
/// `failures.len()`. The elapsed time is metadata: it is neither serialized
/// nor compared.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    theorem: TheoremId,
    range: String,
    cases_total: u64,
    cases_failed: u64,
    failures: Vec<CaseFailure>,
    #[serde(skip)]
    elapsed: Duration,
}

impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        self.theorem == other.theorem
            && self.range == other.range
            && self.cases_total == other.cases_total
            && self.cases_failed == other.cases_failed
            && self.failures == other.failures
    }
}

impl Eq for VerificationReport {}

impl VerificationReport {
    pub fn new(theorem: TheoremId, range: impl Into<String>) -> Self {
        VerificationReport {
            theorem,
            range: range.into(),
            cases_total: 0,
            cases_failed: 0,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// Counts one case; `sides` is only evaluated when the case fails.
    pub fn check(&mut self, n: u64, p: u64, pass: bool, sides: impl FnOnce() -> (String, String)) {
        self.cases_total += 1;
        if !pass {
            let (lhs, rhs) = sides();
            self.failures.push(CaseFailure { n, p, lhs, rhs });
            self.cases_failed += 1;
        }
    }

    /// Associative merge of two shards of the same suite.
    pub fn merge(mut self, other: VerificationReport) -> Self {
        debug_assert_eq!(self.theorem, other.theorem);
        self.cases_total += other.cases_total;
        self.cases_failed += other.cases_failed;
        self.failures.extend(other.failures);
        self.elapsed = self.elapsed.max(other.elapsed);
        self
    }

    pub(crate) fn finish(mut self, elapsed: Duration) -> Self {
        self.failures.sort_by_key(|f| (f.n, f.p));
        self.elapsed = elapsed;
        self
    }

    pub fn theorem(&self) -> TheoremId {
        self.theorem
    }

    pub fn range(&self) -> &str {
        &self.range
    }

    pub fn cases_total(&self) -> u64 {
        self.cases_total
    }

    pub fn cases_failed(&self) -> u64 {
        self.cases_failed
    }

    pub fn failures(&self) -> &[CaseFailure] {
        &self.failures
    }

    pub fn elapsed(&self) -> Duration {
        self.elapsed
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
