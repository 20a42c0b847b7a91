//! Exhaustive verification over ranges of `n`, plus the power-growth scans.
//!
//! Every suite checks an exact statement case by case and records each
//! failing case with both sides of the comparison. Quantifiers over all
//! primes are cut off at explicit ceilings; primes above `n` need no loop
//! because `<n|p> = n / (p - 1) <= 1` there, and every prime in the
//! denominator of `B_n(x) - B_n` is at most `n`.

mod power;
mod report;
mod suites;

pub use power::{
    digit_sum_growth, is_power_of, power_scan, stewart_bound, GrowthSeries, PowerScanResult,
    DEFAULT_K_CAP,
};
pub use report::{CaseFailure, TheoremId, VerificationReport};
pub use suites::{
    verify_lemma_bound, verify_main_theorem, verify_squarefree, Lab, BINOMIAL_PRIMES,
};

use serde::Serializer;

pub(crate) fn as_display<T: std::fmt::Display, S: Serializer>(
    value: &T,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}
