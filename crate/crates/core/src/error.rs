use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid base {0}: must be at least 2")]
    InvalidBase(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: String, k: String },

    #[error("index {index} is outside the domain: {reason}")]
    IndexDomain { index: u64, reason: &'static str },

    #[error("requested Bernoulli index {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("Bernoulli table holds indices 0..={max}, index {index} requested")]
    TableTooShort { index: usize, max: usize },

    #[error("invalid range {lo}..={hi}")]
    InvalidRange { lo: u64, hi: u64 },

    #[error(
        "n = {n} is a power of p = {p}: every power of n has base-{p} digit sum 1, \
         so the fractional-part sum never exceeds 1"
    )]
    PowerOfPrime { n: String, p: u64 },

    #[error("{0}")]
    Domain(String),
}
