use std::sync::Arc;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{TheoremId, VerificationReport};
use crate::arith::{
    frac_sum, frac_sum_closed, frac_sum_digits, frac_sum_direct, kummer_carries, lucas_binom_mod,
    ord_binomial, ord_factorial_u64, ord_int, ord_rational, primes_up_to, witness_k, Prime,
    Valuation,
};
use crate::bernoulli::{clausen_denominator, clausen_primes, lambda, shared_table, BernoulliTable};
use crate::{Error, Result};

/// Primes used by the binomial suite unless the caller supplies others.
pub const BINOMIAL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Runs verification suites on a fixed-size thread pool.
///
/// The `n`-range is split across workers; each `n` yields an independent
/// partial report and the partials are merged in order, so results do not
/// depend on the number of workers.
pub struct Lab {
    pool: rayon::ThreadPool,
    table: Option<Arc<BernoulliTable>>,
}

impl Lab {
    /// `jobs = 0` uses the available parallelism.
    pub fn new(jobs: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
        Ok(Lab { pool, table: None })
    }

    /// Uses `table` instead of the process-wide memoized Bernoulli numbers.
    pub fn with_table(mut self, table: BernoulliTable) -> Self {
        self.table = Some(Arc::new(table));
        self
    }

    pub fn jobs(&self) -> usize {
        self.pool.current_num_threads()
    }

    fn table(&self, max_index: usize) -> Result<Arc<BernoulliTable>> {
        match &self.table {
            Some(t) if t.max_index() >= max_index => Ok(Arc::clone(t)),
            Some(t) => Err(Error::TableTooShort {
                index: max_index,
                max: t.max_index(),
            }),
            None => shared_table(max_index),
        }
    }

    fn run<F>(
        &self,
        theorem: TheoremId,
        lo: u64,
        hi: u64,
        range: String,
        per_n: F,
    ) -> VerificationReport
    where
        F: Fn(u64, &mut VerificationReport) + Sync,
    {
        let start = Instant::now();
        let report = self.pool.install(|| {
            (lo..=hi)
                .into_par_iter()
                .map(|n| {
                    let mut shard = VerificationReport::new(theorem, range.clone());
                    per_n(n, &mut shard);
                    shard
                })
                .reduce(
                    || VerificationReport::new(theorem, range.clone()),
                    VerificationReport::merge,
                )
        });
        report.finish(start.elapsed())
    }

    /// `<n|p> > 1` iff `p | denom(B_n(x) - B_n)` for `lo <= n <= hi` and
    /// every prime `p <= hi + 1`.
    pub fn verify_main_theorem(&self, lo: u64, hi: u64) -> Result<VerificationReport> {
        self.verify_main_theorem_to(lo, hi, hi + 1)
    }

    /// As [`Lab::verify_main_theorem`] with an explicit prime ceiling.
    pub fn verify_main_theorem_to(
        &self,
        lo: u64,
        hi: u64,
        p_max: u64,
    ) -> Result<VerificationReport> {
        check_range(lo, hi, 1)?;
        let table = self.table(to_index(hi)?)?;
        let primes = primes_up_to(p_max);
        let range = format!("n in {lo}..={hi}, p <= {p_max}");
        Ok(
            self.run(TheoremId::MainTheorem, lo, hi, range, |n, report| {
                let denom = table
                    .bt_poly(n as usize)
                    .expect("table covers the range")
                    .denominator();
                let big_n = BigUint::from(n);
                for &p in &primes {
                    let fs = frac_sum(&big_n, p);
                    let divides = (&denom % p.get()).is_zero();
                    report.check(n, p.get(), fs.exceeds_one() == divides, || {
                        (format!("<n|p> = {fs}"), format!("denominator = {denom}"))
                    });
                }
            }),
        )
    }

    /// `p > (n + 1) / lambda(n)` implies `<n|p> <= 1`, for primes up to
    /// `2 * hi`.
    pub fn verify_lemma_bound(&self, lo: u64, hi: u64) -> Result<VerificationReport> {
        check_range(lo, hi, 1)?;
        let primes = primes_up_to(2 * hi);
        let range = format!("n in {lo}..={hi}, p <= {}", 2 * hi);
        Ok(self.run(TheoremId::LemmaBound, lo, hi, range, |n, report| {
            let big_n = BigUint::from(n);
            for &p in primes.iter().filter(|p| lambda(n) * p.get() > n + 1) {
                let fs = frac_sum(&big_n, p);
                report.check(n, p.get(), !fs.exceeds_one(), || {
                    (format!("<n|p> = {fs}"), "1".into())
                });
            }
        }))
    }

    /// `ord_p(B_n(x) - B_n)` is -1 or 0 for every prime `p <= n + 1`, and
    /// the primes with -1 multiply out to the whole denominator.
    pub fn verify_squarefree(&self, lo: u64, hi: u64) -> Result<VerificationReport> {
        check_range(lo, hi, 1)?;
        let table = self.table(to_index(hi)?)?;
        let range = format!("n in {lo}..={hi}, p <= n + 1");
        Ok(self.run(TheoremId::Squarefree, lo, hi, range, |n, report| {
            let poly = table.bt_poly(n as usize).expect("table covers the range");
            let denom = poly.denominator();
            let mut radical = BigUint::one();
            for p in primes_up_to(n + 1) {
                let v = poly.ord(p);
                if v == -1 {
                    radical *= p.get();
                }
                report.check(n, p.get(), v == -1 || v == 0, || {
                    (format!("ord_p = {v}"), "-1 or 0".into())
                });
            }
            report.check(n, 0, radical == denom, || {
                (
                    format!("product of primes with ord_p = -1: {radical}"),
                    format!("denominator = {denom}"),
                )
            });
        }))
    }

    /// For `0 <= k <= n` and each prime: Legendre difference, Kummer carry
    /// count and the valuation of the exact `C(n, k)` agree, Lucas gives the
    /// exact residue, and the residue is nonzero iff there are no carries.
    pub fn verify_binomial(
        &self,
        lo: u64,
        hi: u64,
        primes: &[Prime],
    ) -> Result<VerificationReport> {
        check_range(lo, hi, 0)?;
        let list: Vec<String> = primes.iter().map(Prime::to_string).collect();
        let range = format!("n in {lo}..={hi}, 0 <= k <= n, p in {{{}}}", list.join(","));
        Ok(self.run(TheoremId::Binomial, lo, hi, range, |n, report| {
            let big_n = BigUint::from(n);
            let mut exact = BigInt::one(); // C(n, k)
            for k in 0..=n {
                let big_k = BigUint::from(k);
                for &p in primes {
                    let legendre = ord_binomial(&big_n, &big_k, p).expect("k <= n");
                    let carries = kummer_carries(&big_n, &big_k, p).expect("k <= n");
                    let factored = ord_int(&exact, p);
                    let lucas = lucas_binom_mod(&big_n, &big_k, p).expect("k <= n");
                    let residue = exact.mod_floor(&BigInt::from(p.get()));
                    let pass = legendre.to_u64() == Some(carries)
                        && factored == Valuation::Finite(carries as i64)
                        && BigInt::from(lucas) == residue
                        && (lucas != 0) == (carries == 0);
                    report.check(n, p.get(), pass, || {
                        (
                            format!("k = {k}: legendre = {legendre}, carries = {carries}, lucas = {lucas}"),
                            format!("ord_p C(n,k) = {factored}, C(n,k) mod p = {residue}"),
                        )
                    });
                }
                exact = exact * (n - k) / (k + 1);
            }
        }))
    }

    /// For `2 <= n` and primes `p <= n`: some `0 < k < n` with
    /// `(p - 1) | k` has `p` not dividing `C(n, k)` iff `<n|p> > 1`, and
    /// the constructed witness is such a `k`.
    pub fn verify_witness(&self, lo: u64, hi: u64) -> Result<VerificationReport> {
        check_range(lo, hi, 2)?;
        let range = format!("n in {lo}..={hi}, p <= n");
        Ok(self.run(TheoremId::Witness, lo, hi, range, |n, report| {
            let big_n = BigUint::from(n);
            for p in primes_up_to(n) {
                let q = p.get();
                let fs = frac_sum(&big_n, p);
                let carry_free = (1..n).filter(|k| k % (q - 1) == 0).find(|&k| {
                    ord_factorial_u64(n, q) == ord_factorial_u64(k, q) + ord_factorial_u64(n - k, q)
                });
                let witness = witness_k(&big_n, p);
                let witness_ok = match &witness {
                    None => !fs.exceeds_one(),
                    Some(k) => {
                        fs.exceeds_one()
                            && !k.is_zero()
                            && k < &big_n
                            && (k % (q - 1)).is_zero()
                            && ord_binomial(&big_n, k, p).expect("k < n").is_zero()
                    }
                };
                report.check(
                    n,
                    q,
                    carry_free.is_some() == fs.exceeds_one() && witness_ok,
                    || {
                        (
                            format!("<n|p> = {fs}, witness = {witness:?}"),
                            format!("first carry-free k = {carry_free:?}"),
                        )
                    },
                );
            }
        }))
    }

    /// For `n >= 3` and primes `p <= n + 1`: the `(p - 1) | k` part has
    /// valuation -1 iff `<n|p> > 1` (and is `>= 0` otherwise), and the full
    /// polynomial has valuation `min(0, ord_p(n / 2), that valuation)`.
    pub fn verify_btnp_lemma(&self, lo: u64, hi: u64) -> Result<VerificationReport> {
        check_range(lo, hi, 3)?;
        let table = self.table(to_index(hi)?)?;
        let range = format!("n in {lo}..={hi}, p <= n + 1");
        Ok(self.run(TheoremId::BtnpLemma, lo, hi, range, |n, report| {
            let full = table.bt_poly(n as usize).expect("table covers the range");
            let half_n = BigRational::new(BigInt::from(n), BigInt::from(2));
            let big_n = BigUint::from(n);
            for p in primes_up_to(n + 1) {
                let part = table.bt_np_poly(n as usize, p).expect("n >= 3");
                let v = part.ord(p);
                let fs = frac_sum(&big_n, p);
                let lemma = if fs.exceeds_one() { v == -1 } else { v >= 0 };
                let odd_two = !(p.get() == 2 && n % 2 == 1) || v == -1;
                report.check(n, p.get(), lemma && odd_two, || {
                    (format!("ord_p part = {v}"), format!("<n|p> = {fs}"))
                });
                let predicted = Valuation::Finite(0).min(ord_rational(&half_n, p)).min(v);
                let actual = full.ord(p);
                report.check(n, p.get(), predicted == actual, || {
                    (
                        format!("ord_p full = {actual}"),
                        format!("min(0, ord_p(n/2), part) = {predicted}"),
                    )
                });
            }
        }))
    }

    /// `B_n + sum_{(p-1)|n} 1/p` is an integer and the Clausen product is
    /// the denominator of `B_n` for even `n`; `B_n = 0` for odd `n >= 3`.
    pub fn verify_clausen(&self, lo: u64, hi: u64) -> Result<VerificationReport> {
        check_range(lo, hi, 1)?;
        let table = self.table(to_index(hi)?)?;
        let range = format!("n in {lo}..={hi}");
        Ok(self.run(TheoremId::Clausen, lo, hi, range, |n, report| {
            let b = table.get(n as usize).expect("table covers the range");
            if n % 2 == 1 {
                let expected = if n == 1 {
                    BigRational::new(BigInt::from(-1), BigInt::from(2))
                } else {
                    BigRational::zero()
                };
                report.check(n, 0, *b == expected, || {
                    (format!("B_n = {b}"), expected.to_string())
                });
                return;
            }
            let shifted = clausen_primes(n)
                .expect("n is even")
                .into_iter()
                .fold(b.clone(), |acc, p| {
                    acc + BigRational::new(BigInt::one(), BigInt::from(p))
                });
            report.check(n, 0, shifted.is_integer(), || {
                (format!("B_n + sum 1/p = {shifted}"), "an integer".into())
            });
            let clausen = BigInt::from(clausen_denominator(n).expect("n is even"));
            report.check(n, 0, b.denom() == &clausen, || {
                (
                    format!("denom(B_n) = {}", b.denom()),
                    format!("prod p = {clausen}"),
                )
            });
        }))
    }

    /// Closed form, digit-sum form and truncated direct form of `<n|p>`
    /// agree, and `<n|p>` is an integer iff `(p - 1) | n`.
    pub fn verify_frac_sum(&self, lo: u64, hi: u64, p_max: u64) -> Result<VerificationReport> {
        check_range(lo, hi, 0)?;
        let primes = primes_up_to(p_max);
        let range = format!("n in {lo}..={hi}, p <= {p_max}");
        Ok(self.run(TheoremId::FracSum, lo, hi, range, |n, report| {
            let big_n = BigUint::from(n);
            for &p in &primes {
                let closed = frac_sum_closed(&big_n, p);
                let digits = frac_sum_digits(&big_n, p);
                let direct = frac_sum_direct(&big_n, p);
                let integral = closed.is_integer() == (n % (p.get() - 1) == 0);
                report.check(
                    n,
                    p.get(),
                    closed == digits && digits == direct && integral,
                    || {
                        (
                            format!("closed = {closed}, digits = {digits}"),
                            format!("direct = {direct}"),
                        )
                    },
                );
            }
        }))
    }

    /// Runs one suite with its default parameters up to `max_n`.
    pub fn run_suite(&self, suite: TheoremId, max_n: u64) -> Result<VerificationReport> {
        match suite {
            TheoremId::MainTheorem => self.verify_main_theorem(1, max_n),
            TheoremId::LemmaBound => self.verify_lemma_bound(1, max_n),
            TheoremId::Squarefree => self.verify_squarefree(1, max_n),
            TheoremId::Binomial => {
                let primes: Vec<Prime> = BINOMIAL_PRIMES
                    .iter()
                    .map(|&p| Prime::new(p).expect("listed primes are prime"))
                    .collect();
                self.verify_binomial(0, max_n, &primes)
            }
            TheoremId::Witness => self.verify_witness(2, max_n.max(2)),
            TheoremId::BtnpLemma => self.verify_btnp_lemma(3, max_n.max(3)),
            TheoremId::Clausen => self.verify_clausen(1, max_n),
            TheoremId::FracSum => self.verify_frac_sum(0, max_n, 100),
        }
    }
}

fn check_range(lo: u64, hi: u64, min_lo: u64) -> Result<()> {
    if lo < min_lo || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    Ok(())
}

fn to_index(n: u64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::Domain(format!("n = {n} does not fit in memory")))
}

fn default_lab() -> Result<Lab> {
    Lab::new(0)
}

pub fn verify_main_theorem(lo: u64, hi: u64) -> Result<VerificationReport> {
    default_lab()?.verify_main_theorem(lo, hi)
}

pub fn verify_lemma_bound(lo: u64, hi: u64) -> Result<VerificationReport> {
    default_lab()?.verify_lemma_bound(lo, hi)
}

pub fn verify_squarefree(lo: u64, hi: u64) -> Result<VerificationReport> {
    default_lab()?.verify_squarefree(lo, hi)
}
