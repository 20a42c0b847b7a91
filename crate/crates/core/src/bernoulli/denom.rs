use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{digit_sum, digit_sum_u64, is_prime, primes_up_to, Prime};
use crate::{Error, Result};

/// 2 for odd `n`, 3 for even `n`: primes dividing the denominator of
/// `B_n(x) - B_n` never exceed `(n + 1) / lambda(n)`.
pub fn lambda(n: u64) -> u64 {
    if n % 2 == 1 {
        2
    } else {
        3
    }
}

/// The squarefree denominator of `B_n(x) - B_n` as a list of primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorFactorization {
    n: u64,
    primes: Vec<u64>,
    product: BigUint,
}

impl DenominatorFactorization {
    fn from_primes(n: u64, primes: Vec<u64>) -> Self {
        let product = primes.iter().fold(BigUint::one(), |acc, &p| acc * p);
        DenominatorFactorization { n, primes, product }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Increasing and distinct.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn product(&self) -> &BigUint {
        &self.product
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }
}

fn check_positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::IndexDomain {
            index: 0,
            reason: "the denominator is defined for n >= 1",
        });
    }
    Ok(())
}

fn qualifying(n: u64, limit: u64) -> Vec<u64> {
    primes_up_to(limit)
        .into_iter()
        .map(Prime::get)
        .filter(|&p| digit_sum_u64(n, p) >= p)
        .collect()
}

/// `denom(B_n(x) - B_n) = prod_{s_p(n) >= p} p`, searching only primes up to
/// `(n + 1) / lambda(n)`.
pub fn denom_formula(n: u64) -> Result<DenominatorFactorization> {
    check_positive(n)?;
    let bound = (n + 1) / lambda(n);
    Ok(DenominatorFactorization::from_primes(
        n,
        qualifying(n, bound),
    ))
}

/// Same product with the search running over every prime `p <= n`
/// (`s_p(n) = n < p` for larger primes).
pub fn denom_formula_unbounded(n: u64) -> Result<DenominatorFactorization> {
    check_positive(n)?;
    Ok(DenominatorFactorization::from_primes(n, qualifying(n, n)))
}

/// Whether `p` divides the formula-side denominator, for `n` of any size.
/// Only the one prime is examined, so no sieve up to `n` is needed.
pub fn formula_divides(n: &BigUint, p: Prime) -> bool {
    if n.is_zero() {
        return false;
    }
    let lam = if n.is_odd() { 2u64 } else { 3 };
    let within_bound = BigUint::from(p.get()) * lam <= n + 1u32;
    within_bound && digit_sum(n, p) >= p.get()
}

fn check_even(n: u64) -> Result<()> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::IndexDomain {
            index: n,
            reason: "expected an even index n >= 2",
        });
    }
    Ok(())
}

/// Primes `p` with `(p - 1) | n`, increasing, for even `n >= 2`.
pub fn clausen_primes(n: u64) -> Result<Vec<u64>> {
    check_even(n)?;
    let mut primes = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            for divisor in [d, n / d] {
                if is_prime(divisor + 1) {
                    primes.push(divisor + 1);
                }
            }
        }
        d += 1;
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// `denom(B_n) = prod_{(p-1) | n} p` for even `n >= 2` (von Staudt-Clausen).
pub fn clausen_denominator(n: u64) -> Result<BigUint> {
    Ok(clausen_primes(n)?
        .into_iter()
        .fold(BigUint::one(), |acc, p| acc * p))
}
