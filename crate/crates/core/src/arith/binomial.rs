use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::prime::pow_mod;
use super::{digit_expansion, frac_sum, ord_factorial, Prime};
use crate::{Error, Result};

fn check_k(n: &BigUint, k: &BigUint) -> Result<()> {
    if k > n {
        return Err(Error::KExceedsN {
            n: n.to_string(),
            k: k.to_string(),
        });
    }
    Ok(())
}

/// `ord_p C(n, k) = ord_p(n!) - ord_p(k!) - ord_p((n-k)!)`.
pub fn ord_binomial(n: &BigUint, k: &BigUint, p: Prime) -> Result<BigUint> {
    check_k(n, k)?;
    let top = ord_factorial(n, p);
    let bottom = ord_factorial(k, p) + ord_factorial(&(n - k), p);
    Ok(top - bottom)
}

/// Number of carries when adding `k` and `n - k` in base `p` (Kummer).
pub fn kummer_carries(n: &BigUint, k: &BigUint, p: Prime) -> Result<u64> {
    check_k(n, k)?;
    let a = digit_expansion(k, p);
    let b = digit_expansion(&(n - k), p);
    let (a, b) = (a.digits(), b.digits());
    let base = p.get();
    let mut carry = 0u64;
    let mut carries = 0u64;
    for j in 0..a.len().max(b.len()) {
        let column = a.get(j).copied().unwrap_or(0) + b.get(j).copied().unwrap_or(0) + carry;
        carry = u64::from(column >= base);
        carries += carry;
    }
    Ok(carries)
}

/// `C(a, b) mod p` for `a, b < p`, zero when `b > a`.
fn small_binom_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..b {
        num = ((num as u128 * ((a - i) % p) as u128) % p as u128) as u64;
        den = ((den as u128 * ((i + 1) % p) as u128) % p as u128) as u64;
    }
    // den is a product of factors below p, hence invertible
    ((num as u128 * pow_mod(den, p - 2, p) as u128) % p as u128) as u64
}

/// `C(n, k) mod p` as the product of digitwise binomials (Lucas).
pub fn lucas_binom_mod(n: &BigUint, k: &BigUint, p: Prime) -> Result<u64> {
    check_k(n, k)?;
    let base = p.get();
    let nd = digit_expansion(n, p);
    let kd = digit_expansion(k, p);
    let mut acc = 1 % base;
    for (j, &nj) in nd.digits().iter().enumerate() {
        let kj = kd.digits().get(j).copied().unwrap_or(0);
        acc = ((acc as u128 * small_binom_mod(nj, kj, base) as u128) % base as u128) as u64;
        if acc == 0 {
            break;
        }
    }
    Ok(acc)
}

/// A `k` with `0 < k < n`, `(p - 1) | k` and `p` not dividing `C(n, k)`,
/// or `None` when `<n|p> <= 1` (then no such `k` exists).
///
/// The digits of `k` are taken greedily from the least-significant end,
/// `k_j = min(n_j, budget)`, until they sum to `p - 1`. Digitwise `k <= n`
/// means no carries, and `s_p(k) = p - 1` forces `(p - 1) | k`.
pub fn witness_k(n: &BigUint, p: Prime) -> Option<BigUint> {
    if !frac_sum(n, p).exceeds_one() {
        return None;
    }
    let expansion = digit_expansion(n, p);
    let base = BigUint::from(p.get());
    let mut budget = p.get() - 1;
    let mut k = BigUint::zero();
    let mut place = BigUint::one();
    for &nj in expansion.digits() {
        if budget == 0 {
            break;
        }
        let kj = nj.min(budget);
        k += &place * kj;
        budget -= kj;
        place *= &base;
    }
    debug_assert_eq!(budget, 0);
    Some(k)
}
