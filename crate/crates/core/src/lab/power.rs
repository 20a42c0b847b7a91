use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::as_display;
use crate::arith::{digit_sum, Prime};
use crate::{Error, Result};

/// Default number of powers examined by [`power_scan`].
pub const DEFAULT_K_CAP: u32 = 64;

/// Whether `n` is `p^r` for some `r >= 0`: divide out `p` and see if 1 is
/// left.
pub fn is_power_of(n: &BigUint, p: Prime) -> bool {
    if n.is_zero() {
        return false;
    }
    let divisor = BigUint::from(p.get());
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&divisor);
        if !r.is_zero() {
            return rest.is_one();
        }
        rest = q;
    }
}

fn check_base(n: &BigUint, primes: &[Prime]) -> Result<()> {
    if n <= &BigUint::one() {
        return Err(Error::Domain(format!("n = {n} must exceed 1")));
    }
    if let Some(p) = primes.iter().find(|&&p| is_power_of(n, p)) {
        return Err(Error::PowerOfPrime {
            n: n.to_string(),
            p: p.get(),
        });
    }
    Ok(())
}

/// Thresholds `k` beyond which `p | denom(B_{n^k}(x) - B_{n^k})`.
///
/// `per_prime_min_k[p]` is the first `k` with `s_p(n^k) >= p`. The digit sum
/// can drop back below `p` afterwards (for `n = 10`, `p = 5` it does at
/// `k = 7, 8`), so `per_prime_stable_k[p]` records the first `k` from which
/// `s_p(n^j) >= p` holds for every `j` up to `k_cap`, and `m` is the largest
/// of those. Both are observations within the cap, not proofs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerScanResult {
    #[serde(serialize_with = "as_display")]
    pub n: BigUint,
    pub prime_set: Vec<u64>,
    pub per_prime_min_k: BTreeMap<u64, u32>,
    pub per_prime_stable_k: BTreeMap<u64, u32>,
    /// `k` past the first crossing where the digit sum fell below `p` again.
    pub relapses: BTreeMap<u64, Vec<u32>>,
    pub m: u32,
    pub k_cap: u32,
    pub capped: bool,
}

/// Scans `n^k` for `k = 1 ..= k_cap` and each prime of `prime_set`.
///
/// Fails if `n <= 1` or `n` is a power of one of the primes, since then
/// `s_p(n^k) = 1` for every `k`.
pub fn power_scan(n: &BigUint, prime_set: &[Prime], k_cap: u32) -> Result<PowerScanResult> {
    check_base(n, prime_set)?;
    if k_cap == 0 {
        return Err(Error::Domain("k_cap must be at least 1".into()));
    }
    let mut primes: Vec<Prime> = prime_set.to_vec();
    primes.sort_unstable();
    primes.dedup();

    let mut below: BTreeMap<u64, Vec<u32>> = primes.iter().map(|p| (p.get(), Vec::new())).collect();
    let mut first: BTreeMap<u64, u32> = BTreeMap::new();
    let mut power = n.clone();
    for k in 1..=k_cap {
        for &p in &primes {
            if digit_sum(&power, p) >= p.get() {
                first.entry(p.get()).or_insert(k);
            } else {
                below.get_mut(&p.get()).expect("initialized").push(k);
            }
        }
        power *= n;
    }

    let mut stable = BTreeMap::new();
    let mut relapses = BTreeMap::new();
    for (&p, dips) in &below {
        let from = dips.last().map_or(1, |&k| k + 1);
        if from <= k_cap {
            stable.insert(p, from);
        }
        if let Some(&f) = first.get(&p) {
            relapses.insert(p, dips.iter().copied().filter(|&k| k > f).collect());
        }
    }
    let capped = stable.len() < primes.len();
    let m = stable.values().copied().max().unwrap_or(1);
    Ok(PowerScanResult {
        n: n.clone(),
        prime_set: primes.iter().map(|p| p.get()).collect(),
        per_prime_min_k: first,
        per_prime_stable_k: stable,
        relapses,
        m,
        k_cap,
        capped,
    })
}

/// `s_p(n^k)` for `k = 1 ..= k_cap`, with its running maximum.
///
/// This is sampled evidence of growth only; a finite sample cannot show
/// the digit sums tend to infinity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthSeries {
    #[serde(serialize_with = "as_display")]
    pub n: BigUint,
    pub p: u64,
    /// `(k, s_p(n^k))`.
    pub points: Vec<(u32, u64)>,
    pub running_max: Vec<u64>,
    /// The `k` at which the running maximum strictly increased.
    pub record_ks: Vec<u32>,
    /// Whether the running maximum ends above where it started.
    pub max_increased: bool,
}

pub fn digit_sum_growth(n: &BigUint, p: Prime, k_cap: u32) -> Result<GrowthSeries> {
    check_base(n, &[p])?;
    let mut points = Vec::with_capacity(k_cap as usize);
    let mut running_max = Vec::with_capacity(k_cap as usize);
    let mut record_ks = Vec::new();
    let mut best = 0;
    let mut power = n.clone();
    for k in 1..=k_cap {
        let s = digit_sum(&power, p);
        points.push((k, s));
        if s > best {
            if k > 1 {
                record_ks.push(k);
            }
            best = s;
        }
        running_max.push(best);
        power *= n;
    }
    let max_increased = match (running_max.first(), running_max.last()) {
        (Some(a), Some(b)) => b > a,
        _ => false,
    };
    Ok(GrowthSeries {
        n: n.clone(),
        p: p.get(),
        points,
        running_max,
        record_ks,
        max_increased,
    })
}

fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log log n / (log log log n + c) - 1`, the lower bound on the combined
/// digit sums of `n` in two multiplicatively independent bases. The
/// constant `c` depends on the bases and must be supplied by the caller.
/// This is the only floating-point computation in the crate.
pub fn stewart_bound(n: &BigUint, c: f64) -> Result<f64> {
    if n <= &BigUint::from(25u32) {
        return Err(Error::Domain(format!("n = {n} must exceed 25")));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Domain(format!("c = {c} must be a positive real")));
    }
    let ll = ln_big(n).ln();
    Ok(ll / (ll.ln() + c) - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn primes(vs: &[u64]) -> Vec<Prime> {
        vs.iter().map(|&v| p(v)).collect()
    }

    #[test]
    fn powers_detected_by_division() {
        assert!(is_power_of(&big(8), p(2)));
        assert!(is_power_of(&big(1), p(2)));
        assert!(is_power_of(&(BigUint::from(3u32).pow(50)), p(3)));
        assert!(!is_power_of(&big(12), p(2)));
        assert!(!is_power_of(&big(0), p(2)));
        assert!(!is_power_of(&big(10), p(5)));
    }

    // Expected thresholds below come from a separate script that computes
    // s_p(n^k) by repeated division on Python integers.

    #[test]
    fn scan_seven_base_five() {
        let r = power_scan(&big(7), &primes(&[5]), 16).unwrap();
        assert_eq!(r.per_prime_min_k[&5], 2);
        assert_eq!(r.per_prime_stable_k[&5], 2);
        assert_eq!(r.m, 2);
        assert!(!r.capped);
    }

    #[test]
    fn scan_ten_small_primes() {
        let r = power_scan(&big(10), &primes(&[7, 5, 3, 2]), 64).unwrap();
        assert_eq!(r.prime_set, vec![2, 3, 5, 7]);
        let first: Vec<_> = r.per_prime_min_k.into_iter().collect();
        assert_eq!(first, vec![(2, 1), (3, 2), (5, 6), (7, 3)]);
        let stable: Vec<_> = r.per_prime_stable_k.into_iter().collect();
        assert_eq!(stable, vec![(2, 1), (3, 2), (5, 9), (7, 3)]);
        assert_eq!(r.relapses[&5], vec![7, 8]);
        assert_eq!(r.m, 9);
        assert!(!r.capped);
    }

    #[test]
    fn scan_reports_cap() {
        // s_5(10^k) < 5 until k = 6
        let r = power_scan(&big(10), &primes(&[5]), 5).unwrap();
        assert!(r.capped);
        assert!(r.per_prime_min_k.is_empty());
        // first crossing seen but the last sampled power dips again
        let r = power_scan(&big(10), &primes(&[5]), 7).unwrap();
        assert!(r.capped);
        assert_eq!(r.per_prime_min_k[&5], 6);
    }

    #[test]
    fn scan_rejects_prime_powers_and_small_n() {
        assert_eq!(
            power_scan(&big(8), &primes(&[2]), 64),
            Err(Error::PowerOfPrime {
                n: "8".into(),
                p: 2
            })
        );
        assert!(matches!(
            power_scan(&big(1), &primes(&[2]), 64),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            power_scan(&big(10), &primes(&[3]), 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn growth_examples() {
        let g = digit_sum_growth(&big(10), p(3), 20).unwrap();
        let sums: Vec<u64> = g.points.iter().map(|&(_, s)| s).collect();
        assert_eq!(
            sums,
            vec![2, 4, 4, 8, 10, 14, 12, 20, 14, 24, 18, 24, 30, 30, 28, 36, 44, 40, 42, 42]
        );
        assert_eq!(g.running_max.last(), Some(&44));
        assert!(g.max_increased);
        assert_eq!(g.record_ks, vec![2, 4, 5, 6, 8, 10, 13, 16, 17]);

        let g = digit_sum_growth(&big(2), p(3), 10).unwrap();
        assert_eq!(g.points[..3], [(1, 2), (2, 2), (3, 4)]);
        let g = digit_sum_growth(&big(6), p(2), 5).unwrap();
        assert_eq!(g.points[..2], [(1, 2), (2, 2)]);
        assert!(digit_sum_growth(&big(27), p(3), 5).is_err());
    }

    #[test]
    fn stewart_bound_behaviour() {
        assert!(stewart_bound(&big(26), 1.0).unwrap().is_finite());
        assert!(stewart_bound(&big(25), 1.0).is_err());
        assert!(stewart_bound(&big(100), 0.0).is_err());
        assert!(stewart_bound(&big(100), f64::NAN).is_err());
        let lo = stewart_bound(&big(100), 2.0).unwrap();
        let hi = stewart_bound(&big(1_000_000), 2.0).unwrap();
        assert!(hi > lo);
        let mut prev = f64::NEG_INFINITY;
        for e in [2u32, 5, 10, 50, 300, 2000, 10000] {
            let v = stewart_bound(&BigUint::from(10u32).pow(e), 1.5).unwrap();
            assert!(v > prev, "10^{e}");
            prev = v;
        }
    }
}
