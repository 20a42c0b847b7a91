use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::Prime;

/// Little-endian base-`p` digits of a natural number.
///
/// Zero has the empty expansion, so `length()` is `l + 1` for
/// `p^l <= n < p^(l+1)` and `0` for `n = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitExpansion {
    base: Prime,
    digits: Vec<u64>,
}

impl DigitExpansion {
    pub fn base(&self) -> Prime {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn length(&self) -> usize {
        self.digits.len()
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    /// `sum_j digits[j] * base^j`.
    pub fn reconstruct(&self) -> BigUint {
        let base = BigUint::from(self.base.get());
        self.digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &base + d)
    }
}

pub fn digit_expansion(n: &BigUint, p: Prime) -> DigitExpansion {
    let base = p.get();
    let digits = match n.to_u64() {
        Some(mut small) => {
            let mut digits = Vec::new();
            while small > 0 {
                digits.push(small % base);
                small /= base;
            }
            digits
        }
        None => {
            let mut digits = Vec::new();
            let mut rest = n.clone();
            let divisor = BigUint::from(base);
            while !rest.is_zero() {
                let (q, r) = rest.div_rem(&divisor);
                digits.push(r.to_u64().expect("digit below a u64 base"));
                rest = q;
            }
            digits
        }
    };
    DigitExpansion { base: p, digits }
}

/// `s_p(n)`, the sum of the base-`p` digits of `n`.
pub fn digit_sum(n: &BigUint, p: Prime) -> u64 {
    match n.to_u64() {
        Some(small) => digit_sum_u64(small, p.get()),
        None => digit_expansion(n, p).digit_sum(),
    }
}

/// Digit sum in an arbitrary base `>= 2`, for the machine-word fast paths.
pub fn digit_sum_u64(mut n: u64, base: u64) -> u64 {
    debug_assert!(base >= 2);
    let mut sum = 0;
    while n > 0 {
        sum += n % base;
        n /= base;
    }
    sum
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

    #[test]
    fn expansion_examples() {
        assert_eq!(digit_expansion(&big(10), p(3)).digits(), &[1, 0, 1]);
        assert_eq!(digit_expansion(&big(0), p(7)).digits(), &[] as &[u64]);
        assert_eq!(digit_expansion(&big(9), p(5)).digits(), &[4, 1]);
        assert_eq!(digit_expansion(&big(0), p(7)).length(), 0);
        assert_eq!(digit_expansion(&big(25), p(5)).length(), 3);
    }

    #[test]
    fn digit_sum_examples() {
        assert_eq!(digit_sum(&big(9), p(5)), 5);
        assert_eq!(digit_sum(&big(0), p(5)), 0);
        for q in [2u64, 3, 5, 7, 97] {
            for n in 0..q {
                assert_eq!(digit_sum(&big(n), p(q)), n);
            }
            for k in 0..20 {
                assert_eq!(digit_sum(&BigUint::from(q).pow(k), p(q)), 1);
            }
        }
    }

    #[test]
    fn big_path_matches_small_path() {
        let n = BigUint::from(u64::MAX) * 12345u32 + 678u32;
        for q in [2u64, 3, 11, 1_000_003] {
            let e = digit_expansion(&n, p(q));
            assert_eq!(e.reconstruct(), n);
            assert!(e.digits().iter().all(|&d| d < q));
            assert_ne!(e.digits().last(), Some(&0));
        }
        // 2^200 is a single binary digit.
        assert_eq!(digit_sum(&(BigUint::from(1u32) << 200usize), p(2)), 1);
    }
}
