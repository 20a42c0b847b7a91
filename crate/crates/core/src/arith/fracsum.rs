use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{digit_expansion, digit_sum, ord_factorial, Prime};

/// The fractional-part sum `<n|p> = sum_{v>=1} {n / p^v}`, held exactly.
///
/// Always equal to `s_p(n) / (p - 1)`; zero only for `n = 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FracSum(BigRational);

impl FracSum {
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    /// `<n|p> > 1`, the condition for `p` to divide the denominator.
    pub fn exceeds_one(&self) -> bool {
        self.0 > BigRational::one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl fmt::Display for FracSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn rational(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `n / (p - 1) - ord_p(n!)`.
pub fn frac_sum_closed(n: &BigUint, p: Prime) -> BigRational {
    let pm1 = BigUint::from(p.get() - 1);
    rational(n.clone(), pm1) - BigRational::from_integer(BigInt::from(ord_factorial(n, p)))
}

/// `s_p(n) / (p - 1)`.
pub fn frac_sum_digits(n: &BigUint, p: Prime) -> BigRational {
    rational(BigUint::from(digit_sum(n, p)), BigUint::from(p.get() - 1))
}

/// The truncated form `n / (p^l (p - 1)) + sum_{v=1}^{l} {n / p^v}` with
/// `p^l <= n < p^(l+1)`: the tail beyond `p^l` is a geometric series.
pub fn frac_sum_direct(n: &BigUint, p: Prime) -> BigRational {
    let len = digit_expansion(n, p).length();
    if len == 0 {
        return BigRational::zero();
    }
    let ell = len - 1;
    let base = BigUint::from(p.get());
    let mut power = BigUint::one();
    let mut sum = BigRational::zero();
    for _ in 1..=ell {
        power *= &base;
        sum += rational(n % &power, power.clone());
    }
    sum + rational(n.clone(), &power * (p.get() - 1))
}

/// `<n|p>`, computed from Legendre's formula. Debug builds also evaluate
/// the digit-sum and truncated forms and assert all three agree.
pub fn frac_sum(n: &BigUint, p: Prime) -> FracSum {
    let closed = frac_sum_closed(n, p);
    debug_assert_eq!(closed, frac_sum_digits(n, p), "n = {n}, p = {p}");
    debug_assert_eq!(closed, frac_sum_direct(n, p), "n = {n}, p = {p}");
    FracSum(closed)
}

/// Whether `<n|p>` is a natural number, i.e. `(p - 1) | n`.
pub fn fracsum_is_integer(n: &BigUint, p: Prime) -> bool {
    frac_sum(n, p).is_integer()
}
