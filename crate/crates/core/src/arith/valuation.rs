use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{digit_sum, Prime};

/// A `p`-adic valuation: an integer, or `+inf` for zero.
///
/// The derived ordering puts `Infinite` above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl PartialEq<i64> for Valuation {
    fn eq(&self, other: &i64) -> bool {
        *self == Valuation::Finite(*other)
    }
}

impl PartialOrd<i64> for Valuation {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Valuation::Finite(*other)))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => v.fmt(f),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_i64(*v),
            Valuation::Infinite => serializer.serialize_str("+inf"),
        }
    }
}

/// `ord_p` of an integer; `+inf` for zero.
pub fn ord_int(n: &BigInt, p: Prime) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let divisor = BigInt::from(p.get());
    let mut rest = n.clone();
    let mut count = 0;
    loop {
        let (q, r) = rest.div_rem(&divisor);
        if !r.is_zero() {
            return Valuation::Finite(count);
        }
        rest = q;
        count += 1;
    }
}

/// `ord_p(a/b) = ord_p(a) - ord_p(b)` for a reduced fraction.
pub fn ord_rational(x: &BigRational, p: Prime) -> Valuation {
    match ord_int(x.numer(), p) {
        Valuation::Infinite => Valuation::Infinite,
        Valuation::Finite(num) => {
            let den = ord_int(x.denom(), p)
                .finite()
                .expect("denominator is nonzero");
            Valuation::Finite(num - den)
        }
    }
}

/// `ord_p(n!)` by Legendre's sum `sum_{v>=1} floor(n / p^v)`.
pub fn ord_factorial_legendre(n: &BigUint, p: Prime) -> BigUint {
    let divisor = BigUint::from(p.get());
    let mut total = BigUint::zero();
    let mut quotient = n / &divisor;
    while !quotient.is_zero() {
        total += &quotient;
        quotient /= &divisor;
    }
    total
}

/// `ord_p(n!) = (n - s_p(n)) / (p - 1)`.
pub fn ord_factorial_digits(n: &BigUint, p: Prime) -> BigUint {
    let s = digit_sum(n, p);
    (n - BigUint::from(s)) / (p.get() - 1)
}

/// `ord_p(n!)`. Both the Legendre sum and the digit-sum form are evaluated
/// and compared in debug builds.
pub fn ord_factorial(n: &BigUint, p: Prime) -> BigUint {
    let legendre = ord_factorial_legendre(n, p);
    debug_assert_eq!(legendre, ord_factorial_digits(n, p), "n = {n}, p = {p}");
    legendre
}

/// Machine-word `ord_p(n!)` for hot loops over small `n`.
pub(crate) fn ord_factorial_u64(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}
