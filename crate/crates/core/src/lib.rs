//! Exact computation of the denominators of `B_n(x) - B_n`.
//!
//! Two independent routes are provided and cross-checked:
//!
//! * the digit-sum product: the denominator is the product of the primes `p`
//!   with `s_p(n) >= p`, where `s_p` is the base-`p` digit sum;
//! * a brute-force route that builds the polynomial from exact Bernoulli
//!   numbers and takes the lcm of its coefficient denominators.
//!
//! The [`arith`] module holds digit expansions, `p`-adic valuations and the
//! fractional-part sum `<n|p> = sum_{v>=1} {n / p^v}`. The [`bernoulli`]
//! module holds exact Bernoulli numbers and polynomials. The [`lab`] module
//! runs exhaustive verification suites over ranges of `n` and produces
//! serializable reports.

pub mod arith;
pub mod bernoulli;
mod error;
pub mod lab;

pub use error::{Error, Result};

pub use arith::{
    digit_expansion, digit_sum, frac_sum, fracsum_is_integer, kummer_carries, lucas_binom_mod,
    ord_binomial, ord_factorial, primes_up_to, witness_k, DigitExpansion, FracSum, Prime,
    Valuation,
};
pub use bernoulli::{
    bernoulli_numbers, bernoulli_poly, bt_np_poly, bt_poly, clausen_denominator, denom_formula,
    ord_poly, poly_denominator, BernoulliTable, DenominatorFactorization, RationalPolynomial,
};
