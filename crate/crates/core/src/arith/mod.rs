//! Digit expansions, `p`-adic valuations, fractional-part sums and the
//! valuation of binomial coefficients.

mod binomial;
mod digits;
mod fracsum;
mod prime;
mod valuation;

pub use binomial::{kummer_carries, lucas_binom_mod, ord_binomial, witness_k};
pub use digits::{digit_expansion, digit_sum, digit_sum_u64, DigitExpansion};
pub use fracsum::{
    frac_sum, frac_sum_closed, frac_sum_digits, frac_sum_direct, fracsum_is_integer, FracSum,
};
pub use prime::{is_prime, primes_up_to, Prime};
pub(crate) use valuation::ord_factorial_u64;
pub use valuation::{
    ord_factorial, ord_factorial_digits, ord_factorial_legendre, ord_int, ord_rational, Valuation,
};
