//! Exact Bernoulli numbers and polynomials, and the two routes to the
//! denominator of `B_n(x) - B_n`.

mod denom;
mod poly;
mod table;

pub use denom::{
    clausen_denominator, clausen_primes, denom_formula, denom_formula_unbounded, formula_divides,
    lambda, DenominatorFactorization,
};
pub use poly::{ord_poly, poly_denominator, RationalPolynomial};
pub use table::{
    bernoulli_numbers, bernoulli_poly, bt_np_poly, bt_poly, shared_table, BernoulliTable,
    DEFAULT_BERNOULLI_CAP,
};
