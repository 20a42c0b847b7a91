use bernoulli_denom::arith::{ord_int, primes_up_to};
use bernoulli_denom::{
    digit_expansion, digit_sum, frac_sum, fracsum_is_integer, kummer_carries, lucas_binom_mod,
    ord_binomial, Prime, RationalPolynomial,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_prime() -> impl Strategy<Value = Prime> {
    let primes: Vec<Prime> = primes_up_to(200);
    proptest::sample::select(primes)
}

fn natural() -> impl Strategy<Value = BigUint> {
    prop_oneof![
        (0u64..10_000).prop_map(BigUint::from),
        any::<u64>().prop_map(BigUint::from),
        proptest::collection::vec(any::<u32>(), 1..6).prop_map(BigUint::new),
    ]
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #[test]
    fn expansion_reconstructs(n in natural(), p in small_prime()) {
        let e = digit_expansion(&n, p);
        prop_assert_eq!(e.reconstruct(), n.clone());
        prop_assert!(e.digits().iter().all(|&d| d < p.get()));
        prop_assert!(e.digits().last().map_or(n.is_zero(), |&d| d != 0));
    }

    #[test]
    fn fracsum_is_digit_sum_over_p_minus_one(n in natural(), p in small_prime()) {
        let fs = frac_sum(&n, p);
        let expected = BigRational::new(
            BigInt::from(digit_sum(&n, p)),
            BigInt::from(p.get() - 1),
        );
        prop_assert_eq!(fs.value(), &expected);
        prop_assert_eq!(fs.value().is_zero(), n.is_zero());
        prop_assert!(fs.value() >= &BigRational::zero());
    }

    #[test]
    fn fracsum_additive_in_last_digit(a in 0u64..1_000_000, r_seed in any::<u64>(), p in small_prime()) {
        let q = p.get();
        let r = r_seed % q;
        let n = BigUint::from(a) * q + r;
        let lhs = frac_sum(&n, p).into_inner();
        let rhs = frac_sum(&BigUint::from(a), p).into_inner() + frac_sum(&BigUint::from(r), p).into_inner();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fracsum_decomposes_over_digits(n in natural(), p in small_prime()) {
        let total = digit_expansion(&n, p)
            .digits()
            .iter()
            .map(|&d| frac_sum(&BigUint::from(d), p).into_inner())
            .fold(BigRational::zero(), |acc, x| acc + x);
        prop_assert_eq!(frac_sum(&n, p).into_inner(), total);
    }

    #[test]
    fn integrality_iff_divisible(n in natural(), p in small_prime()) {
        let divisible = (&n % (p.get() - 1)).is_zero();
        prop_assert_eq!(fracsum_is_integer(&n, p), divisible);
    }

    #[test]
    fn exceeds_one_iff_digit_sum_at_least_p(n in natural(), p in small_prime()) {
        prop_assert_eq!(frac_sum(&n, p).exceeds_one(), digit_sum(&n, p) >= p.get());
    }

    #[test]
    fn kummer_matches_legendre_and_exact(n in 0u64..400, k_seed in any::<u64>(), p in small_prime()) {
        let k = k_seed % (n + 1);
        let (bn, bk) = (BigUint::from(n), BigUint::from(k));
        let carries = kummer_carries(&bn, &bk, p).unwrap();
        prop_assert_eq!(ord_binomial(&bn, &bk, p).unwrap(), BigUint::from(carries));
        let exact = binomial(n, k);
        prop_assert_eq!(ord_int(&exact, p), carries as i64);
        let lucas = lucas_binom_mod(&bn, &bk, p).unwrap();
        prop_assert_eq!(BigInt::from(lucas), exact % p.get());
        prop_assert_eq!(lucas != 0, carries == 0);
    }

    #[test]
    fn removing_factors_of_p_keeps_digit_sums(m in 2u64..10_000, r in 0u32..6, k in 1u32..20, p in small_prime()) {
        prop_assume!(m % p.get() != 0);
        let core = BigUint::from(m);
        let n = &core * BigUint::from(p.get()).pow(r);
        prop_assert_eq!(digit_sum(&n.pow(k), p), digit_sum(&core.pow(k), p));
    }

    #[test]
    fn polynomial_add_sub_inverse(
        a in proptest::collection::vec((-50i64..50, 1i64..20), 0..8),
        b in proptest::collection::vec((-50i64..50, 1i64..20), 0..8),
    ) {
        let poly = |v: &[(i64, i64)]| RationalPolynomial::new(
            v.iter().map(|&(x, y)| BigRational::new(x.into(), y.into())).collect(),
        );
        let (f, g) = (poly(&a), poly(&b));
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        prop_assert!(f.leading_coefficient().is_none_or(|c| !c.is_zero()));
        prop_assert!(f.coefficients().iter().all(|c| c.denom() > &BigInt::zero()));
    }
}
