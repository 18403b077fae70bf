//! Property-based invariants for the arithmetic layers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, Zero};
use proptest::prelude::*;

use wreath_core::exact::{rat, rat_pow, to_decimal};
use wreath_core::numtheory::{divisors, factorize, mobius, tau};

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (any::<i32>(), 1..=i32::MAX).prop_map(|(n, d)| rat(n as i64, d as i64).unwrap())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #[test]
    fn field_axioms(x in arb_rational(), y in arb_rational(), z in arb_rational()) {
        prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
        prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
        prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn pow_is_additive_in_the_exponent(x in arb_rational(), a in 0u64..12, b in 0u64..12) {
        // 0^0 = 1 makes the law fail at x = 0, a+b > 0 with one of them 0
        prop_assume!(!x.is_zero());
        let lhs = rat_pow(&x, a + b).unwrap();
        let rhs = rat_pow(&x, a).unwrap() * rat_pow(&x, b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn decimal_round_trip(x in arb_rational(), digits in 1usize..20) {
        let rendered = to_decimal(&x, digits);
        let (sign, body) = match rendered.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, rendered.as_str()),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap();
        let scale = BigInt::from(10u32).pow(digits as u32);
        let as_int: BigInt = format!("{int_part}{frac_part}").parse().unwrap();
        let parsed = BigRational::new(as_int * sign, scale.clone());
        let err = (&x - parsed).abs();
        prop_assert!(err <= BigRational::new(BigInt::from(1), scale));
    }

    #[test]
    fn mobius_is_multiplicative_on_coprime_pairs(a in 1u64..=100, b in 1u64..=100) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(
            mobius(a * b).unwrap(),
            mobius(a).unwrap() * mobius(b).unwrap()
        );
    }

    #[test]
    fn divisor_count_matches_factorization(n in 1u64..100_000) {
        let f = factorize(n).unwrap();
        prop_assert_eq!(f.divisor_count(), divisors(n).unwrap().len() as u64);
    }

    #[test]
    fn tau_matches_divisor_sum(n in 1u64..10_000) {
        let by_sum: i64 = divisors(n).unwrap()
            .iter()
            .map(|&d| d as i64 * mobius(d).unwrap())
            .sum();
        prop_assert_eq!(tau(n).unwrap(), by_sum);
    }
}
