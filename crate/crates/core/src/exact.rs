//! Exact rational arithmetic contract used by every formula.
//!
//! Values are [`num::BigRational`]: arbitrary-precision, always stored
//! normalized (gcd 1, positive denominator), with structural equality. The
//! bignum machinery itself is delegated to the `num` crate; this module owns
//! the contract pieces the formulas rely on: construction, budgeted powers,
//! and correctly rounded decimal rendering.

use num::bigint::{BigInt, BigUint, Sign};
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Bit budget for exact arithmetic. Iterated-wreath recursions raise
/// numerators to p-th powers per step, so growth must fail loudly instead of
/// stalling the process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitBudget {
    pub bits: u64,
}

impl BitBudget {
    pub const DEFAULT_BITS: u64 = 1 << 22;

    pub fn new(bits: u64) -> Self {
        BitBudget { bits }
    }
}

impl Default for BitBudget {
    fn default() -> Self {
        BitBudget { bits: Self::DEFAULT_BITS }
    }
}

/// Normalized rational n/d. Sign is carried by the numerator.
pub fn rat(n: i64, d: i64) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::InvalidArgument("zero denominator".into()));
    }
    Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Rational from an exact unsigned numerator and denominator.
pub fn rat_big(n: BigUint, d: BigUint) -> Result<BigRational> {
    if d.is_zero() {
        return Err(Error::InvalidArgument("zero denominator".into()));
    }
    Ok(BigRational::new(
        BigInt::from_biguint(Sign::Plus, n),
        BigInt::from_biguint(Sign::Plus, d),
    ))
}

pub fn rat_int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// p^k for integer k of either sign, as an exact rational.
pub fn rat_pow_i(p: u64, k: i64) -> BigRational {
    let mag = BigInt::from(p).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

fn bits_of(x: &BigRational) -> u64 {
    x.numer().bits().max(x.denom().bits())
}

/// Exact x^e with the default bit budget; 0^0 = 1.
pub fn rat_pow(x: &BigRational, e: u64) -> Result<BigRational> {
    rat_pow_with(x, e, BitBudget::default())
}

/// Exact x^e, refusing up front when the result would exceed `budget` bits.
pub fn rat_pow_with(x: &BigRational, e: u64, budget: BitBudget) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if x.is_zero() {
        return Ok(BigRational::zero());
    }
    let needed = bits_of(x).saturating_mul(e);
    if needed > budget.bits {
        return Err(Error::BitBudget { needed, budget: budget.bits, step: None });
    }
    let e32 = u32::try_from(e)
        .map_err(|_| Error::BitBudget { needed, budget: budget.bits, step: None })?;
    Ok(num::traits::Pow::pow(x, e32))
}

/// Correctly rounded (half-even) decimal expansion with exactly `digits`
/// fractional digits.
pub fn to_decimal(x: &BigRational, digits: usize) -> String {
    let neg = x.is_negative();
    let num = x.numer().abs().to_biguint().expect("abs");
    let den = x.denom().to_biguint().expect("positive denominator");

    let scale = BigUint::from(10u32).pow(digits as u32);
    let scaled = num * &scale;
    let mut q = &scaled / &den;
    let r = &scaled % &den;
    let twice = &r * 2u32;
    // round half to even
    if twice > den || (twice == den && (&q % 2u32).to_u32() == Some(1)) {
        q += 1u32;
    }

    let int_part = &q / &scale;
    let frac_part = &q % &scale;
    let sign = if neg && !q.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}
