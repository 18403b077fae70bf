//! Integer factorization, divisor enumeration, the Möbius function, and the
//! multiplicative helper τ(n) = ∏_{p|n} (1−p) used by the average-order
//! formula.
//!
//! Inputs are group orders at desk scale, so trial division is enough.

use crate::error::{Error, Result};

/// Prime factorization of a positive integer, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Number of divisors, ∏ (e_i + 1).
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Distinct primes dividing the value.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Factorize by trial division. `factorize(1)` has an empty factor list.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factorize 0".into()));
    }
    if n > i64::MAX as u64 {
        return Err(Error::InvalidArgument(format!("{n} exceeds the 2^63-1 cap")));
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut p: u64 = 2;
    while p <= m / p {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { value: n, factors })
}

/// All divisors of `n` in increasing order, including 1 and n.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut divs = vec![1u64];
    for (p, e) in f.factors {
        let len = divs.len();
        let mut pp = 1u64;
        for _ in 0..e {
            pp *= p;
            for i in 0..len {
                divs.push(divs[i] * pp);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Möbius function: 0 on non-squarefree n, otherwise (−1)^(#prime divisors).
pub fn mobius(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// τ(n) = ∏_{p | n, p prime} (1 − p), with τ(1) = 1 as the empty product.
pub fn tau(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    Ok(f.primes().map(|p| 1 - p as i64).product())
}
