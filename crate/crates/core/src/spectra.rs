//! Order statistics of a finite group: the spectrum d_n of exact-order
//! counts, torsion counts s_m, average and maximum order, the p-group
//! cumulative order distribution r_{A,k}, and the abelian invariant t(A).

use std::collections::BTreeMap;

use num::bigint::BigUint;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_big, rat_pow_i};
use crate::groups::FiniteGroup;

/// Exact element-order counts of a finite group. Counts are big integers so
/// the same type serves spectra produced analytically for groups far beyond
/// enumeration range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSpectrum {
    group_size: BigUint,
    counts: BTreeMap<u64, BigUint>,
}

impl OrderSpectrum {
    /// Build from exact counts, validating Σ d_n = |G|, d_1 = 1, and that
    /// every order divides |G| when |G| fits a machine word.
    pub fn from_counts(counts: BTreeMap<u64, BigUint>) -> Result<Self> {
        let group_size: BigUint = counts.values().sum();
        if counts.get(&1) != Some(&BigUint::one()) {
            return Err(Error::InvalidArgument(
                "spectrum must count exactly one identity element".into(),
            ));
        }
        if counts.keys().any(|&n| n == 0) || counts.values().any(|c| c.is_zero()) {
            return Err(Error::InvalidArgument(
                "spectrum entries must have positive order and count".into(),
            ));
        }
        if let Ok(sz) = u64::try_from(&group_size) {
            if counts.keys().any(|&n| sz % n != 0) {
                return Err(Error::InvalidArgument(
                    "element order must divide the group order".into(),
                ));
            }
        }
        Ok(OrderSpectrum { group_size, counts })
    }

    pub fn group_size(&self) -> &BigUint {
        &self.group_size
    }

    /// Group size as u64, for formulas whose divisor sums need machine
    /// integers.
    pub fn group_size_u64(&self) -> Result<u64> {
        u64::try_from(&self.group_size).map_err(|_| {
            Error::InvalidArgument(format!("group size {} exceeds u64", self.group_size))
        })
    }

    /// d_n, the number of elements of exact order n.
    pub fn count(&self, n: u64) -> BigUint {
        self.counts.get(&n).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn orders(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.counts.iter().map(|(&n, c)| (n, c))
    }

    /// s_m = Σ_{n | m} d_n, the number of elements killed by the m-th power
    /// map.
    pub fn s_of_m(&self, m: u64) -> BigUint {
        self.counts
            .iter()
            .filter(|&(&n, _)| m.is_multiple_of(n))
            .map(|(_, c)| c)
            .sum()
    }

    /// a(G) = Σ n·d_n / |G| as an exact rational.
    pub fn average_order(&self) -> BigRational {
        let total: BigUint = self
            .counts
            .iter()
            .map(|(&n, c)| c * BigUint::from(n))
            .sum();
        rat_big(total, self.group_size.clone()).expect("group size is positive")
    }

    /// m(G), the largest element order.
    pub fn max_order(&self) -> u64 {
        *self.counts.keys().max().expect("spectrum is nonempty")
    }

    /// Exponent a with |G| = p^a, or an error naming the group size.
    pub fn p_group_exponent(&self, p: u64) -> Result<u32> {
        exponent_of(&self.group_size, p)
            .ok_or_else(|| Error::NotPGroup(format!("size {} is not a power of {p}", self.group_size)))
    }

    /// The prime p with |G| = p^a, for |G| ≥ 2.
    pub fn p_group_prime(&self) -> Result<u64> {
        let size = self.group_size_u64()?;
        if size < 2 {
            return Err(Error::NotPGroup("trivial group".into()));
        }
        let f = crate::numtheory::factorize(size)?;
        if f.factors.len() != 1 {
            return Err(Error::NotPGroup(format!("size {size} has several prime divisors")));
        }
        Ok(f.factors[0].0)
    }
}

/// Exact spectrum by enumerating every element of the group.
pub fn spectrum(g: &FiniteGroup) -> OrderSpectrum {
    let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
    for i in 0..g.size() {
        let o = g.element_order(i).expect("validated table");
        counts
            .entry(o)
            .and_modify(|c| *c += 1u32)
            .or_insert_with(BigUint::one);
    }
    OrderSpectrum::from_counts(counts).expect("enumerated spectrum is consistent")
}

fn exponent_of(value: &BigUint, p: u64) -> Option<u32> {
    let p = BigUint::from(p);
    let mut v = value.clone();
    let mut e = 0u32;
    while v > BigUint::one() {
        if (&v % &p).is_zero() {
            v /= &p;
            e += 1;
        } else {
            return None;
        }
    }
    Some(e)
}

/// Cumulative order distribution of a p-group, indexed from the top:
/// r[k] is the fraction of elements of order at most p^{d−k}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulativeOrderDistribution {
    pub p: u64,
    /// group size is p^a; u128 because iterated wreath towers grow a
    /// geometrically
    pub a: u128,
    /// maximum order is p^d
    pub d: u32,
    /// r[k] for k = 0..=d
    pub r: Vec<BigRational>,
}

impl CumulativeOrderDistribution {
    /// r_{A,k} with the boundary conventions: 1 for k ≤ 0, 0 for k > d.
    pub fn at(&self, k: i64) -> BigRational {
        if k <= 0 {
            BigRational::one()
        } else if k > self.d as i64 {
            BigRational::zero()
        } else {
            self.r[k as usize].clone()
        }
    }

    /// Distribution of the cyclic group C_{p^b}: r_k = p^{−k}.
    pub fn cyclic(p: u64, b: u32) -> Result<Self> {
        crate::groups::require_prime(p)?;
        if b == 0 {
            return Err(Error::InvalidArgument("cyclic p-group needs b ≥ 1".into()));
        }
        let r = (0..=b).map(|k| rat_pow_i(p, -(k as i64))).collect();
        Ok(CumulativeOrderDistribution { p, a: b as u128, d: b, r })
    }

    /// Structural invariants: r[0] = 1, non-increasing, r[d] = p^{−a}.
    pub fn validate(&self) -> Result<()> {
        if self.r.len() != self.d as usize + 1 {
            return Err(Error::InvalidArgument("r must have d+1 entries".into()));
        }
        if !self.r[0].is_one() {
            return Err(Error::InvalidArgument("r[0] must be 1".into()));
        }
        if self.r.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("r must be non-increasing".into()));
        }
        if let Ok(a) = i64::try_from(self.a) {
            if self.r[self.d as usize] != rat_pow_i(self.p, -a) {
                return Err(Error::InvalidArgument("r[d] must equal p^(-a)".into()));
            }
        }
        Ok(())
    }
}

/// Cumulative order distribution of a p-group spectrum: r[k] = s_{p^{d−k}} / p^a.
/// Rejects non-p-group input, naming the offending order.
pub fn r_distribution(spec: &OrderSpectrum, p: u64) -> Result<CumulativeOrderDistribution> {
    crate::groups::require_prime(p)?;
    let a = spec.p_group_exponent(p)?;
    let mut d = 0u32;
    for (order, _) in spec.orders() {
        let e = exponent_of(&BigUint::from(order), p).ok_or_else(|| {
            Error::NotPGroup(format!("element order {order} is not a power of {p}"))
        })?;
        d = d.max(e);
    }
    let size = BigUint::from(p).pow(a);
    let r = (0..=d)
        .map(|k| {
            let s = spec.s_of_m(p.pow(d - k));
            rat_big(s, size.clone()).expect("positive size")
        })
        .collect();
    let dist = CumulativeOrderDistribution { p, a: a as u128, d, r };
    dist.validate()?;
    Ok(dist)
}

/// t(A) for an abelian p-group given by its cyclic-factor exponents: the
/// multiplicity of the maximal exponent.
pub fn t_invariant(exponents: &[u32]) -> Result<u32> {
    if exponents.is_empty() {
        return Err(Error::InvalidArgument("empty exponent list".into()));
    }
    if exponents.contains(&0) {
        return Err(Error::InvalidArgument("exponents must be ≥ 1".into()));
    }
    let d = exponents.iter().max().unwrap();
    Ok(exponents.iter().filter(|&e| e == d).count() as u32)
}
