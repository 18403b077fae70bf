//! Closed forms and recursions for average orders and order distributions of
//! wreath products: the exact double-sum average, its p-group specialization,
//! the two-sided bounds, the remainder form, the cumulative-distribution
//! recursion, iterated-wreath towers, the normalized efficiency ψ, the
//! abelian-case inequality chain, and the limit sequences.
//!
//! Everything here is evaluated in exact rational arithmetic; the only
//! floating-point entry points are the explicitly named `*_float` tower
//! variants, which carry no accuracy guarantee.

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_big, rat_int, rat_pow_i, rat_pow_with, BitBudget};
use crate::numtheory::{divisors, tau};
use crate::spectra::{t_invariant, CumulativeOrderDistribution, OrderSpectrum};

fn big_rat(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// Torsion profile of a p-group A with |A| = p^a and maximum order p^d:
/// the counts s_{p^m} of elements killed by the p^m-th power map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PGroupProfile {
    pub p: u64,
    pub a: u32,
    pub d: u32,
    s: Vec<BigUint>,
}

impl PGroupProfile {
    /// Profile of a p-group from its exact order spectrum.
    pub fn from_spectrum(spec: &OrderSpectrum) -> Result<Self> {
        let p = spec.p_group_prime()?;
        let a = spec.p_group_exponent(p)?;
        let mut d = 0u32;
        for (order, _) in spec.orders() {
            let mut o = order;
            let mut e = 0u32;
            while o > 1 {
                if o % p != 0 {
                    return Err(Error::NotPGroup(format!(
                        "element order {order} is not a power of {p}"
                    )));
                }
                o /= p;
                e += 1;
            }
            d = d.max(e);
        }
        let s = (0..=a).map(|m| spec.s_of_m(p.pow(m))).collect();
        let profile = PGroupProfile { p, a, d, s };
        profile.validate()?;
        Ok(profile)
    }

    /// Profile of the abelian p-group ⊕ Z/p^{e_i}Z computed directly from its
    /// cyclic-factor exponents: s_{p^m} = ∏_i p^{min(m, e_i)}.
    pub fn from_abelian_exponents(p: u64, exponents: &[u32]) -> Result<Self> {
        crate::groups::require_prime(p)?;
        if exponents.is_empty() {
            return Err(Error::InvalidArgument("empty exponent list".into()));
        }
        if exponents.contains(&0) {
            return Err(Error::InvalidArgument("exponents must be ≥ 1".into()));
        }
        let a: u32 = exponents.iter().sum();
        let d: u32 = *exponents.iter().max().unwrap();
        let pb = BigUint::from(p);
        let s = (0..=a)
            .map(|m| {
                exponents
                    .iter()
                    .map(|&e| pb.pow(m.min(e)))
                    .product::<BigUint>()
            })
            .collect();
        let profile = PGroupProfile { p, a, d, s };
        profile.validate()?;
        Ok(profile)
    }

    /// Profile of (Z/pZ)^n.
    pub fn elementary(p: u64, n: u32) -> Result<Self> {
        Self::from_abelian_exponents(p, &vec![1; n as usize])
    }

    fn validate(&self) -> Result<()> {
        let size = self.size();
        if self.a == 0 || self.d == 0 || self.d > self.a {
            return Err(Error::InvalidArgument(
                "p-group profile needs 1 ≤ d ≤ a".into(),
            ));
        }
        if self.s.len() != self.a as usize + 1 || !self.s[0].is_one() {
            return Err(Error::InvalidArgument("s must start at s_{p^0} = 1".into()));
        }
        if self.s.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument("s must be non-decreasing".into()));
        }
        for m in 0..=self.a {
            let full = self.s[m as usize] == size;
            if (m >= self.d) != full {
                return Err(Error::InvalidArgument(format!(
                    "s_{{p^{m}}} inconsistent with maximum order p^{}",
                    self.d
                )));
            }
        }
        Ok(())
    }

    /// s_{p^m}; saturates at p^a for m beyond the stored range.
    pub fn s_at(&self, m: u32) -> &BigUint {
        let idx = (m as usize).min(self.s.len() - 1);
        &self.s[idx]
    }

    /// |A| = p^a.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.a)
    }
}

/// Normalized weights k_n = p^{−n}·d_{p^{b−n}} / a(B) for n = 0..b.
/// Nonnegative and summing to 1; k_0 = 0 exactly when B is noncyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KCoefficients {
    pub p: u64,
    pub b: u32,
    pub k: Vec<BigRational>,
}

pub fn k_coefficients(spec_b: &OrderSpectrum, p: u64) -> Result<KCoefficients> {
    crate::groups::require_prime(p)?;
    let b = spec_b.p_group_exponent(p)?;
    if b == 0 {
        return Err(Error::NotPGroup("trivial group".into()));
    }
    let a_b = spec_b.average_order();
    let k: Vec<BigRational> = (0..=b)
        .map(|n| {
            let d = spec_b.count(p.pow(b - n));
            rat_pow_i(p, -(n as i64)) * big_rat(&d) / &a_b
        })
        .collect();
    let total: BigRational = k.iter().sum();
    assert!(total.is_one(), "k coefficients must sum to 1");
    Ok(KCoefficients { p, b, k })
}

/// Exact average order of A≀B for arbitrary finite groups A, B with at least
/// two elements:
///
///   a(A≀B) = Σ_{m | |A|, n | |B|} (m/n)·(s_m/|A|)^n·d_{|B|/n}·τ(|A|/m)
pub fn theorem1_average(spec_a: &OrderSpectrum, spec_b: &OrderSpectrum) -> Result<BigRational> {
    let size_a = spec_a.group_size_u64()?;
    let size_b = spec_b.group_size_u64()?;
    if size_a < 2 || size_b < 2 {
        return Err(Error::InvalidArgument(
            "both groups must have at least 2 elements".into(),
        ));
    }
    let size_a_big = BigUint::from(size_a);
    let mut total = BigRational::zero();
    for m in divisors(size_a)? {
        let s_m = spec_a.s_of_m(m);
        let tau_term = BigRational::from_integer(BigInt::from(tau(size_a / m)?));
        let ratio = rat_big(s_m, size_a_big.clone())?;
        for n in divisors(size_b)? {
            let d = spec_b.count(size_b / n);
            if d.is_zero() {
                continue;
            }
            let power = rat_pow_with(&ratio, n, BitBudget::default())?;
            let coeff = BigRational::new(BigInt::from(m), BigInt::from(n));
            total += coeff * power * big_rat(&d) * &tau_term;
        }
    }
    Ok(total)
}

/// p-group form of the exact average:
///
///   a(A≀B) = p^d·a(B) − (p−1)·a(B)·Σ_{n≤b} k_n·[Σ_{m≤d−1} p^m·(s_{p^m}/p^a)^{p^n}]
pub fn theorem2_average(profile_a: &PGroupProfile, spec_b: &OrderSpectrum) -> Result<BigRational> {
    let p = profile_a.p;
    let b_prime = spec_b.p_group_prime()?;
    if b_prime != p {
        return Err(Error::PrimeMismatch { left: p, right: b_prime });
    }
    let ks = k_coefficients(spec_b, p)?;
    let a_b = spec_b.average_order();
    let size_a = profile_a.size();

    let mut acc = BigRational::zero();
    for (n, k_n) in ks.k.iter().enumerate() {
        if k_n.is_zero() {
            continue;
        }
        let exp = p.checked_pow(n as u32).ok_or(Error::BitBudget {
            needed: u64::MAX,
            budget: BitBudget::default().bits,
            step: None,
        })?;
        let mut inner = BigRational::zero();
        for m in 0..profile_a.d {
            let ratio = rat_big(profile_a.s_at(m).clone(), size_a.clone())?;
            inner += rat_pow_i(p, m as i64) * rat_pow_with(&ratio, exp, BitBudget::default())?;
        }
        acc += k_n * inner;
    }
    let lead = rat_pow_i(p, profile_a.d as i64) * &a_b;
    Ok(lead - rat_int(p - 1) * a_b * acc)
}

/// Both bounds a(B) ≤ a(A≀B) ≤ p^d·a(B).
pub fn theorem3_check(a_b: &BigRational, a_wreath: &BigRational, p: u64, d: u32) -> bool {
    a_b <= a_wreath && *a_wreath <= rat_pow_i(p, d as i64) * a_b
}

/// Remainder after keeping only the m = d−1 term of the inner sum:
///
///   R = p^d·a(B) − a(A≀B) − (p−1)·a(B)·Σ_n k_n·p^{d−1}·(s_{p^{d−1}}/p^a)^{p^n}
///
/// Always 0 ≤ R ≤ (p^{d−1}−1)·a(B), and exactly 0 when d = 1.
pub fn theorem4_remainder(
    profile_a: &PGroupProfile,
    spec_b: &OrderSpectrum,
) -> Result<BigRational> {
    let p = profile_a.p;
    let d = profile_a.d;
    let a_wreath = theorem2_average(profile_a, spec_b)?;
    let ks = k_coefficients(spec_b, p)?;
    let a_b = spec_b.average_order();
    let ratio = rat_big(profile_a.s_at(d - 1).clone(), profile_a.size())?;

    let mut main = BigRational::zero();
    for (n, k_n) in ks.k.iter().enumerate() {
        if k_n.is_zero() {
            continue;
        }
        let exp = p.pow(n as u32);
        main += k_n
            * rat_pow_i(p, d as i64 - 1)
            * rat_pow_with(&ratio, exp, BitBudget::default())?;
    }
    let lead = rat_pow_i(p, d as i64) * &a_b;
    Ok(lead - a_wreath - rat_int(p - 1) * a_b * main)
}

/// Cumulative order distribution of A≀B from those of A and B:
///
///   r_{A≀B,k} = Σ_{i=0}^{e} (r_{B,i} − r_{B,i+1})·r_{A,k−i}^{p^{b−e+i}}
///
/// with m(A≀B) = p^{d+e} and |A≀B| = p^{a·p^b + b}.
pub fn theorem5_distribution(
    r_a: &CumulativeOrderDistribution,
    r_b: &CumulativeOrderDistribution,
    budget: BitBudget,
) -> Result<CumulativeOrderDistribution> {
    if r_a.p != r_b.p {
        return Err(Error::PrimeMismatch { left: r_a.p, right: r_b.p });
    }
    let p = r_a.p;
    let e = r_b.d;
    let b = u32::try_from(r_b.a)
        .map_err(|_| Error::InvalidArgument("top-group size exponent too large".into()))?;
    let d_out = r_a.d + e;
    let a_out = r_a
        .a
        .checked_mul(u128::from(p).pow(b))
        .and_then(|v| v.checked_add(b as u128))
        .ok_or_else(|| Error::InvalidArgument("size exponent exceeds u128".into()))?;

    let mut r = Vec::with_capacity(d_out as usize + 1);
    for k in 0..=d_out as i64 {
        let mut acc = BigRational::zero();
        for i in 0..=e {
            let weight = r_b.at(i as i64) - r_b.at(i as i64 + 1);
            if weight.is_zero() {
                continue;
            }
            let exp = p
                .checked_pow(b - e + i)
                .ok_or(Error::BitBudget { needed: u64::MAX, budget: budget.bits, step: None })?;
            acc += weight * rat_pow_with(&r_a.at(k - i as i64), exp, budget)?;
        }
        r.push(acc);
    }
    Ok(CumulativeOrderDistribution { p, a: a_out, d: d_out, r })
}

/// One step of the tower recursion, A ↦ A≀(Z/pZ):
///
///   r'_k = (1 − p^{−1})·r_k + r_{k−1}^p / p
pub fn cor51_step(
    r_a: &CumulativeOrderDistribution,
    budget: BitBudget,
) -> Result<CumulativeOrderDistribution> {
    let p = r_a.p;
    let d_out = r_a.d + 1;
    let a_out = r_a
        .a
        .checked_mul(p as u128)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::InvalidArgument("size exponent exceeds u128".into()))?;
    let keep = BigRational::one() - rat_pow_i(p, -1);
    let mut r = Vec::with_capacity(d_out as usize + 1);
    for k in 0..=d_out as i64 {
        let lifted = rat_pow_with(&r_a.at(k - 1), p, budget)? * rat_pow_i(p, -1);
        r.push(&keep * r_a.at(k) + lifted);
    }
    Ok(CumulativeOrderDistribution { p, a: a_out, d: d_out, r })
}

/// Exact trajectory r_0..r_steps of the tower A_0 = A, A_n = A_{n−1}≀(Z/pZ).
/// A bit-budget failure names the step that could not be computed.
pub fn iterate_tower(
    r0: &CumulativeOrderDistribution,
    steps: usize,
    budget: BitBudget,
) -> Result<Vec<CumulativeOrderDistribution>> {
    if steps > 64 {
        return Err(Error::InvalidArgument(format!(
            "tower iteration capped at 64 steps, got {steps}"
        )));
    }
    let mut out = Vec::with_capacity(steps + 1);
    out.push(r0.clone());
    for step in 1..=steps {
        let next = cor51_step(out.last().unwrap(), budget).map_err(|e| match e {
            Error::BitBudget { needed, budget, .. } => {
                Error::BitBudget { needed, budget, step: Some(step) }
            }
            other => other,
        })?;
        out.push(next);
    }
    Ok(out)
}

/// Double-precision tower distribution. No accuracy guarantee: this exists
/// only to peek past the exact bit budget.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatDistribution {
    pub p: u64,
    pub d: u32,
    pub r: Vec<f64>,
}

impl FloatDistribution {
    pub fn at(&self, k: i64) -> f64 {
        if k <= 0 {
            1.0
        } else if k > self.d as i64 {
            0.0
        } else {
            self.r[k as usize]
        }
    }
}

fn to_float(dist: &CumulativeOrderDistribution) -> FloatDistribution {
    FloatDistribution {
        p: dist.p,
        d: dist.d,
        r: dist.r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
    }
}

/// Float counterpart of [`iterate_tower`].
pub fn iterate_tower_float(r0: &CumulativeOrderDistribution, steps: usize) -> Vec<FloatDistribution> {
    let p = r0.p;
    let mut out = vec![to_float(r0)];
    for _ in 0..steps {
        let prev = out.last().unwrap();
        let d_out = prev.d + 1;
        let keep = 1.0 - 1.0 / p as f64;
        let r = (0..=d_out as i64)
            .map(|k| keep * prev.at(k) + prev.at(k - 1).powi(p as i32) / p as f64)
            .collect();
        out.push(FloatDistribution { p, d: d_out, r });
    }
    out
}

/// ψ(A,B) = a(A≀B) / (m(A)·a(B)), the normalized efficiency in [0,1].
pub fn psi(a_wreath: &BigRational, m_a: u64, a_b: &BigRational) -> Result<BigRational> {
    if m_a == 0 {
        return Err(Error::InvalidArgument("maximum order must be ≥ 1".into()));
    }
    if !a_b.is_positive() {
        return Err(Error::InvalidArgument("average order must be positive".into()));
    }
    Ok(a_wreath / (rat_int(m_a) * a_b))
}

fn psi_from_distribution(
    rn: &CumulativeOrderDistribution,
    ks: &KCoefficients,
    budget: BitBudget,
) -> Result<BigRational> {
    let p = rn.p;
    let dn = rn.d;
    let mut acc = BigRational::zero();
    for (r_idx, k_r) in ks.k.iter().enumerate() {
        if k_r.is_zero() {
            continue;
        }
        let exp = p.pow(r_idx as u32);
        let mut inner = BigRational::zero();
        for m in 0..dn {
            inner += rat_pow_i(p, m as i64)
                * rat_pow_with(&rn.at(dn as i64 - m as i64), exp, budget)?;
        }
        acc += k_r * inner;
    }
    Ok(BigRational::one() - rat_int(p - 1) * rat_pow_i(p, -(dn as i64)) * acc)
}

/// ψ(A_n, B) for n = 0..steps along the tower A_n = A_{n−1}≀(Z/pZ), computed
/// from the tower distributions and the k-weights of B.
pub fn psi_tower(
    r0: &CumulativeOrderDistribution,
    spec_b: &OrderSpectrum,
    steps: usize,
    budget: BitBudget,
) -> Result<Vec<BigRational>> {
    let p = r0.p;
    let b_prime = spec_b.p_group_prime()?;
    if b_prime != p {
        return Err(Error::PrimeMismatch { left: p, right: b_prime });
    }
    let ks = k_coefficients(spec_b, p)?;
    let trajectory = iterate_tower(r0, steps, budget)?;
    trajectory
        .iter()
        .map(|rn| psi_from_distribution(rn, &ks, budget))
        .collect()
}

/// Float counterpart of [`psi_tower`]; no accuracy guarantee.
pub fn psi_tower_float(
    r0: &CumulativeOrderDistribution,
    spec_b: &OrderSpectrum,
    steps: usize,
) -> Result<Vec<f64>> {
    let p = r0.p;
    let b_prime = spec_b.p_group_prime()?;
    if b_prime != p {
        return Err(Error::PrimeMismatch { left: p, right: b_prime });
    }
    let ks = k_coefficients(spec_b, p)?;
    let kf: Vec<f64> = ks.k.iter().map(|k| k.to_f64().unwrap_or(f64::NAN)).collect();
    let out = iterate_tower_float(r0, steps)
        .iter()
        .map(|rn| {
            let mut acc = 0.0;
            for (r_idx, &k_r) in kf.iter().enumerate() {
                if k_r == 0.0 {
                    continue;
                }
                let exp = (p as f64).powi(r_idx as i32);
                let inner: f64 = (0..rn.d)
                    .map(|m| (p as f64).powi(m as i32) * rn.at(rn.d as i64 - m as i64).powf(exp))
                    .sum();
                acc += k_r * inner;
            }
            1.0 - (p - 1) as f64 / (p as f64).powi(rn.d as i32) * acc
        })
        .collect();
    Ok(out)
}

/// Exact quantities behind the abelian-A inequality chain.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelianCheck {
    pub psi: BigRational,
    /// 1 − p^{−tp}; a valid lower bound for ψ whenever B is noncyclic
    pub lower: BigRational,
    /// Δ = p^d·a(B) − a(A≀B) − (p−1)·a(B)·k_0·Σ_{m≤d−1} p^m·s_{p^m}/p^a
    pub delta: BigRational,
    /// a(B)·p^{d−tp}, the proof's bound on Δ
    pub delta_bound: BigRational,
    pub cyclic_b: bool,
    pub t: u32,
}

/// Evaluate ψ, Δ and their bounds for an abelian p-group A given by its
/// cyclic-factor exponents, against a p-group B.
pub fn theorem6_check(exponents_a: &[u32], spec_b: &OrderSpectrum) -> Result<AbelianCheck> {
    let p = spec_b.p_group_prime()?;
    let profile = PGroupProfile::from_abelian_exponents(p, exponents_a)?;
    let t = t_invariant(exponents_a)?;
    let d = profile.d;
    let a_b = spec_b.average_order();
    let a_wreath = theorem2_average(&profile, spec_b)?;
    let psi_val = psi(&a_wreath, p.pow(d), &a_b)?;

    let ks = k_coefficients(spec_b, p)?;
    let size_a = profile.size();
    let mut inner = BigRational::zero();
    for m in 0..d {
        inner += rat_pow_i(p, m as i64) * rat_big(profile.s_at(m).clone(), size_a.clone())?;
    }
    let lead = rat_pow_i(p, d as i64) * &a_b;
    let delta = lead - &a_wreath - rat_int(p - 1) * &a_b * &ks.k[0] * inner;

    let tp = t as i64 * p as i64;
    let size_b = spec_b.group_size_u64()?;
    Ok(AbelianCheck {
        psi: psi_val,
        lower: BigRational::one() - rat_pow_i(p, -tp),
        delta,
        delta_bound: rat_pow_i(p, d as i64 - tp) * a_b,
        cyclic_b: !spec_b.count(size_b).is_zero(),
        t,
    })
}

/// a((Z/pZ)^n ≀ B) for n = 1..n_max; the sequence increases to p·a(B) with
/// 0 ≤ p·a(B) − a_n ≤ (p−1)·a(B)·p^{−n}.
pub fn theorem7_sequence(
    spec_b: &OrderSpectrum,
    p: u64,
    n_max: u32,
) -> Result<Vec<BigRational>> {
    if n_max == 0 || n_max > 40 {
        return Err(Error::InvalidArgument(format!(
            "n_max must be between 1 and 40, got {n_max}"
        )));
    }
    (1..=n_max)
        .map(|n| theorem2_average(&PGroupProfile::elementary(p, n)?, spec_b))
        .collect()
}

/// Closed form a(Z/p^bZ) = p^{−b} + p/(p+1)·(p^b − p^{−b}).
pub fn lemma2_cyclic_average(p: u64, b: u32) -> Result<BigRational> {
    crate::groups::require_prime(p)?;
    if b == 0 {
        return Err(Error::InvalidArgument("exponent must be ≥ 1".into()));
    }
    let pb = rat_pow_i(p, b as i64);
    let pnb = rat_pow_i(p, -(b as i64));
    let front = BigRational::new(BigInt::from(p), BigInt::from(p + 1));
    Ok(&pnb + front * (pb - &pnb))
}
