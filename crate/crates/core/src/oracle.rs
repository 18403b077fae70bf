//! Independent ground truth for the formula modules: exhaustive enumeration
//! of A≀B by iterated semidirect multiplication, plus a second semi-analytic
//! oracle that counts orders through the orbit-product structure of the top
//! element's action.
//!
//! Neither path touches the `formulas` module. The brute-force oracle works
//! element by element with no shortcuts; the orbit oracle reads the orbit
//! decomposition straight off the Cayley table and scales far beyond the
//! enumeration cap.

use std::collections::BTreeMap;

use num::bigint::{BigInt, BigUint};
use num::traits::Zero;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Wreath};
use crate::numtheory::{divisors, mobius};
use crate::spectra::{spectrum, OrderSpectrum};

/// Enumeration cap and worker count for the brute-force oracle.
#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// maximum |A|^|B|·|B| that will be enumerated
    pub cap: u128,
    pub workers: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { cap: 1 << 21, workers: 1 }
    }
}

/// Exact order spectrum of A≀B by enumerating every element, single worker.
pub fn brute_force_spectrum(a: &FiniteGroup, b: &FiniteGroup) -> Result<OrderSpectrum> {
    brute_force_spectrum_with(a, b, &OracleOptions::default())
}

/// Exact order spectrum of A≀B by enumerating every element. Work is
/// partitioned by top element; counts merge by addition, so the result is
/// bit-identical for any worker count.
pub fn brute_force_spectrum_with(
    a: &FiniteGroup,
    b: &FiniteGroup,
    opts: &OracleOptions,
) -> Result<OrderSpectrum> {
    let w = Wreath::new(a, b);
    let size = w.size();
    if size > opts.cap {
        return Err(Error::SizeCap { size, cap: opts.cap });
    }
    let top_orders: Vec<u64> = (0..b.size())
        .map(|x| b.element_order(x))
        .collect::<Result<_>>()?;

    let workers = opts.workers.max(1).min(b.size());
    let chunk = b.size().div_ceil(workers);
    let partials: Vec<BTreeMap<u64, u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|wi| {
                let lo = wi * chunk;
                let hi = ((wi + 1) * chunk).min(b.size());
                let w = &w;
                let top_orders = &top_orders;
                scope.spawn(move || count_partition(w, lo..hi, top_orders))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("oracle worker")).collect()
    });

    let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
    for partial in partials {
        for (order, c) in partial {
            counts
                .entry(order)
                .and_modify(|acc| *acc += c)
                .or_insert_with(|| BigUint::from(c));
        }
    }
    OrderSpectrum::from_counts(counts)
}

fn count_partition(
    w: &Wreath<'_>,
    tops: std::ops::Range<usize>,
    top_orders: &[u64],
) -> BTreeMap<u64, u64> {
    let bn = w.b.size();
    let an = w.a.size() as u64;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut base = vec![0u16; bn];
    let mut cur = vec![0u16; bn];
    let mut scratch = vec![0u16; bn];
    for top in tops {
        base.iter_mut().for_each(|v| *v = 0);
        loop {
            // order of (base, top) by repeated multiplication
            cur.copy_from_slice(&base);
            let mut cur_top = top as u16;
            let mut order = 1u64;
            while cur_top != 0 || cur.iter().any(|&v| v != 0) {
                let t = w.mul_into(&cur, cur_top, &base, top as u16, &mut scratch);
                std::mem::swap(&mut cur, &mut scratch);
                cur_top = t;
                order += 1;
            }
            // the top component's order divides the element's order
            assert_eq!(
                order % top_orders[top],
                0,
                "top order must divide element order"
            );
            *counts.entry(order).or_insert(0) += 1;

            // next base tuple in mixed-radix order
            let mut i = 0;
            loop {
                if i == bn {
                    break;
                }
                base[i] += 1;
                if (base[i] as u64) < an {
                    break;
                }
                base[i] = 0;
                i += 1;
            }
            if i == bn {
                break;
            }
        }
    }
    counts
}

/// Order spectrum of A≀B via the orbit-product structure: for a top element
/// of order d, the base tuples split into |B|/d independent orbit products,
/// each uniformly distributed over A, and the element order is d times the
/// lcm of the orbit-product orders. Torsion counts are inverted to exact
/// order counts over the divisor lattice.
pub fn orbit_spectrum(a: &FiniteGroup, b: &FiniteGroup) -> Result<OrderSpectrum> {
    let spec_a = spectrum(a);
    let size_a = a.size() as u64;
    let divs_a = divisors(size_a)?;
    // torsion counts of A, indexed by divisor
    let s: BTreeMap<u64, BigUint> = divs_a.iter().map(|&m| (m, spec_a.s_of_m(m))).collect();

    let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
    let mut per_order: BTreeMap<u64, Vec<(u64, BigUint)>> = BTreeMap::new();
    let mut seen = vec![false; b.size()];

    for x in 0..b.size() {
        let d = b.element_order(x)?;
        // orbit decomposition of B under left multiplication by x
        seen.iter_mut().for_each(|v| *v = false);
        let mut orbit_count = 0u64;
        for b0 in 0..b.size() {
            if seen[b0] {
                continue;
            }
            orbit_count += 1;
            let mut cur = b0;
            let mut len = 0u64;
            while !seen[cur] {
                seen[cur] = true;
                cur = b.mul(x, cur);
                len += 1;
            }
            if len != d {
                return Err(Error::CorruptTable(format!(
                    "orbit of {b0} under {x} has length {len}, expected {d}"
                )));
            }
        }
        debug_assert_eq!(orbit_count, b.size() as u64 / d);

        let dist = per_order.entry(d).or_insert_with(|| {
            // g_m = Σ_{c|m} μ(m/c)·(|A|^{d−1}·s_c)^q, the exact count of base
            // tuples whose orbit products have lcm of orders equal to m
            let q = orbit_count as u32;
            let stride = BigUint::from(size_a).pow(d as u32 - 1);
            let f: BTreeMap<u64, BigInt> = divs_a
                .iter()
                .map(|&c| (c, BigInt::from((&stride * &s[&c]).pow(q))))
                .collect();
            divs_a
                .iter()
                .map(|&m| {
                    let g: BigInt = divisors(m)
                        .expect("divisor of valid size")
                        .iter()
                        .map(|&c| mobius(m / c).expect("valid") * &f[&c])
                        .sum();
                    let g = g.to_biguint().expect("order counts are nonnegative");
                    (m, g)
                })
                .filter(|(_, g)| !g.is_zero())
                .collect()
        });
        for (m, g) in dist.iter() {
            counts
                .entry(d * m)
                .and_modify(|acc| *acc += g)
                .or_insert_with(|| g.clone());
        }
    }
    OrderSpectrum::from_counts(counts)
}
