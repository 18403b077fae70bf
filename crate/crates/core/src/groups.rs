//! Finite groups as dense Cayley tables, a catalog of standard constructions,
//! and the wreath-product multiplication on (base tuple, top) pairs.
//!
//! Conventions, fixed so that enumeration results are bit-stable:
//! - index 0 is always the identity;
//! - wreath elements are enumerated with the top index varying slowest and the
//!   base tuple in little-endian mixed-radix order;
//! - the top group acts on base tuples by left translation,
//!   (x·β)_b = β_{x⁻¹b}.

use crate::error::{Error, Result};
use crate::numtheory::factorize;

/// Largest group materialized as a dense table. Tables are quadratic in the
/// group order; enumeration-only code paths (the oracle) go far beyond this.
pub const DENSE_CAP: usize = 1 << 14;

/// A finite group given by its full multiplication table.
///
/// `table[i * size + j]` is the index of the product i·j. Construction
/// validates the identity-at-0 and Latin-square invariants, and checks
/// associativity exhaustively up to order 512 (randomized sampling above).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    size: usize,
    table: Vec<u16>,
    name: String,
}

/// One element of A≀B: a tuple over the top group's index set plus a top
/// element, `base.len() == |B|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathElement {
    pub base: Vec<u16>,
    pub top: u16,
}

impl FiniteGroup {
    /// Build and validate a group from a raw table.
    pub fn from_table(name: impl Into<String>, size: usize, table: Vec<u16>) -> Result<Self> {
        let name = name.into();
        if size < 2 {
            return Err(Error::InvalidArgument(format!(
                "group {name} must have at least 2 elements"
            )));
        }
        if size > DENSE_CAP {
            return Err(Error::SizeCap { size: size as u128, cap: DENSE_CAP as u128 });
        }
        if table.len() != size * size {
            return Err(Error::CorruptTable(format!(
                "table of {name} has {} entries, expected {}",
                table.len(),
                size * size
            )));
        }
        let g = FiniteGroup { size, table, name };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.size;
        for j in 0..n {
            if self.mul(0, j) != j {
                return Err(Error::CorruptTable(format!(
                    "{}: 0·{j} != {j}, identity is not at index 0",
                    self.name
                )));
            }
            if self.mul(j, 0) != j {
                return Err(Error::CorruptTable(format!(
                    "{}: {j}·0 != {j}, identity is not at index 0",
                    self.name
                )));
            }
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = self.mul(i, j);
                if v >= n || seen[v] {
                    return Err(Error::CorruptTable(format!(
                        "{}: row {i} is not a permutation",
                        self.name
                    )));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..n {
                let v = self.mul(i, j);
                if seen[v] {
                    return Err(Error::CorruptTable(format!(
                        "{}: column {j} is not a permutation",
                        self.name
                    )));
                }
                seen[v] = true;
            }
        }
        self.check_associativity()
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.size;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::CorruptTable(format!(
                    "{}: associativity fails on ({a},{b},{c})",
                    self.name
                )));
            }
            Ok(())
        };
        if n <= 512 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64 ^ (n as u64);
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            for _ in 0..100_000 {
                let a = (next() % n as u64) as usize;
                let b = (next() % n as u64) as usize;
                let c = (next() % n as u64) as usize;
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.size + j] as usize
    }

    /// Inverse by row scan.
    pub fn inverse(&self, i: usize) -> usize {
        (0..self.size)
            .find(|&j| self.mul(i, j) == 0)
            .expect("validated Latin square has inverses")
    }

    /// Least k ≥ 1 with g^k = identity. Always divides the group order.
    pub fn element_order(&self, g: usize) -> Result<u64> {
        if g >= self.size {
            return Err(Error::InvalidArgument(format!(
                "element index {g} out of range for {}",
                self.name
            )));
        }
        let mut cur = g;
        let mut k = 1u64;
        while cur != 0 {
            cur = self.mul(cur, g);
            k += 1;
            if k > self.size as u64 {
                return Err(Error::CorruptTable(format!(
                    "{}: element {g} has no order ≤ |G|",
                    self.name
                )));
            }
        }
        debug_assert_eq!(self.size as u64 % k, 0);
        Ok(k)
    }
}

/// Cyclic group of order n, generator 1.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("cyclic group needs n ≥ 2, got {n}")));
    }
    if n > DENSE_CAP {
        return Err(Error::SizeCap { size: n as u128, cap: DENSE_CAP as u128 });
    }
    let mut table = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = ((i + j) % n) as u16;
        }
    }
    FiniteGroup::from_table(format!("C{n}"), n, table)
}

/// Dihedral group of order 2n, n ≥ 3. Elements are the maps x ↦ sx + k on
/// Z/n: indices 0..n are rotations, n..2n reflections.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("dihedral group needs n ≥ 3, got {n}")));
    }
    let size = 2 * n;
    if size > DENSE_CAP {
        return Err(Error::SizeCap { size: size as u128, cap: DENSE_CAP as u128 });
    }
    let decode = |i: usize| -> (i64, i64) {
        if i < n {
            (1, i as i64)
        } else {
            (-1, (i - n) as i64)
        }
    };
    let mut table = vec![0u16; size * size];
    for i in 0..size {
        let (s1, k1) = decode(i);
        for j in 0..size {
            let (s2, k2) = decode(j);
            let s = s1 * s2;
            let k = (s1 * k2 + k1).rem_euclid(n as i64) as usize;
            table[i * size + j] = (if s == 1 { k } else { n + k }) as u16;
        }
    }
    FiniteGroup::from_table(format!("D{n}"), size, table)
}

/// The quaternion group of order 8. Elements ±1, ±i, ±j, ±k with
/// index = axis + 4·(sign < 0), axes ordered 1, i, j, k.
pub fn quaternion8() -> FiniteGroup {
    // basis products: (sign, axis)
    let axis_mul = |a: usize, b: usize| -> (i32, usize) {
        match (a, b) {
            (0, x) => (1, x),
            (x, 0) => (1, x),
            (x, y) if x == y => (-1, 0),
            (1, 2) => (1, 3),
            (2, 3) => (1, 1),
            (3, 1) => (1, 2),
            (2, 1) => (-1, 3),
            (3, 2) => (-1, 1),
            (1, 3) => (-1, 2),
            _ => unreachable!(),
        }
    };
    let mut table = vec![0u16; 64];
    for i in 0..8 {
        let (sa, aa) = (if i < 4 { 1 } else { -1 }, i % 4);
        for j in 0..8 {
            let (sb, ab) = (if j < 4 { 1 } else { -1 }, j % 4);
            let (s, ax) = axis_mul(aa, ab);
            let sign = s * sa * sb;
            table[i * 8 + j] = (ax + if sign == 1 { 0 } else { 4 }) as u16;
        }
    }
    FiniteGroup::from_table("Q8", 8, table).expect("hardcoded Q8 table is valid")
}

/// Symmetric group on n symbols, 2 ≤ n ≤ 6, permutations in lexicographic
/// order (so the identity lands at index 0). Product σ·τ applies τ first.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if !(2..=6).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "symmetric group supported for 2 ≤ n ≤ 6, got {n}"
        )));
    }
    let mut perms: Vec<Vec<u8>> = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        perms.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    let size = perms.len();
    let index: std::collections::HashMap<Vec<u8>, u16> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u16))
        .collect();
    let mut table = vec![0u16; size * size];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let composed: Vec<u8> = (0..n).map(|x| p[q[x] as usize]).collect();
            table[i * size + j] = index[&composed];
        }
    }
    FiniteGroup::from_table(format!("S{n}"), size, table)
}

/// Direct product with componentwise multiplication; index = g·|H| + h, so
/// (0,0) is at index 0.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let size = g
        .size()
        .checked_mul(h.size())
        .filter(|&s| s <= DENSE_CAP)
        .ok_or(Error::SizeCap {
            size: g.size() as u128 * h.size() as u128,
            cap: DENSE_CAP as u128,
        })?;
    let hn = h.size();
    let mut table = vec![0u16; size * size];
    for i in 0..size {
        let (gi, hi) = (i / hn, i % hn);
        for j in 0..size {
            let (gj, hj) = (j / hn, j % hn);
            table[i * size + j] = (g.mul(gi, gj) * hn + h.mul(hi, hj)) as u16;
        }
    }
    FiniteGroup::from_table(format!("{} x {}", g.name(), h.name()), size, table)
}

/// (Z/pZ)^k for prime p.
pub fn elementary_abelian(p: u64, k: u32) -> Result<FiniteGroup> {
    abelian(p, &vec![1; k as usize])
}

/// Abelian p-group ⊕ Z/p^{e_i}Z from its cyclic-factor exponents.
pub fn abelian(p: u64, exponents: &[u32]) -> Result<FiniteGroup> {
    require_prime(p)?;
    if exponents.is_empty() {
        return Err(Error::InvalidArgument("empty exponent list".into()));
    }
    if exponents.contains(&0) {
        return Err(Error::InvalidArgument("exponents must be ≥ 1".into()));
    }
    let mut acc: Option<FiniteGroup> = None;
    for &e in exponents {
        let order = p
            .checked_pow(e)
            .filter(|&o| o <= DENSE_CAP as u64)
            .ok_or(Error::SizeCap { size: u128::MAX, cap: DENSE_CAP as u128 })?;
        let factor = cyclic(order as usize)?;
        acc = Some(match acc {
            None => factor,
            Some(g) => direct_product(&g, &factor)?,
        });
    }
    let mut g = acc.expect("nonempty exponent list");
    let exps: Vec<String> = exponents.iter().map(|e| e.to_string()).collect();
    g.name = format!("A({p}; {})", exps.join(", "));
    Ok(g)
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    let f = factorize(p)?;
    if f.factors.len() != 1 || f.factors[0].1 != 1 {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

/// Table-free multiplication view of A≀B on (base tuple, top) pairs,
/// following (α,x)(β,y) = (α·(x·β), xy) with (x·β)_b = β_{x⁻¹b}.
pub struct Wreath<'a> {
    pub a: &'a FiniteGroup,
    pub b: &'a FiniteGroup,
    b_inv: Vec<u16>,
}

impl<'a> Wreath<'a> {
    pub fn new(a: &'a FiniteGroup, b: &'a FiniteGroup) -> Self {
        let b_inv = (0..b.size()).map(|x| b.inverse(x) as u16).collect();
        Wreath { a, b, b_inv }
    }

    /// |A|^|B| · |B|.
    pub fn size(&self) -> u128 {
        (self.a.size() as u128).pow(self.b.size() as u32) * self.b.size() as u128
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement { base: vec![0; self.b.size()], top: 0 }
    }

    /// out = lhs · rhs; returns the top of the product. `out_base` must not
    /// alias `lhs_base`.
    pub fn mul_into(
        &self,
        lhs_base: &[u16],
        lhs_top: u16,
        rhs_base: &[u16],
        rhs_top: u16,
        out_base: &mut [u16],
    ) -> u16 {
        let x_inv = self.b_inv[lhs_top as usize] as usize;
        for i in 0..self.b.size() {
            let shifted = rhs_base[self.b.mul(x_inv, i)] as usize;
            out_base[i] = self.a.mul(lhs_base[i] as usize, shifted) as u16;
        }
        self.b.mul(lhs_top as usize, rhs_top as usize) as u16
    }

    pub fn mul(&self, lhs: &WreathElement, rhs: &WreathElement) -> WreathElement {
        let mut base = vec![0u16; self.b.size()];
        let top = self.mul_into(&lhs.base, lhs.top, &rhs.base, rhs.top, &mut base);
        WreathElement { base, top }
    }

    /// Element at `index` in the fixed enumeration order: top varies slowest,
    /// base little-endian mixed-radix.
    pub fn element_at(&self, index: u128) -> WreathElement {
        let an = self.a.size() as u128;
        let base_count = an.pow(self.b.size() as u32);
        let top = (index / base_count) as u16;
        let mut rest = index % base_count;
        let mut base = vec![0u16; self.b.size()];
        for slot in base.iter_mut() {
            *slot = (rest % an) as u16;
            rest /= an;
        }
        WreathElement { base, top }
    }

    pub fn index_of(&self, e: &WreathElement) -> u128 {
        let an = self.a.size() as u128;
        let mut idx = 0u128;
        for &digit in e.base.iter().rev() {
            idx = idx * an + digit as u128;
        }
        idx + an.pow(self.b.size() as u32) * e.top as u128
    }

    /// Order of (base, top) by iterated multiplication.
    pub fn element_order(&self, e: &WreathElement) -> u64 {
        let mut cur = e.clone();
        let mut scratch = vec![0u16; self.b.size()];
        let mut k = 1u64;
        while cur.top != 0 || cur.base.iter().any(|&v| v != 0) {
            let top = self.mul_into(&cur.base, cur.top, &e.base, e.top, &mut scratch);
            std::mem::swap(&mut cur.base, &mut scratch);
            cur.top = top;
            k += 1;
            debug_assert!(k <= self.a.size() as u64 * self.b.size() as u64);
        }
        k
    }
}

/// Materialize A≀B as an explicit Cayley table under the dense-size cap.
/// Errors carry the would-be size so callers can fall back to formulas.
pub fn wreath_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let w = Wreath::new(a, b);
    let size = w.size();
    if size > DENSE_CAP as u128 {
        return Err(Error::SizeCap { size, cap: DENSE_CAP as u128 });
    }
    let n = size as usize;
    let elements: Vec<WreathElement> = (0..n).map(|i| w.element_at(i as u128)).collect();
    let mut table = vec![0u16; n * n];
    let mut base = vec![0u16; b.size()];
    for i in 0..n {
        for j in 0..n {
            let top = w.mul_into(
                &elements[i].base,
                elements[i].top,
                &elements[j].base,
                elements[j].top,
                &mut base,
            );
            let product = WreathElement { base: base.clone(), top };
            table[i * n + j] = w.index_of(&product) as u16;
        }
    }
    FiniteGroup::from_table(format!("W({}, {})", a.name(), b.name()), n, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(g: &FiniteGroup) -> std::collections::BTreeMap<u64, u64> {
        let mut m = std::collections::BTreeMap::new();
        for i in 0..g.size() {
            *m.entry(g.element_order(i).unwrap()).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn cyclic_basics() {
        let c2 = cyclic(2).unwrap();
        assert_eq!(c2.element_order(1).unwrap(), 2);
        let c4 = cyclic(4).unwrap();
        let got: Vec<u64> = (0..4).map(|i| c4.element_order(i).unwrap()).collect();
        assert_eq!(got, vec![1, 4, 2, 4]);
        assert_eq!(cyclic(8).unwrap().element_order(1).unwrap(), 8);
        assert!(cyclic(1).is_err());
        assert!(cyclic(0).is_err());
    }

    #[test]
    fn dihedral_spectrum() {
        let d4 = dihedral(4).unwrap();
        assert_eq!(d4.size(), 8);
        let m = orders(&d4);
        assert_eq!(m.get(&1), Some(&1));
        assert_eq!(m.get(&2), Some(&5));
        assert_eq!(m.get(&4), Some(&2));
        assert!(dihedral(2).is_err());
    }

    #[test]
    fn quaternion_spectrum() {
        let q8 = quaternion8();
        let m = orders(&q8);
        assert_eq!(m.get(&1), Some(&1));
        assert_eq!(m.get(&2), Some(&1));
        assert_eq!(m.get(&4), Some(&6));
    }

    #[test]
    fn symmetric_spectrum() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.size(), 6);
        let m = orders(&s3);
        assert_eq!(m.get(&1), Some(&1));
        assert_eq!(m.get(&2), Some(&3));
        assert_eq!(m.get(&3), Some(&2));
        assert!(symmetric(7).is_err());
        assert_eq!(symmetric(4).unwrap().size(), 24);
    }

    #[test]
    fn klein_four_variants_agree() {
        let k1 = elementary_abelian(2, 2).unwrap();
        let c2 = cyclic(2).unwrap();
        let k2 = direct_product(&c2, &c2).unwrap();
        assert_eq!(orders(&k1), orders(&k2));
        assert_eq!(*orders(&k1).get(&2).unwrap(), 3);
    }

    #[test]
    fn c2_x_c3_is_cyclic6() {
        let p = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(orders(&p), orders(&cyclic(6).unwrap()));
    }

    #[test]
    fn c4_x_c2_spectrum() {
        let p = direct_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        let m = orders(&p);
        assert_eq!(m.get(&1), Some(&1));
        assert_eq!(m.get(&2), Some(&3));
        assert_eq!(m.get(&4), Some(&4));
    }

    #[test]
    fn abelian_rejects_bad_args() {
        assert!(abelian(4, &[1]).is_err());
        assert!(abelian(2, &[]).is_err());
        assert!(abelian(2, &[0]).is_err());
    }

    #[test]
    fn wreath_c2_c2_is_d4() {
        let c2 = cyclic(2).unwrap();
        let w = wreath_product(&c2, &c2).unwrap();
        assert_eq!(w.size(), 8);
        assert_eq!(orders(&w), orders(&dihedral(4).unwrap()));
    }

    #[test]
    fn wreath_top_nontrivial_unequal_base_has_order_four() {
        // in C2 wr C2, every element with nontrivial top and unequal base
        // entries has order 4
        let c2 = cyclic(2).unwrap();
        let w = Wreath::new(&c2, &c2);
        for base in [[0u16, 1], [1, 0]] {
            let e = WreathElement { base: base.to_vec(), top: 1 };
            assert_eq!(w.element_order(&e), 4);
        }
        for base in [[0u16, 0], [1, 1]] {
            let e = WreathElement { base: base.to_vec(), top: 1 };
            assert_eq!(w.element_order(&e), 2);
        }
    }

    #[test]
    fn wreath_c2_c3_spectrum() {
        let w = wreath_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(w.size(), 24);
        let m = orders(&w);
        assert_eq!(m.get(&1), Some(&1));
        assert_eq!(m.get(&2), Some(&7));
        assert_eq!(m.get(&3), Some(&8));
        assert_eq!(m.get(&6), Some(&8));
    }

    #[test]
    fn wreath_c4_c2_max_order() {
        let w = wreath_product(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(w.size(), 32);
        let m = orders(&w);
        assert_eq!(m.keys().max(), Some(&8)); // p^{d+e} with d=2, e=1
    }

    #[test]
    fn wreath_size_cap_carries_size() {
        let c8 = cyclic(8).unwrap();
        match wreath_product(&c8, &c8) {
            Err(Error::SizeCap { size, .. }) => {
                assert_eq!(size, 8u128.pow(8) * 8);
            }
            other => panic!("expected size cap, got {other:?}"),
        }
    }

    #[test]
    fn wreath_element_roundtrip() {
        let c4 = cyclic(4).unwrap();
        let c2 = cyclic(2).unwrap();
        let w = Wreath::new(&c4, &c2);
        for idx in 0..w.size() {
            let e = w.element_at(idx);
            assert_eq!(w.index_of(&e), idx);
        }
    }

    #[test]
    fn wreath_view_matches_table() {
        let a = cyclic(3).unwrap();
        let b = cyclic(2).unwrap();
        let w = Wreath::new(&a, &b);
        let t = wreath_product(&a, &b).unwrap();
        let n = t.size();
        for i in 0..n {
            for j in 0..n {
                let prod = w.mul(&w.element_at(i as u128), &w.element_at(j as u128));
                assert_eq!(w.index_of(&prod) as usize, t.mul(i, j));
            }
            let ei = w.element_at(i as u128);
            assert_eq!(w.element_order(&ei), t.element_order(i).unwrap());
        }
    }

    #[test]
    fn identity_order_is_one() {
        for g in [cyclic(5).unwrap(), dihedral(3).unwrap(), quaternion8()] {
            assert_eq!(g.element_order(0).unwrap(), 1);
        }
    }

    #[test]
    fn from_table_rejects_non_group() {
        // constant row breaks the Latin property
        let table = vec![0u16, 1, 0, 0];
        assert!(FiniteGroup::from_table("bad", 2, table).is_err());
        // identity not at 0
        let table = vec![1u16, 0, 0, 1];
        assert!(FiniteGroup::from_table("bad", 2, table).is_err());
    }

    #[test]
    fn inverse_scan() {
        let d4 = dihedral(4).unwrap();
        for i in 0..d4.size() {
            assert_eq!(d4.mul(i, d4.inverse(i)), 0);
            assert_eq!(d4.mul(d4.inverse(i), i), 0);
        }
    }
}
