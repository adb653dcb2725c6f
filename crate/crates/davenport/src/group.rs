//! Finite abelian groups: canonical invariant factors, element arithmetic,
//! class enumeration, and direct sum decompositions.
//!
//! Two representations coexist. [`AbelianGroup`] stores the canonical
//! invariant factor chain `n_1 | n_2 | ... | n_r` with every `n_i >= 2`, the
//! form in which structure rules (rank, dilation, decompositions) are stated.
//! [`ProductGroup`] is a plain direct product of cyclic groups with the
//! moduli exactly as given, not necessarily a divisor chain; certificates are
//! expressed over such products so that a sequence built for `C6 + C3` keeps
//! its coordinates. An `AbelianGroup` views itself as a `ProductGroup`
//! through [`AbelianGroup::as_product`].

use crate::{Error, Result, factor};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Decompositions are refused above this many prime power components.
pub const RANK_CAP: usize = 24;

/// An element of a [`ProductGroup`], stored as one reduced coordinate per
/// cyclic factor. Serializes as a bare array of coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    /// Wraps raw coordinates. Use [`ProductGroup::element`] to validate them
    /// against a group.
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A direct product of cyclic groups with fixed coordinate order.
///
/// The order must fit in `usize` because elements are addressed by index:
/// coordinates are mixed radix digits with `coords[0]` most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGroup {
    radices: Vec<u64>,
    order: usize,
    exponent: u64,
}

impl ProductGroup {
    /// Builds a product with the given cyclic moduli, kept in the given
    /// order. Moduli of 1 are legal and contribute a forced zero coordinate.
    pub fn new(radices: &[u64]) -> Result<Self> {
        let mut order: usize = 1;
        for &m in radices {
            if m == 0 {
                return Err(Error::InvalidModulus);
            }
            order = order
                .checked_mul(usize::try_from(m).map_err(|_| Error::OrderOverflow)?)
                .ok_or(Error::OrderOverflow)?;
        }
        // The exponent divides the order, so it cannot overflow once the
        // order fits.
        let exponent = radices.iter().fold(1u64, |l, &m| lcm(l, m));
        Ok(ProductGroup {
            radices: radices.to_vec(),
            order,
            exponent,
        })
    }

    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Least common multiple of the moduli; every element's order divides it.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.radices.len()])
    }

    /// Validates coordinates against the moduli.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.radices.len() {
            return Err(Error::CoordinateCount {
                got: coords.len(),
                want: self.radices.len(),
            });
        }
        for (&c, &m) in coords.iter().zip(&self.radices) {
            if c >= m {
                return Err(Error::CoordinateRange {
                    value: c,
                    modulus: m,
                });
            }
        }
        Ok(GroupElement::new(coords.to_vec()))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.radices)
            .map(|((&x, &y), &m)| {
                let s = x + y;
                if s >= m { s - m } else { s }
            })
            .collect();
        GroupElement::new(coords)
    }

    pub fn negate(&self, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.radices)
            .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
            .collect();
        GroupElement::new(coords)
    }

    /// Integer scaling `k * a`, with negative `k` meaning repeated negation.
    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.radices)
            .map(|(&x, &m)| ((x as i128 * k as i128).rem_euclid(m as i128)) as u64)
            .collect();
        GroupElement::new(coords)
    }

    /// Scaling by a nonnegative residue, the form weight sets use.
    pub fn scale_residue(&self, r: u64, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.radices)
            .map(|(&x, &m)| ((x as u128 * r as u128) % m as u128) as u64)
            .collect();
        GroupElement::new(coords)
    }

    /// Mixed radix rank of an element, `coords[0]` most significant.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        debug_assert_eq!(a.coords.len(), self.radices.len());
        let mut idx: usize = 0;
        for (&c, &m) in a.coords.iter().zip(&self.radices) {
            idx = idx * m as usize + c as usize;
        }
        idx
    }

    /// Inverse of [`ProductGroup::index_of`].
    pub fn element_at(&self, index: usize) -> Result<GroupElement> {
        if index >= self.order {
            return Err(Error::IndexRange {
                index,
                order: self.order,
            });
        }
        let mut coords = vec![0u64; self.radices.len()];
        let mut rest = index;
        for (slot, &m) in coords.iter_mut().zip(&self.radices).rev() {
            *slot = (rest % m as usize) as u64;
            rest /= m as usize;
        }
        Ok(GroupElement::new(coords))
    }
}

/// A finite abelian group in canonical invariant factor form.
///
/// The moduli satisfy `n_1 | n_2 | ... | n_r` with every `n_i >= 2`; the
/// trivial group has an empty list. Construction canonicalizes arbitrary
/// input moduli, so `C6 + C10` and `C2 + C30` produce the same value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
}

impl AbelianGroup {
    /// Canonicalizes a list of cyclic moduli into invariant factors.
    ///
    /// Moduli equal to 1 are dropped; a modulus of 0 is an error. The input
    /// order is irrelevant.
    pub fn new(moduli: &[u64]) -> Result<Self> {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &m in moduli {
            if m == 0 {
                return Err(Error::InvalidModulus);
            }
            for (p, e) in factor::factorize(m) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        Ok(AbelianGroup {
            moduli: chain_from_prime_powers(&mut by_prime),
        })
    }

    pub fn trivial() -> Self {
        AbelianGroup { moduli: Vec::new() }
    }

    /// Invariant factors in ascending divisibility order.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.moduli
            .iter()
            .fold(BigUint::from(1u8), |acc, &m| acc * BigUint::from(m))
    }

    /// The order when it fits a machine word, which element indexing needs.
    pub fn small_order(&self) -> Option<usize> {
        self.moduli
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(usize::try_from(m).ok()?))
    }

    /// Largest invariant factor; 1 for the trivial group.
    pub fn exponent(&self) -> u64 {
        self.moduli.last().copied().unwrap_or(1)
    }

    /// Number of invariant factors.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Number of invariant factors divisible by `n`, for `n >= 1`. This is
    /// the rank of the largest direct summand of the form `C_n^k`.
    pub fn rank_of(&self, n: u64) -> usize {
        debug_assert!(n >= 1);
        self.moduli.iter().filter(|&&m| m % n == 0).count()
    }

    /// Number of prime power components over all invariant factors.
    pub fn total_rank(&self) -> usize {
        self.moduli
            .iter()
            .map(|&m| factor::factorize(m).len())
            .sum()
    }

    /// The multiset of prime power components, sorted ascending.
    pub fn prime_powers(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .moduli
            .iter()
            .flat_map(|&m| factor::factorize(m).into_iter().map(|(p, e)| p.pow(e)))
            .collect();
        out.sort_unstable();
        out
    }

    /// The image `d * G`, canonicalized. Its cyclic factors are
    /// `n_i / gcd(n_i, d)`.
    pub fn dilate(&self, d: u64) -> Result<AbelianGroup> {
        if d == 0 {
            return Err(Error::InvalidModulus);
        }
        let image: Vec<u64> = self.moduli.iter().map(|&m| m / gcd(m, d)).collect();
        AbelianGroup::new(&image)
    }

    /// Element arithmetic view. Fails if the order overflows `usize`.
    pub fn as_product(&self) -> Result<ProductGroup> {
        ProductGroup::new(&self.moduli)
    }

    /// Calls `f` on every direct sum decomposition of the group, i.e. every
    /// partition of the prime power multiset into blocks containing at most
    /// one power of each prime. Each decomposition is reported exactly once
    /// as an ascending list of block products; `f` returns `false` to stop
    /// early. The return value says whether the stream ran to completion.
    ///
    /// The invariant factor chain itself and the fully split form are always
    /// among the reported decompositions.
    pub fn for_each_decomposition<F>(&self, mut f: F) -> Result<bool>
    where
        F: FnMut(&[u64]) -> bool,
    {
        let rank = self.total_rank();
        if rank > RANK_CAP {
            return Err(Error::RankCap {
                rank,
                cap: RANK_CAP,
            });
        }
        let mut grouped: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &m in &self.moduli {
            for (p, e) in factor::factorize(m) {
                grouped.entry(p).or_default().push(p.pow(e));
            }
        }
        let mut rem: Vec<(u64, Vec<u64>)> = grouped.into_iter().collect();
        for (_, powers) in rem.iter_mut() {
            powers.sort_unstable();
        }
        let mut blocks: Vec<Vec<u64>> = Vec::new();
        let mut last_block_for: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        Ok(decompose_rec(&mut rem, &mut blocks, &mut last_block_for, &mut f))
    }

    /// All decompositions collected into a vector. Convenient for small
    /// ranks; prefer [`AbelianGroup::for_each_decomposition`] when streaming.
    pub fn decompositions(&self) -> Result<Vec<Vec<u64>>> {
        let mut out = Vec::new();
        self.for_each_decomposition(|parts| {
            out.push(parts.to_vec());
            true
        })?;
        Ok(out)
    }

    /// One representative per isomorphism class of abelian groups of order
    /// at most `max_order`, sorted by order and then with the cyclic class
    /// first within each order (descending lexicographic moduli).
    pub fn enumerate_up_to(max_order: u64) -> Vec<AbelianGroup> {
        let mut out = Vec::new();
        for n in 1..=max_order {
            let mut classes = classes_of_order(n);
            classes.sort_by(|a, b| b.moduli.cmp(&a.moduli));
            out.extend(classes);
        }
        out
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "C1");
        }
        for (i, m) in self.moduli.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "C{m}")?;
        }
        Ok(())
    }
}

/// Parses a group description: either `C3*C3*C9` (case insensitive, `x` also
/// accepted as separator) or a bracketed list `[3,3,9]`. The moduli are
/// canonicalized, so their order does not matter.
pub fn parse_group(text: &str) -> Result<AbelianGroup> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::GroupSyntax("empty group description".into()));
    }
    let inner = if t.starts_with('[') {
        t.strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::GroupSyntax(format!("unbalanced brackets in {t:?}")))?
    } else {
        t
    };
    let mut moduli = Vec::new();
    for raw in inner.split(|c| c == '*' || c == ',' || c == 'x' || c == 'X') {
        let tok = raw.trim().trim_start_matches(['C', 'c']);
        if tok.is_empty() {
            return Err(Error::GroupSyntax(format!("empty factor in {t:?}")));
        }
        let m: u64 = tok
            .parse()
            .map_err(|_| Error::GroupSyntax(format!("bad modulus {raw:?} in {t:?}")))?;
        moduli.push(m);
    }
    AbelianGroup::new(&moduli)
}

/// Assembles invariant factors from exponent lists grouped by prime.
fn chain_from_prime_powers(by_prime: &mut BTreeMap<u64, Vec<u32>>) -> Vec<u64> {
    let rank = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut chain = vec![1u64; rank];
    for (&p, exps) in by_prime.iter_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        // The j-th largest exponent of every prime lands in the j-th largest
        // invariant factor, which makes consecutive factors divide.
        for (j, &e) in exps.iter().enumerate() {
            chain[j] *= p.pow(e);
        }
    }
    chain.reverse();
    chain
}

fn classes_of_order(n: u64) -> Vec<AbelianGroup> {
    let fact = factor::factorize(n);
    let per_prime: Vec<(u64, Vec<Vec<u32>>)> = fact
        .iter()
        .map(|&(p, e)| (p, partitions(e)))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_prime.len()];
    loop {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (slot, (p, parts)) in choice.iter().zip(&per_prime) {
            by_prime.insert(*p, parts[*slot].clone());
        }
        out.push(AbelianGroup {
            moduli: chain_from_prime_powers(&mut by_prime),
        });
        // Odometer step over the partition choices.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < per_prime[i].1.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Partitions of `e` as weakly decreasing positive parts.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        let top = rem.min(max);
        for k in (1..=top).rev() {
            cur.push(k);
            rec(rem - k, k, cur, out);
            cur.pop();
        }
    }
    rec(e, e, &mut cur, &mut out);
    out
}

/// Recursive block builder for decompositions. The first remaining power of
/// the smallest prime anchors the next block; the block may absorb at most
/// one remaining power of each other prime. Equal powers are forced into
/// weakly decreasing block order, which makes every partition of the
/// multiset appear exactly once.
fn decompose_rec<F>(
    rem: &mut Vec<(u64, Vec<u64>)>,
    blocks: &mut Vec<Vec<u64>>,
    last_block_for: &mut BTreeMap<u64, Vec<u64>>,
    f: &mut F,
) -> bool
where
    F: FnMut(&[u64]) -> bool,
{
    let anchor_slot = match rem.iter().position(|(_, v)| !v.is_empty()) {
        Some(i) => i,
        None => {
            let mut parts: Vec<u64> = blocks.iter().map(|b| b.iter().product()).collect();
            parts.sort_unstable();
            return f(&parts);
        }
    };
    let anchor = rem[anchor_slot].1.remove(0);
    let partner_slots: Vec<usize> = (anchor_slot + 1..rem.len())
        .filter(|&i| !rem[i].1.is_empty())
        .collect();
    // Distinct remaining powers per partner prime, frozen at this level.
    // Removals below never touch another slot, so the lists stay accurate.
    let options: Vec<Vec<u64>> = partner_slots
        .iter()
        .map(|&i| distinct_values(&rem[i].1))
        .collect();
    let mut completed = true;
    let mut pick = vec![0usize; partner_slots.len()]; // 0 = skip, k = options[k-1]
    'combos: loop {
        let mut block = vec![anchor];
        let mut removed: Vec<(usize, u64)> = Vec::new();
        for (ci, &slot) in partner_slots.iter().enumerate() {
            if pick[ci] > 0 {
                let v = options[ci][pick[ci] - 1];
                let pos = rem[slot].1.iter().position(|&x| x == v).unwrap();
                rem[slot].1.remove(pos);
                removed.push((slot, v));
                block.push(v);
            }
        }
        block.sort_unstable();
        let ordered = match last_block_for.get(&anchor) {
            Some(prev) => block <= *prev,
            None => true,
        };
        if ordered {
            let prev = last_block_for.insert(anchor, block.clone());
            blocks.push(block);
            let cont = decompose_rec(rem, blocks, last_block_for, f);
            blocks.pop();
            match prev {
                Some(p) => {
                    last_block_for.insert(anchor, p);
                }
                None => {
                    last_block_for.remove(&anchor);
                }
            }
            if !cont {
                completed = false;
            }
        }
        for (slot, v) in removed {
            let pos = rem[slot].1.partition_point(|&x| x < v);
            rem[slot].1.insert(pos, v);
        }
        if !completed {
            break 'combos;
        }
        // Odometer over partner picks.
        let mut i = 0;
        loop {
            if i == pick.len() {
                break 'combos;
            }
            pick[i] += 1;
            if pick[i] <= options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
    rem[anchor_slot].1.insert(0, anchor);
    completed
}

/// Distinct values of an ascending sorted slice.
fn distinct_values(v: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = v.to_vec();
    out.dedup();
    out
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 { 0 } else { a / gcd(a, b) * b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn g(moduli: &[u64]) -> AbelianGroup {
        AbelianGroup::new(moduli).unwrap()
    }

    #[test]
    fn canonicalization_merges_coprime_factors() {
        assert_eq!(g(&[6, 10]).moduli(), &[2, 30]);
        assert_eq!(g(&[15, 5]).moduli(), &[5, 15]);
        assert_eq!(g(&[1, 7]).moduli(), &[7]);
        assert_eq!(g(&[2, 3]).moduli(), &[6]);
        assert_eq!(g(&[3, 759]).moduli(), &[3, 759]);
        assert_eq!(g(&[4, 8]).moduli(), &[4, 8]);
        assert_eq!(g(&[]).moduli(), &[] as &[u64]);
        assert_eq!(g(&[1, 1]).moduli(), &[] as &[u64]);
        assert!(AbelianGroup::new(&[3, 0]).is_err());
    }

    #[test]
    fn canonicalization_ignores_input_order() {
        assert_eq!(g(&[10, 6]).moduli(), g(&[6, 10]).moduli());
        assert_eq!(g(&[9, 3, 4]).moduli(), g(&[4, 3, 9]).moduli());
    }

    #[test]
    fn structure_statistics() {
        let h = g(&[3, 9]);
        assert_eq!(h.order(), BigUint::from(27u8));
        assert_eq!(h.small_order(), Some(27));
        assert_eq!(h.exponent(), 9);
        assert_eq!(h.rank(), 2);
        assert_eq!(h.rank_of(3), 2);
        assert_eq!(h.rank_of(9), 1);
        assert_eq!(h.rank_of(1), 2);
        assert_eq!(h.total_rank(), 2);
        assert_eq!(h.prime_powers(), vec![3, 9]);

        let k = g(&[897, 897]);
        assert_eq!(k.prime_powers(), vec![3, 3, 13, 13, 23, 23]);
        assert_eq!(k.total_rank(), 6);
        assert_eq!(k.rank(), 2);

        let t = AbelianGroup::trivial();
        assert!(t.is_trivial());
        assert_eq!(t.order(), BigUint::from(1u8));
        assert_eq!(t.exponent(), 1);
        assert_eq!(t.rank(), 0);
    }

    #[test]
    fn dilation_images() {
        assert_eq!(g(&[4, 8]).dilate(2).unwrap().moduli(), &[2, 4]);
        assert_eq!(g(&[9]).dilate(3).unwrap().moduli(), &[3]);
        assert_eq!(g(&[5, 15]).dilate(3).unwrap().moduli(), &[5, 5]);
        assert_eq!(g(&[5, 15]).dilate(1).unwrap().moduli(), &[5, 15]);
        assert!(g(&[5, 15]).dilate(75).unwrap().is_trivial());
        assert_eq!(g(&[6, 12]).dilate(4).unwrap().moduli(), &[3, 3]);
    }

    #[test]
    fn product_indexing_roundtrip() {
        let p = ProductGroup::new(&[6, 3]).unwrap();
        assert_eq!(p.order(), 18);
        assert_eq!(p.exponent(), 6);
        let e = p.element(&[1, 2]).unwrap();
        assert_eq!(p.index_of(&e), 5);
        for i in 0..p.order() {
            let x = p.element_at(i).unwrap();
            assert_eq!(p.index_of(&x), i);
        }
        assert!(p.element(&[6, 0]).is_err());
        assert!(p.element(&[0]).is_err());
        assert!(p.element_at(18).is_err());
    }

    #[test]
    fn product_arithmetic() {
        let p = ProductGroup::new(&[6, 3]).unwrap();
        let a = p.element(&[5, 1]).unwrap();
        let b = p.element(&[1, 1]).unwrap();
        assert_eq!(p.add(&a, &b).coords(), &[0, 2]);
        assert_eq!(p.negate(&a).coords(), &[1, 2]);
        assert_eq!(p.scale(-1, &a), p.negate(&a));
        assert_eq!(p.scale(2, &a).coords(), &[4, 2]);
        assert_eq!(p.scale_residue(2, &a).coords(), &[4, 2]);
        assert_eq!(p.scale(0, &a), p.zero());
        assert_eq!(p.add(&a, &p.negate(&a)), p.zero());
        assert_eq!(format!("{a}"), "(5,1)");
    }

    #[test]
    fn trivial_product_has_one_element() {
        let p = ProductGroup::new(&[]).unwrap();
        assert_eq!(p.order(), 1);
        assert_eq!(p.exponent(), 1);
        assert_eq!(p.index_of(&p.zero()), 0);
        assert_eq!(p.element_at(0).unwrap(), p.zero());
    }

    #[test]
    fn moduli_of_one_are_forced_zero_coordinates() {
        let p = ProductGroup::new(&[1, 4]).unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(p.element_at(3).unwrap().coords(), &[0, 3]);
    }

    #[test]
    fn enumeration_order_and_counts() {
        let all = AbelianGroup::enumerate_up_to(8);
        let of_8: Vec<_> = all
            .iter()
            .filter(|h| h.order() == BigUint::from(8u8))
            .collect();
        assert_eq!(of_8.len(), 3);
        assert_eq!(of_8[0].moduli(), &[8]);
        assert_eq!(of_8[1].moduli(), &[2, 4]);
        assert_eq!(of_8[2].moduli(), &[2, 2, 2]);

        let of_16 = AbelianGroup::enumerate_up_to(16)
            .into_iter()
            .filter(|h| h.order() == BigUint::from(16u8))
            .count();
        assert_eq!(of_16, 5);
        assert_eq!(AbelianGroup::enumerate_up_to(1).len(), 1);
    }

    /// Counts isomorphism classes of order at most `max` by enumerating
    /// divisor chains directly, with no factorization involved.
    fn chain_count_oracle(max: u64) -> usize {
        fn rec(prev: u64, cap: u64) -> usize {
            let mut total = 0;
            let mut n = prev;
            while n <= cap {
                total += 1 + rec(n, cap / n);
                n += prev;
            }
            total
        }
        let mut total = 1; // the trivial group
        for first in 2..=max {
            total += 1 + rec(first, max / first);
        }
        total
    }

    #[test]
    fn enumeration_matches_divisor_chain_oracle() {
        assert_eq!(AbelianGroup::enumerate_up_to(100).len(), 185);
        assert_eq!(chain_count_oracle(100), 185);
        for max in [1, 2, 10, 36, 60] {
            assert_eq!(
                AbelianGroup::enumerate_up_to(max).len(),
                chain_count_oracle(max),
                "class count mismatch at {max}"
            );
        }
    }

    #[test]
    fn enumeration_entries_are_canonical_and_distinct() {
        let all = AbelianGroup::enumerate_up_to(60);
        let set: BTreeSet<_> = all.iter().map(|h| h.moduli().to_vec()).collect();
        assert_eq!(set.len(), all.len());
        for h in &all {
            assert_eq!(AbelianGroup::new(h.moduli()).unwrap(), *h);
        }
    }

    /// Every partition of the labeled prime power list, filtered to blocks
    /// with at most one power per prime, deduplicated at the value level.
    fn decomposition_oracle(h: &AbelianGroup) -> BTreeSet<Vec<u64>> {
        let pieces: Vec<(u64, u64)> = h
            .moduli()
            .iter()
            .flat_map(|&m| factor::factorize(m).into_iter().map(|(p, e)| (p, p.pow(e))))
            .collect();
        let mut out = BTreeSet::new();
        let mut blocks: Vec<Vec<(u64, u64)>> = Vec::new();
        fn rec(
            i: usize,
            pieces: &[(u64, u64)],
            blocks: &mut Vec<Vec<(u64, u64)>>,
            out: &mut BTreeSet<Vec<u64>>,
        ) {
            if i == pieces.len() {
                let mut parts: Vec<u64> = blocks
                    .iter()
                    .map(|b| b.iter().map(|&(_, q)| q).product())
                    .collect();
                parts.sort_unstable();
                out.insert(parts);
                return;
            }
            let (p, q) = pieces[i];
            for bi in 0..blocks.len() {
                if blocks[bi].iter().all(|&(bp, _)| bp != p) {
                    blocks[bi].push((p, q));
                    rec(i + 1, pieces, blocks, out);
                    blocks[bi].pop();
                }
            }
            blocks.push(vec![(p, q)]);
            rec(i + 1, pieces, blocks, out);
            blocks.pop();
        }
        rec(0, &pieces, &mut blocks, &mut out);
        out
    }

    #[test]
    fn decompositions_match_oracle_and_have_no_duplicates() {
        for moduli in [
            vec![3, 759],
            vec![2, 6, 30],
            vec![4, 8],
            vec![3, 9],
            vec![6, 12],
            vec![897, 897],
            vec![30],
            vec![2, 2, 2],
        ] {
            let h = g(&moduli);
            let got = h.decompositions().unwrap();
            let set: BTreeSet<_> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len(), "duplicate decomposition for {h}");
            assert_eq!(set, decomposition_oracle(&h), "wrong stream for {h}");
        }
    }

    #[test]
    fn decompositions_of_known_groups() {
        let mut got = g(&[3, 759]).decompositions().unwrap();
        got.sort();
        let mut want = vec![
            vec![3, 759],
            vec![33, 69],
            vec![3, 23, 33],
            vec![3, 11, 69],
            vec![3, 3, 253],
            vec![3, 3, 11, 23],
        ];
        want.sort();
        assert_eq!(got, want);

        assert_eq!(g(&[3, 9]).decompositions().unwrap(), vec![vec![3, 9]]);
        let mut c6 = g(&[6]).decompositions().unwrap();
        c6.sort();
        assert_eq!(c6, vec![vec![2, 3], vec![6]]);
        assert_eq!(
            AbelianGroup::trivial().decompositions().unwrap(),
            vec![Vec::<u64>::new()]
        );
    }

    #[test]
    fn decomposition_stream_stops_early() {
        let h = g(&[2, 6, 30]);
        let mut seen = 0;
        let completed = h
            .for_each_decomposition(|_| {
                seen += 1;
                seen < 3
            })
            .unwrap();
        assert!(!completed);
        assert_eq!(seen, 3);
    }

    #[test]
    fn decomposition_rank_cap() {
        let h = g(&vec![2; RANK_CAP + 1]);
        assert!(matches!(
            h.for_each_decomposition(|_| true),
            Err(Error::RankCap { .. })
        ));
    }

    #[test]
    fn group_parsing() {
        assert_eq!(parse_group("C3*C3*C9").unwrap().moduli(), &[3, 3, 9]);
        assert_eq!(parse_group("[3,3,9]").unwrap().moduli(), &[3, 3, 9]);
        assert_eq!(parse_group("c6 x c10").unwrap().moduli(), &[2, 30]);
        assert_eq!(parse_group("12").unwrap().moduli(), &[12]);
        assert_eq!(parse_group("C1").unwrap().moduli(), &[] as &[u64]);
        assert!(parse_group("").is_err());
        assert!(parse_group("[3,3").is_err());
        assert!(parse_group("C3**C9").is_err());
        assert!(parse_group("Cfoo").is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(format!("{}", g(&[3, 9])), "C3*C9");
        assert_eq!(format!("{}", AbelianGroup::trivial()), "C1");
    }
}
