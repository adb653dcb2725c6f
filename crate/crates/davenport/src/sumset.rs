//! Bitmap sets of group elements and incremental weighted subset sums.
//!
//! The search keeps, for a sequence `g_1, ..., g_k`, the set of all sums
//! `sum a_i g_i` over nonempty subsets with weights from a fixed set. A
//! sequence is dissociated exactly when 0 never enters this set, and the set
//! updates in one pass when an element is appended:
//!
//! ```text
//! S' = S  union  {a * g}  union  (S + a * g)    over all weights a
//! ```
//!
//! Appending `g` keeps the sequence dissociated if and only if no `a * g` is
//! zero and no `a * g` lies in `-S`: a zero subsum either uses `g` alone or
//! pairs `a * g` against a previous subset sum.

use crate::group::ProductGroup;
use crate::weights::WeightSet;

/// A set of elements of a [`ProductGroup`], stored as one bit per element
/// index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSet {
    bits: Vec<u64>,
    order: usize,
    count: usize,
}

impl SumSet {
    pub fn new(order: usize) -> SumSet {
        SumSet {
            bits: vec![0; order.div_ceil(64)],
            order,
            count: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of elements present.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        debug_assert!(index < self.order);
        self.bits[index / 64] >> (index % 64) & 1 == 1
    }

    /// Inserts an index, reporting whether it was new.
    pub fn insert(&mut self, index: usize) -> bool {
        debug_assert!(index < self.order);
        let word = &mut self.bits[index / 64];
        let mask = 1u64 << (index % 64);
        if *word & mask == 0 {
            *word |= mask;
            self.count += 1;
            true
        } else {
            false
        }
    }

    /// Ascending iterator over the element indices present.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Indices of `a * g` over all weights `a`, duplicates removed.
pub fn weighted_images(p: &ProductGroup, w: &WeightSet, g_index: usize) -> Vec<usize> {
    let g = p
        .element_at(g_index)
        .expect("element index within group order");
    let mut out: Vec<usize> = w
        .residues()
        .iter()
        .map(|&a| p.index_of(&p.scale_residue(a, &g)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether appending the element keeps the sequence dissociated, given the
/// subset sums of the sequence so far.
pub fn can_extend(p: &ProductGroup, w: &WeightSet, sums: &SumSet, g_index: usize) -> bool {
    let g = p
        .element_at(g_index)
        .expect("element index within group order");
    for &a in w.residues() {
        let image = p.scale_residue(a, &g);
        let idx = p.index_of(&image);
        if idx == 0 {
            return false;
        }
        if sums.contains(p.index_of(&p.negate(&image))) {
            return false;
        }
    }
    true
}

/// Appends an element: folds its weighted images and all translates of the
/// existing sums into the set. Callers use [`can_extend`] first when the
/// sequence must stay dissociated; the update itself is unconditional.
pub fn extend(p: &ProductGroup, w: &WeightSet, sums: &mut SumSet, g_index: usize) {
    let g = p
        .element_at(g_index)
        .expect("element index within group order");
    let old: Vec<usize> = sums.iter().collect();
    for &a in w.residues() {
        let image = p.scale_residue(a, &g);
        sums.insert(p.index_of(&image));
        for &s in &old {
            let sum = p.add(&p.element_at(s).expect("stored index in range"), &image);
            sums.insert(p.index_of(&sum));
        }
    }
}

/// Whether the sequence (given as element indices) admits a nonempty subset
/// with a weighted zero sum.
pub fn has_weighted_zero_subsum(p: &ProductGroup, w: &WeightSet, sequence: &[usize]) -> bool {
    let mut sums = SumSet::new(p.order());
    for &g in sequence {
        if !can_extend(p, w, &sums, g) {
            return true;
        }
        extend(p, w, &mut sums, g);
    }
    false
}
