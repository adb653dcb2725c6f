//! Reference computation for small groups by direct subset enumeration.
//!
//! Deliberately naive and structurally independent of [`crate::search`]:
//! no shared sum-set machinery, no pruning beyond monotonicity of the
//! dissociation property. Used as a correctness oracle in tests.

use crate::group::{GroupElement, ProductGroup};
use crate::weights::WeightSet;
use crate::{Error, Result};

/// Largest group order accepted; the subset enumeration is exponential.
pub const BRUTE_ORDER_CAP: usize = 16;

/// Length of the longest dissociated sequence, computed by trying every
/// non-decreasing sequence of element indices and rejecting a candidate as
/// soon as some weighted subsequence sums to zero.
pub fn brute_max_dissociated(p: &ProductGroup, w: &WeightSet) -> Result<usize> {
    if w.exponent() != p.exponent() {
        return Err(Error::ExponentMismatch {
            weights: w.exponent(),
            group: p.exponent(),
        });
    }
    if p.order() > BRUTE_ORDER_CAP {
        return Err(Error::BruteCap {
            order: p.order(),
            cap: BRUTE_ORDER_CAP,
        });
    }
    let mut best = 0;
    let mut chosen = Vec::new();
    dfs(p, w, &mut chosen, 1, &mut best);
    Ok(best)
}

/// Davenport constant of the pair: one more than the longest dissociated
/// sequence.
pub fn brute_davenport(p: &ProductGroup, w: &WeightSet) -> Result<usize> {
    Ok(brute_max_dissociated(p, w)? + 1)
}

fn dfs(
    p: &ProductGroup,
    w: &WeightSet,
    chosen: &mut Vec<GroupElement>,
    start: usize,
    best: &mut usize,
) {
    *best = (*best).max(chosen.len());
    for idx in start..p.order() {
        let g = p.element_at(idx).expect("index below order");
        if stays_dissociated(p, w, chosen, &g) {
            chosen.push(g);
            dfs(p, w, chosen, idx, best);
            chosen.pop();
        }
    }
}

/// A sequence extended by `newest` stays dissociated iff no weighted sum over
/// a subsequence containing `newest` vanishes; subsequences avoiding it were
/// ruled out when the prefix was built.
fn stays_dissociated(
    p: &ProductGroup,
    w: &WeightSet,
    prefix: &[GroupElement],
    newest: &GroupElement,
) -> bool {
    for &a in w.residues() {
        let acc = p.scale_residue(a, newest);
        if vanishes(p, w, prefix, acc) {
            return false;
        }
    }
    true
}

/// True iff `acc` plus some weighted sum over a subsequence of `rest`
/// (possibly empty) is zero. Each element is either skipped or assigned one
/// weight, so every subset is reached exactly once.
fn vanishes(p: &ProductGroup, w: &WeightSet, rest: &[GroupElement], acc: GroupElement) -> bool {
    let Some((g, tail)) = rest.split_first() else {
        return acc == p.zero();
    };
    if vanishes(p, w, tail, acc.clone()) {
        return true;
    }
    for &a in w.residues() {
        let next = p.add(&acc, &p.scale_residue(a, g));
        if vanishes(p, w, tail, next) {
            return true;
        }
    }
    false
}
