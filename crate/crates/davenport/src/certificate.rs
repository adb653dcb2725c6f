//! Machine checkable certificates for dissociated sequences.
//!
//! A certificate names a direct product of cyclic groups, a weight set, and
//! a sequence of elements, and claims that no nonempty subsequence admits a
//! weighted zero sum. Verification replays the incremental subset sum
//! construction from scratch and either confirms the claim or produces an
//! explicit violation: a subset of indices and a weight for each, whose
//! weighted sum is zero. The verifier shares no code with the machinery
//! that builds certificates, beyond elementary group arithmetic.
//!
//! The group is taken exactly as written. `[6, 3]` means `C6 + C3` with
//! those coordinates, even though the isomorphic canonical form would be
//! `C3 + C3 + C2`; constructions produce sequences whose coordinates only
//! make sense against their own product form.

use crate::group::ProductGroup;
use crate::sumset::{self, SumSet};
use crate::weights::{WeightSet, WeightSpec};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest group order the verifier accepts, bounding its bitmap memory.
pub const VERIFY_ORDER_CAP: usize = 1 << 24;

/// What a certificate asserts about its sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    /// No nonempty subsequence has a weighted zero sum.
    #[default]
    Dissociated,
}

/// A serializable witness for a lower bound: a concrete dissociated
/// sequence. If the sequence has length `k`, the Davenport constant of the
/// pair is at least `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Cyclic moduli of the ambient product, in coordinate order.
    pub group: Vec<u64>,
    pub weights: WeightSpec,
    /// Sequence elements as coordinate vectors against `group`.
    pub elements: Vec<Vec<u64>>,
    #[serde(default)]
    pub claim: Claim,
    /// Free text describing where the sequence came from. Ignored by the
    /// verifier.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// Outcome of checking a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    /// The sequence is dissociated; `length` elements were replayed.
    Valid { length: usize },
    /// The claim is false, with an explicit zero sum as proof.
    Invalid { violation: Violation },
}

/// A nonempty weighted zero sum inside a sequence that claimed to have none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Positions into the certificate's element list, ascending.
    pub indices: Vec<usize>,
    /// One weight per position, as signed representatives; the weighted sum
    /// of the referenced elements is zero.
    pub weights: Vec<i64>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zero sum over positions {:?} with weights {:?}", self.indices, self.weights)
    }
}

impl Certificate {
    pub fn new(
        group: &[u64],
        weights: WeightSpec,
        elements: Vec<Vec<u64>>,
        provenance: Option<String>,
    ) -> Certificate {
        Certificate {
            group: group.to_vec(),
            weights,
            elements,
            claim: Claim::Dissociated,
            provenance,
        }
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Length of the claimed dissociated sequence.
    pub fn length(&self) -> usize {
        self.elements.len()
    }

    /// Replays the sequence and checks the claim.
    pub fn verify(&self) -> Result<Verification> {
        let p = ProductGroup::new(&self.group)?;
        if p.order() > VERIFY_ORDER_CAP {
            return Err(Error::OrderCap {
                order: p.order(),
                cap: VERIFY_ORDER_CAP,
            });
        }
        let w = WeightSet::from_spec(&self.weights, p.exponent())?;
        let mut indices = Vec::with_capacity(self.elements.len());
        for coords in &self.elements {
            indices.push(p.index_of(&p.element(coords)?));
        }
        let Claim::Dissociated = self.claim;

        let mut sums = SumSet::new(p.order());
        for (i, &g) in indices.iter().enumerate() {
            if let Some(violation) = first_violation(&p, &w, &sums, &indices[..i], g, i) {
                return Ok(Verification::Invalid { violation });
            }
            sumset::extend(&p, &w, &mut sums, g);
        }
        Ok(Verification::Valid {
            length: indices.len(),
        })
    }
}

/// Checks one extension step and, when it fails, rebuilds an explicit zero
/// sum. Scans weights in ascending residue order: a weight annihilating the
/// new element alone wins over one cancelling against earlier sums, which
/// makes the reported violation deterministic.
fn first_violation(
    p: &ProductGroup,
    w: &WeightSet,
    sums: &SumSet,
    prefix: &[usize],
    g_index: usize,
    position: usize,
) -> Option<Violation> {
    let g = p.element_at(g_index).expect("index validated on entry");
    for &a in w.residues() {
        let image = p.scale_residue(a, &g);
        if p.index_of(&image) == 0 {
            return Some(finish_violation(w, vec![(position, a)]));
        }
    }
    for &a in w.residues() {
        let image = p.scale_residue(a, &g);
        let target = p.negate(&image);
        if sums.contains(p.index_of(&target)) {
            let mut parts = vec![(position, a)];
            parts.extend(trace_sum(p, w, prefix, &target));
            return Some(finish_violation(w, parts));
        }
    }
    None
}

/// Expresses `target`, known to be a weighted subset sum of the prefix, as
/// explicit (position, weight) parts. Walks the layered sum sets backwards,
/// peeling off the newest contributing element at each step.
fn trace_sum(
    p: &ProductGroup,
    w: &WeightSet,
    prefix: &[usize],
    target: &crate::group::GroupElement,
) -> Vec<(usize, u64)> {
    // Layer t holds the subset sums of the first t prefix elements.
    let mut layers: Vec<SumSet> = Vec::with_capacity(prefix.len() + 1);
    layers.push(SumSet::new(p.order()));
    for &g in prefix {
        let mut next = layers.last().unwrap().clone();
        sumset::extend(p, w, &mut next, g);
        layers.push(next);
    }
    let mut parts = Vec::new();
    let mut want = target.clone();
    let mut level = prefix.len();
    debug_assert!(layers[level].contains(p.index_of(&want)));
    'peel: loop {
        while level > 1 && layers[level - 1].contains(p.index_of(&want)) {
            level -= 1;
        }
        // The sum now provably uses the element at `level - 1`.
        let g = p
            .element_at(prefix[level - 1])
            .expect("prefix indices are in range");
        for &b in w.residues() {
            if p.scale_residue(b, &g) == want {
                parts.push((level - 1, b));
                break 'peel;
            }
        }
        for &b in w.residues() {
            let rest = p.add(&want, &p.negate(&p.scale_residue(b, &g)));
            if layers[level - 1].contains(p.index_of(&rest)) {
                parts.push((level - 1, b));
                want = rest;
                level -= 1;
                continue 'peel;
            }
        }
        unreachable!("sum set member admits a decomposition by construction");
    }
    parts
}

/// Sorts parts by position and converts weights to signed form.
fn finish_violation(w: &WeightSet, mut parts: Vec<(usize, u64)>) -> Violation {
    parts.sort_unstable_by_key(|&(pos, _)| pos);
    let exponent = w.exponent();
    let weights = parts
        .iter()
        .map(|&(_, a)| {
            if 2 * a <= exponent {
                a as i64
            } else {
                a as i64 - exponent as i64
            }
        })
        .collect();
    Violation {
        indices: parts.into_iter().map(|(pos, _)| pos).collect(),
        weights,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert(group: &[u64], weights: WeightSpec, elements: &[&[u64]]) -> Certificate {
        Certificate::new(
            group,
            weights,
            elements.iter().map(|e| e.to_vec()).collect(),
            None,
        )
    }

    #[test]
    fn accepts_dissociated_sequence() {
        let c = cert(&[6, 3], WeightSpec::Pm, &[&[1, 0], &[2, 0], &[0, 1]]);
        assert_eq!(c.verify().unwrap(), Verification::Valid { length: 3 });
    }

    #[test]
    fn accepts_empty_sequence() {
        let c = cert(&[5], WeightSpec::Pm, &[]);
        assert_eq!(c.verify().unwrap(), Verification::Valid { length: 0 });
    }

    #[test]
    fn rejects_cancelling_extension_with_explicit_witness() {
        let c = cert(&[6, 3], WeightSpec::Pm, &[&[1, 0], &[2, 0], &[0, 1], &[3, 0]]);
        match c.verify().unwrap() {
            Verification::Invalid { violation } => {
                assert_eq!(violation.indices, vec![0, 1, 3]);
                assert_eq!(violation.weights, vec![1, 1, 1]);
            }
            v => panic!("expected invalid, got {v:?}"),
        }
    }

    #[test]
    fn rejects_element_annihilated_by_one_weight() {
        let c = cert(&[4], WeightSpec::Full, &[&[1], &[2]]);
        match c.verify().unwrap() {
            Verification::Invalid { violation } => {
                assert_eq!(violation.indices, vec![1]);
                assert_eq!(violation.weights, vec![2]);
            }
            v => panic!("expected invalid, got {v:?}"),
        }
    }

    #[test]
    fn rejects_zero_element() {
        let c = cert(&[5, 5], WeightSpec::Pm, &[&[0, 0]]);
        match c.verify().unwrap() {
            Verification::Invalid { violation } => {
                assert_eq!(violation.indices, vec![0]);
                assert_eq!(violation.weights, vec![1]);
            }
            v => panic!("expected invalid, got {v:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_under_plus_minus() {
        let c = cert(&[9], WeightSpec::Pm, &[&[4], &[4]]);
        match c.verify().unwrap() {
            Verification::Invalid { violation } => {
                assert_eq!(violation.indices, vec![0, 1]);
                // 1 * 4 + (-1) * 4 = 0.
                assert_eq!(violation.weights.len(), 2);
            }
            v => panic!("expected invalid, got {v:?}"),
        }
    }

    #[test]
    fn violations_really_sum_to_zero() {
        // Deliberately broken certificates over assorted groups; every
        // reported violation must be a genuine zero sum.
        let cases = vec![
            cert(&[9], WeightSpec::Pm, &[&[1], &[2], &[3], &[4]]),
            cert(&[2, 6], WeightSpec::Pm, &[&[1, 1], &[0, 2], &[1, 3]]),
            cert(&[12], WeightSpec::set(&[1, 5]), &[&[2], &[10], &[1], &[7]]),
            cert(&[3, 3], WeightSpec::Full, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]),
        ];
        for c in cases {
            let p = ProductGroup::new(&c.group).unwrap();
            let w = WeightSet::from_spec(&c.weights, p.exponent()).unwrap();
            match c.verify().unwrap() {
                Verification::Invalid { violation } => {
                    let mut sum = p.zero();
                    for (&i, &wt) in violation.indices.iter().zip(&violation.weights) {
                        let g = p.element(&c.elements[i]).unwrap();
                        sum = p.add(&sum, &p.scale(wt, &g));
                    }
                    assert_eq!(sum, p.zero(), "bogus violation for {c:?}");
                    let signed = w.signed_representatives();
                    for wt in &violation.weights {
                        assert!(signed.contains(wt), "weight {wt} not in the set");
                    }
                }
                Verification::Valid { .. } => panic!("expected invalid: {c:?}"),
            }
        }
    }

    #[test]
    fn group_taken_as_written() {
        // (3, 0) has order 2 inside C6, so doubling it cancels; the same
        // coordinates over the canonical form would mean something else.
        let c = cert(&[6], WeightSpec::set(&[2]), &[&[3]]);
        assert!(matches!(c.verify().unwrap(), Verification::Invalid { .. }));
    }

    #[test]
    fn structural_errors() {
        assert!(cert(&[0], WeightSpec::Pm, &[]).verify().is_err());
        assert!(cert(&[6], WeightSpec::Pm, &[&[6]]).verify().is_err());
        assert!(cert(&[6], WeightSpec::Pm, &[&[1, 0]]).verify().is_err());
        assert!(cert(&[1 << 25], WeightSpec::Pm, &[]).verify().is_err());
        assert!(cert(&[6], WeightSpec::set(&[]), &[&[1]]).verify().is_err());
    }

    #[test]
    fn json_roundtrip_and_defaults() {
        let c = cert(&[6, 3], WeightSpec::Pm, &[&[1, 0]]);
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(c, back);

        // Claim defaults to dissociated and provenance is optional.
        let parsed = Certificate::from_json(
            r#"{"group":[9],"weights":{"kind":"pm"},"elements":[[1]]}"#,
        )
        .unwrap();
        assert_eq!(parsed.claim, Claim::Dissociated);
        assert_eq!(parsed.provenance, None);
        assert!(!c.to_json().contains("provenance"));

        let with_prov = Certificate::new(&[9], WeightSpec::Pm, vec![vec![1]], Some("by hand".into()));
        let text = with_prov.to_json();
        assert!(text.contains("by hand"));
        assert_eq!(Certificate::from_json(&text).unwrap(), with_prov);

        assert!(Certificate::from_json("{").is_err());
        assert!(Certificate::from_json(
            r#"{"group":[9],"weights":{"kind":"pm"},"elements":[[1]],"claim":"maximal"}"#
        )
        .is_err());
    }
}