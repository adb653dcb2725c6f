//! Lower and upper bounds for weighted Davenport constants, and the
//! dispatcher that combines them into an exact value where a proof rule
//! applies and an honest bracket where none does.
//!
//! All comparisons involving base-2 logarithms go through [`crate::intlog`]
//! so that every decision is exact integer arithmetic.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::certificate::{Certificate, Verification, VERIFY_ORDER_CAP};
use crate::construct::{independent_full, plan_best};
use crate::group::AbelianGroup;
use crate::intlog::{
    floor_log2, floor_log2_big, frac_log2_ge, frac_log2_pair_lt_one, frac_log2_sum_lt,
};
use crate::weights::{normalize, WeightForm, WeightSpec};
use crate::{Error, Result};

/// Decompositions examined per rule sweep before giving up; a truncated
/// sweep can only miss a proof, never produce a wrong one.
const DECOMP_BUDGET: usize = 20_000;

/// Prime-power count above which the two-summand tightness rule is skipped.
const SPLIT_RANK_MAX: usize = 16;

/// Largest group order for which an unweighted chain witness is embedded in
/// the report; the bound itself does not depend on it.
const REPEAT_CERT_ORDER_CAP: usize = 4096;

/// Largest group order for which a full-weight basis witness is embedded.
const FULL_CERT_ORDER_CAP: usize = 1 << 16;

/// A computed constant: either proven exactly or bracketed by a certified
/// lower bound and a counting upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Value {
    Exact { value: usize },
    Bracket { lower: usize, upper: usize },
}

impl Value {
    pub fn exact(value: usize) -> Value {
        Value::Exact { value }
    }

    pub fn lower(&self) -> usize {
        match *self {
            Value::Exact { value } => value,
            Value::Bracket { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> usize {
        match *self {
            Value::Exact { value } => value,
            Value::Bracket { upper, .. } => upper,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact { .. })
    }

    /// Both endpoints moved up by `delta`, if they stay in range; turns a
    /// Davenport value into the matching long-sequence constant.
    pub fn shifted(&self, delta: usize) -> Option<Value> {
        let add = |v: usize| v.checked_add(delta);
        Some(match *self {
            Value::Exact { value } => Value::Exact { value: add(value)? },
            Value::Bracket { lower, upper } => Value::Bracket {
                lower: add(lower)?,
                upper: add(upper)?,
            },
        })
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Value::Exact { value } => write!(f, "{value}"),
            Value::Bracket { lower, upper } => write!(f, "[{lower}, {upper}]"),
        }
    }
}

/// Everything the dispatcher can say about one (group, weights) pair.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    /// The pair as asked.
    pub group: AbelianGroup,
    pub weights: WeightSpec,
    /// The equivalent coprime pair the value was computed on.
    pub normalized_group: AbelianGroup,
    pub normalized_weights: WeightSpec,
    /// Common divisor removed from the weights, 1 if none.
    pub divisor: u64,
    /// The Davenport constant of the pair.
    pub value: Value,
    /// Which rule produced `value`.
    pub method: &'static str,
    /// The constant for sequences of length order plus value minus one;
    /// absent when the group order does not fit a machine word.
    pub e_value: Option<Value>,
    /// For plus-minus weights: the decomposition maximizing the chain bound.
    pub star_decomposition: Option<Vec<u64>>,
    /// Best known dissociated sequence, already verified; its length plus
    /// one never exceeds `value`'s range.
    pub certificate: Option<Certificate>,
}

/// Chain bound over the invariant factors: one doubling chain per factor.
pub fn chain_lower(g: &AbelianGroup) -> usize {
    decomposition_value(g.moduli())
}

/// Chain bound of one decomposition into cyclic parts.
pub fn decomposition_value(parts: &[u64]) -> usize {
    parts
        .iter()
        .map(|&m| floor_log2(m.max(1)) as usize)
        .sum::<usize>()
        + 1
}

/// Subset-counting upper bound for plus-minus weights: distinct signed
/// subset sums of a dissociated sequence are distinct group elements.
pub fn log2_upper(g: &AbelianGroup) -> usize {
    floor_log2_big(&g.order()) as usize + 1
}

/// Best chain bound over all decompositions into cyclic parts, with the
/// decomposition achieving it (parts in ascending order). Prefers larger
/// value, then fewer parts, then lexicographically smaller parts. Groups
/// beyond the decomposition rank cap fall back to the invariant factors.
pub fn star_lower(g: &AbelianGroup) -> Result<(usize, Vec<u64>)> {
    if g.is_trivial() {
        return Ok((1, Vec::new()));
    }
    let mut best: Option<(usize, Vec<u64>)> = None;
    let mut seen = 0usize;
    let walk = g.for_each_decomposition(|parts| {
        seen += 1;
        let value = decomposition_value(parts);
        let mut sorted = parts.to_vec();
        sorted.sort_unstable();
        let better = match &best {
            None => true,
            Some((cur, cur_parts)) => {
                value > *cur
                    || (value == *cur
                        && (sorted.len() < cur_parts.len()
                            || (sorted.len() == cur_parts.len() && sorted < *cur_parts)))
            }
        };
        if better {
            best = Some((value, sorted));
        }
        seen < DECOMP_BUDGET
    });
    match walk {
        Ok(_) => best.ok_or_else(|| {
            Error::Precondition("group has no decomposition into cyclic parts".to_string())
        }),
        Err(Error::RankCap { .. }) => Ok((chain_lower(g), g.moduli().to_vec())),
        Err(e) => Err(e),
    }
}

/// Exact plus-minus values known to sit below the subset-counting upper
/// bound, keyed by invariant factors.
fn exceptional_pm(moduli: &[u64]) -> Option<usize> {
    match moduli {
        [3, 3] => Some(3),
        [3, 3, 3] => Some(4),
        [3, 3, 9] => Some(6),
        _ => None,
    }
}

/// Counting rule: a decomposition whose parts all have fractional log at
/// least that of 3, with at least floor(t/2) parts of size 4 or more and
/// total fractional log below floor(t/2) + 1, forces the plus-minus
/// constant up to the subset-counting bound.
fn tight_by_counting(g: &AbelianGroup) -> Result<bool> {
    let mut found = false;
    let mut seen = 0usize;
    let walk = g.for_each_decomposition(|parts| {
        seen += 1;
        let t = parts.len();
        let qualifying = parts.iter().all(|&m| frac_log2_ge(m, 3))
            && parts.iter().filter(|&&m| m >= 4).count() >= t / 2
            && frac_log2_sum_lt(parts, (t / 2 + 1) as u32);
        if qualifying {
            found = true;
        }
        !found && seen < DECOMP_BUDGET
    });
    match walk {
        Ok(_) => Ok(found),
        Err(Error::RankCap { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Two-summand rule: if both halves of a direct-sum split reach their own
/// subset-counting bounds and their orders' fractional logs sum below 1,
/// the whole group reaches its bound.
fn tight_by_split(g: &AbelianGroup, memo: &mut HashMap<Vec<u64>, bool>) -> Result<bool> {
    let powers = g.prime_powers();
    let n = powers.len();
    if n < 2 || n > SPLIT_RANK_MAX {
        return Ok(false);
    }
    // The first prime power stays on the left side, so each unordered split
    // appears once.
    for mask in 0u32..(1u32 << (n - 1)) {
        let mut left = vec![powers[0]];
        let mut right = Vec::new();
        for (i, &q) in powers.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                left.push(q);
            } else {
                right.push(q);
            }
        }
        if right.is_empty() {
            continue;
        }
        let left_order: BigUint = left.iter().map(|&q| BigUint::from(q)).product();
        let right_order: BigUint = right.iter().map(|&q| BigUint::from(q)).product();
        if !frac_log2_pair_lt_one(&left_order, &right_order) {
            continue;
        }
        let lg = AbelianGroup::new(&left)?;
        let rg = AbelianGroup::new(&right)?;
        if provably_tight(&lg, memo)? && provably_tight(&rg, memo)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether the rules at hand prove that the plus-minus constant equals the
/// subset-counting upper bound. Sound but incomplete: a false answer means
/// no proof was found, not that the group falls short.
fn provably_tight(g: &AbelianGroup, memo: &mut HashMap<Vec<u64>, bool>) -> Result<bool> {
    if g.is_trivial() {
        return Ok(true);
    }
    let key = g.moduli().to_vec();
    if let Some(&known) = memo.get(&key) {
        return Ok(known);
    }
    let tight = if exceptional_pm(g.moduli()).is_some() {
        false
    } else if g.exponent() == 3 {
        // Elementary 3-groups have value rank + 1, which meets the
        // subset-counting bound only in rank 1.
        g.rank() == 1
    } else {
        let (star, _) = star_lower(g)?;
        star == log2_upper(g) || tight_by_counting(g)? || tight_by_split(g, memo)?
    };
    memo.insert(key, tight);
    Ok(tight)
}

fn verified(cert: Certificate) -> Option<Certificate> {
    match cert.verify() {
        Ok(Verification::Valid { .. }) => Some(cert),
        _ => None,
    }
}

/// Basis witness for elementary 3-groups: signed sums of distinct basis
/// elements keep a nonzero coordinate.
fn elementary_basis_cert(g: &AbelianGroup) -> Option<Certificate> {
    if g.small_order().is_none_or(|o| o > VERIFY_ORDER_CAP) {
        return None;
    }
    let rank = g.rank();
    let elements = (0..rank)
        .map(|i| {
            let mut coords = vec![0u64; rank];
            coords[i] = 1;
            coords
        })
        .collect();
    verified(Certificate::new(
        g.moduli(),
        WeightSpec::Pm,
        elements,
        Some("independent basis".to_string()),
    ))
}

/// One-per-factor repeated-basis witness for a single invertible weight:
/// each invariant factor contributes its basis element order minus one
/// times, so subset sums keep some coordinate strictly between zero and
/// the factor.
fn repeat_basis_cert(g: &AbelianGroup, weights: &WeightSpec) -> Option<Certificate> {
    let order = g.small_order()?;
    if order > REPEAT_CERT_ORDER_CAP {
        return None;
    }
    let moduli = g.moduli();
    let mut elements = Vec::new();
    for (i, &n) in moduli.iter().enumerate() {
        let mut coords = vec![0u64; moduli.len()];
        coords[i] = 1;
        for _ in 1..n {
            elements.push(coords.clone());
        }
    }
    verified(Certificate::new(
        moduli,
        weights.clone(),
        elements,
        Some("repeated basis".to_string()),
    ))
}

struct Outcome {
    value: Value,
    method: &'static str,
    star: Option<Vec<u64>>,
    certificate: Option<Certificate>,
}

/// Plus-minus dispatcher on a coprime pair. Tries exact rules from the
/// cheapest to the most expensive, then settles for a bracket between the
/// best certified construction and the subset-counting bound.
fn pm_outcome(g: &AbelianGroup) -> Result<Outcome> {
    let upper = log2_upper(g);
    if g.exponent() == 3 {
        return Ok(Outcome {
            value: Value::exact(g.rank() + 1),
            method: "elementary-three",
            star: None,
            certificate: elementary_basis_cert(g),
        });
    }
    let (star, star_parts) = star_lower(g)?;
    let plan = if g.small_order().is_some_and(|o| o <= VERIFY_ORDER_CAP) {
        Some(plan_best(g)?)
    } else {
        None
    };
    let plan_len = plan.as_ref().map_or(0, Certificate::length);

    if let Some(value) = exceptional_pm(g.moduli()) {
        return Ok(Outcome {
            value: Value::exact(value),
            method: "exceptional-table",
            star: Some(star_parts),
            certificate: plan,
        });
    }

    let lower = star.max(plan_len + 1);
    if lower >= upper {
        let method = if star == upper {
            if star == chain_lower(g) {
                "chain-decomposition"
            } else {
                "best-decomposition"
            }
        } else {
            "construction"
        };
        return Ok(Outcome {
            value: Value::exact(upper),
            method,
            star: Some(star_parts),
            certificate: plan,
        });
    }
    if tight_by_counting(g)? {
        return Ok(Outcome {
            value: Value::exact(upper),
            method: "subset-counting",
            star: Some(star_parts),
            certificate: plan,
        });
    }
    let mut memo = HashMap::new();
    if tight_by_split(g, &mut memo)? {
        return Ok(Outcome {
            value: Value::exact(upper),
            method: "fractional-pairing",
            star: Some(star_parts),
            certificate: plan,
        });
    }
    Ok(Outcome {
        value: Value::Bracket { lower, upper },
        method: if plan_len + 1 > star {
            "construction"
        } else {
            "best-decomposition"
        },
        star: Some(star_parts),
        certificate: plan,
    })
}

/// Full-weight dispatcher: the constant is one more than the number of
/// invariant factors equal to the exponent.
fn full_outcome(g: &AbelianGroup) -> Result<Outcome> {
    let value = g.rank_of(g.exponent()) + 1;
    let certificate = if g.small_order().is_some_and(|o| o <= FULL_CERT_ORDER_CAP) {
        verified(independent_full(g)?)
    } else {
        None
    };
    Ok(Outcome {
        value: Value::exact(value),
        method: "full-weight-rank",
        star: None,
        certificate,
    })
}

/// Single invertible weight: multiplication by it is an automorphism, so
/// the pair behaves like classical weight one. Cyclic groups are exact at
/// their order; otherwise the repeated-basis chain and the prefix-sum
/// pigeonhole bracket the value.
fn single_outcome(g: &AbelianGroup, weights: &WeightSpec, literal_one: bool) -> Result<Outcome> {
    let order = g.small_order().ok_or_else(|| {
        Error::Precondition("group order exceeds the native range for unweighted bounds".into())
    })?;
    let certificate = repeat_basis_cert(g, weights);
    if g.rank() <= 1 {
        return Ok(Outcome {
            value: Value::exact(order),
            method: if literal_one { "unweighted-chain" } else { "single-element" },
            star: None,
            certificate,
        });
    }
    let mut lower = 1u128;
    for &n in g.moduli() {
        lower += u128::from(n) - 1;
    }
    let lower = usize::try_from(lower).map_err(|_| {
        Error::Precondition("chain bound exceeds the native range".to_string())
    })?;
    Ok(Outcome {
        value: Value::Bracket { lower, upper: order },
        method: "pigeonhole",
        star: None,
        certificate,
    })
}

/// Weights with no recognized structure: a generator of the largest factor
/// is dissociated alone, and uniform prefix sums give the order as an
/// upper bound.
fn other_outcome(g: &AbelianGroup) -> Result<Outcome> {
    let order = g.small_order().ok_or_else(|| {
        Error::Precondition("group order exceeds the native range for generic bounds".into())
    })?;
    Ok(Outcome {
        value: Value::Bracket { lower: 2, upper: order },
        method: "pigeonhole",
        star: None,
        certificate: None,
    })
}

/// Computes the Davenport constant of the pair, normalizing the weights
/// first and picking the strongest applicable rule set.
pub fn davenport_bounds(g: &AbelianGroup, spec: &WeightSpec) -> Result<BoundsReport> {
    let trivial_outcome = Outcome {
        value: Value::exact(1),
        method: "trivial-group",
        star: None,
        certificate: None,
    };

    // Full weights over the original group never normalize away and need no
    // materialized residue list.
    if matches!(spec, WeightSpec::Full) && !g.is_trivial() && g.exponent() > 1 {
        let outcome = full_outcome(g)?;
        return finish(g, spec, g.clone(), WeightSpec::Full, 1, outcome);
    }

    let problem = normalize(g, spec)?;
    let ng = problem.group.clone();
    let divisor = problem.divisor;
    let set = &problem.weights;

    let normalized_spec = match spec {
        WeightSpec::Pm => WeightSpec::Pm,
        WeightSpec::Full => WeightSpec::Full,
        WeightSpec::Set { .. } => WeightSpec::Set {
            values: set.signed_representatives(),
        },
    };

    let outcome = if g.is_trivial() || ng.is_trivial() {
        trivial_outcome
    } else if set.is_degenerate() {
        Outcome {
            value: Value::exact(1),
            method: "zero-weight",
            star: None,
            certificate: None,
        }
    } else {
        match set.form() {
            WeightForm::PlusMinus => pm_outcome(&ng)?,
            WeightForm::Full => full_outcome(&ng)?,
            WeightForm::Single => {
                single_outcome(&ng, &normalized_spec, set.residues() == [1])?
            }
            WeightForm::Other => other_outcome(&ng)?,
        }
    };
    finish(g, spec, ng, normalized_spec, divisor, outcome)
}

fn finish(
    g: &AbelianGroup,
    spec: &WeightSpec,
    normalized_group: AbelianGroup,
    normalized_weights: WeightSpec,
    divisor: u64,
    outcome: Outcome,
) -> Result<BoundsReport> {
    let e_value = g
        .small_order()
        .and_then(|order| outcome.value.shifted(order - 1));
    Ok(BoundsReport {
        group: g.clone(),
        weights: spec.clone(),
        normalized_group,
        normalized_weights,
        divisor,
        value: outcome.value,
        method: outcome.method,
        e_value,
        star_decomposition: outcome.star,
        certificate: outcome.certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(moduli: &[u64]) -> AbelianGroup {
        AbelianGroup::new(moduli).unwrap()
    }

    fn pm(moduli: &[u64]) -> BoundsReport {
        davenport_bounds(&group(moduli), &WeightSpec::Pm).unwrap()
    }

    #[test]
    fn chain_and_upper_agree_on_two_groups_and_cyclic() {
        for moduli in [&[1024u64][..], &[2, 2, 2, 2][..], &[97][..]] {
            let g = group(moduli);
            assert_eq!(chain_lower(&g), log2_upper(&g), "moduli {moduli:?}");
        }
        assert_eq!(chain_lower(&group(&[3, 759])), 11);
        assert_eq!(log2_upper(&group(&[3, 759])), 12);
    }

    #[test]
    fn star_witnesses_are_frozen() {
        let cases: [(&[u64], usize, &[u64]); 5] = [
            (&[3, 759], 12, &[33, 69]),
            (&[897, 897], 20, &[39, 69, 299]),
            (&[5, 15], 6, &[5, 15]),
            (&[3, 3, 9], 6, &[3, 3, 9]),
            (&[23, 23], 9, &[23, 23]),
        ];
        for (moduli, value, witness) in cases {
            let (star, parts) = star_lower(&group(moduli)).unwrap();
            assert_eq!(star, value, "moduli {moduli:?}");
            assert_eq!(parts, witness, "moduli {moduli:?}");
        }
    }

    #[test]
    fn plus_minus_exact_families() {
        let cases: [(&[u64], usize, &'static str); 8] = [
            (&[9], 4, "chain-decomposition"),
            (&[3, 3], 3, "elementary-three"),
            (&[3, 3, 3], 4, "elementary-three"),
            (&[3, 3, 3, 3], 5, "elementary-three"),
            (&[3, 3, 9], 6, "exceptional-table"),
            (&[6, 6], 6, "construction"),
            (&[2, 2, 2, 2, 2, 2, 2, 2, 2, 2], 11, "chain-decomposition"),
            (&[897, 897], 20, "best-decomposition"),
        ];
        for (moduli, value, method) in cases {
            let report = pm(moduli);
            assert_eq!(report.value, Value::exact(value), "moduli {moduli:?}");
            assert_eq!(report.method, method, "moduli {moduli:?}");
        }
    }

    #[test]
    fn plus_minus_brackets() {
        let report = pm(&[5, 15]);
        assert_eq!(report.value, Value::Bracket { lower: 6, upper: 7 });
        let report = pm(&[23, 23]);
        assert_eq!(report.value, Value::Bracket { lower: 9, upper: 10 });
    }

    #[test]
    fn attached_certificates_fit_the_claim() {
        let report = pm(&[6, 6]);
        let cert = report.certificate.expect("construction witness");
        assert_eq!(cert.length() + 1, report.value.lower());
        assert!(matches!(
            cert.verify().unwrap(),
            Verification::Valid { length: 5 }
        ));

        let report = pm(&[3, 3, 3]);
        let cert = report.certificate.expect("basis witness");
        assert_eq!(cert.length(), 3);
    }

    #[test]
    fn full_weights_count_maximal_factors() {
        let cases: [(&[u64], usize); 3] = [(&[3, 3, 9], 2), (&[3, 3, 3], 4), (&[12], 2)];
        for (moduli, value) in cases {
            let report = davenport_bounds(&group(moduli), &WeightSpec::Full).unwrap();
            assert_eq!(report.value, Value::exact(value), "moduli {moduli:?}");
            assert_eq!(report.method, "full-weight-rank");
            let cert = report.certificate.expect("basis witness");
            assert_eq!(cert.length() + 1, value);
        }
    }

    #[test]
    fn single_weight_matches_classical_values() {
        let report = davenport_bounds(&group(&[7]), &WeightSpec::set(&[1])).unwrap();
        assert_eq!(report.value, Value::exact(7));
        assert_eq!(report.method, "unweighted-chain");
        assert_eq!(report.e_value, Some(Value::exact(13)));

        let report = davenport_bounds(&group(&[7]), &WeightSpec::set(&[5])).unwrap();
        assert_eq!(report.value, Value::exact(7));
        assert_eq!(report.method, "single-element");

        // At exponent 2 the weight 1 is its own negation, so the sharper
        // plus-minus rules take over and settle the two-group exactly.
        let report = davenport_bounds(&group(&[2, 2]), &WeightSpec::set(&[1])).unwrap();
        assert_eq!(report.value, Value::exact(3));

        let report = davenport_bounds(&group(&[2, 4]), &WeightSpec::set(&[1])).unwrap();
        assert_eq!(report.value, Value::Bracket { lower: 5, upper: 8 });
        assert_eq!(report.method, "pigeonhole");
        assert_eq!(report.certificate.unwrap().length(), 4);
    }

    #[test]
    fn normalization_reroutes_to_known_forms() {
        let report = davenport_bounds(&group(&[12]), &WeightSpec::set(&[2, -2])).unwrap();
        assert_eq!(report.divisor, 2);
        assert_eq!(report.normalized_group.moduli(), &[6]);
        assert_eq!(report.value, Value::exact(3));

        let report = davenport_bounds(&group(&[9]), &WeightSpec::set(&[3])).unwrap();
        assert_eq!(report.divisor, 3);
        assert_eq!(report.normalized_group.moduli(), &[3]);
        assert_eq!(report.value, Value::exact(3));
        assert_eq!(report.method, "unweighted-chain");
    }

    #[test]
    fn degenerate_and_trivial_pairs() {
        let report = davenport_bounds(&group(&[5]), &WeightSpec::set(&[0, 1])).unwrap();
        assert_eq!(report.value, Value::exact(1));
        assert_eq!(report.method, "zero-weight");

        let report = davenport_bounds(&AbelianGroup::trivial(), &WeightSpec::Pm).unwrap();
        assert_eq!(report.value, Value::exact(1));
        assert_eq!(report.method, "trivial-group");
    }

    #[test]
    fn unstructured_weights_get_generic_bracket() {
        let report = davenport_bounds(&group(&[12]), &WeightSpec::set(&[3, 4])).unwrap();
        assert_eq!(report.value, Value::Bracket { lower: 2, upper: 12 });
        assert_eq!(report.method, "pigeonhole");
    }

    #[test]
    fn e_value_shifts_by_order_minus_one() {
        let report = pm(&[9]);
        assert_eq!(report.e_value, Some(Value::exact(12)));
        let report = pm(&[5, 15]);
        assert_eq!(report.e_value, Some(Value::Bracket { lower: 80, upper: 81 }));
    }

    #[test]
    fn giant_groups_still_get_log_scale_bounds() {
        // Order 5^30 overflows usize on 64-bit targets only in the product
        // of the certificate path; the value itself stays log scale.
        let moduli: Vec<u64> = vec![5; 30];
        let g = AbelianGroup::new(&moduli).unwrap();
        let report = davenport_bounds(&g, &WeightSpec::Pm).unwrap();
        assert_eq!(report.value.upper(), log2_upper(&g));
        assert!(report.value.lower() >= chain_lower(&g));
        assert!(report.e_value.is_none());
        assert!(report.certificate.is_none());
    }
}
