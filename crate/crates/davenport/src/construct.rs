//! Explicit dissociated sequences: every function returns a [`Certificate`]
//! that has already been replayed by the verifier, so a returned value is a
//! proven lower bound. A recipe that produced an invalid sequence surfaces
//! as [`Error::ConstructionInvalid`] instead of a bad certificate.

use crate::certificate::{Certificate, Verification};
use crate::group::AbelianGroup;
use crate::intlog::{floor_log2, floor_log2_third};
use crate::weights::WeightSpec;
use crate::{Error, Result};

/// Decompositions examined by [`plan_best`] before it settles for the best
/// plan found so far.
const PLAN_DECOMP_BUDGET: usize = 20_000;

/// Part count above which [`plan_best`] pairs parts greedily instead of
/// enumerating all matchings.
const EXHAUSTIVE_MATCHING_MAX_PARTS: usize = 10;

fn certify(cert: Certificate) -> Result<Certificate> {
    match cert.verify()? {
        Verification::Valid { .. } => Ok(cert),
        Verification::Invalid { violation } => Err(Error::ConstructionInvalid(format!(
            "sequence over {:?} is not dissociated: {violation}",
            cert.group
        ))),
    }
}

/// Plus-minus dissociated sequence 1, 2, 4, ... in a cyclic group: signed
/// sums of distinct powers of two below `m` are nonzero integers of
/// magnitude below `m`. Length is the floor of the base-2 logarithm of `m`.
pub fn cyclic_chain(m: u64) -> Result<Certificate> {
    if m == 0 {
        return Err(Error::InvalidModulus);
    }
    let k = if m == 1 { 0 } else { floor_log2(m) };
    let elements = (0..k).map(|i| vec![1u64 << i]).collect();
    let cert = Certificate::new(
        &[m],
        WeightSpec::Pm,
        elements,
        Some(format!("cyclic chain of length {k} in C{m}")),
    );
    certify(cert)
}

/// Plus-minus dissociated sequence of length k + l + 3 in a rank-2 product,
/// where k and l are the floors of log2(m1/3) and log2(m2/3): a doubling
/// chain in each coordinate plus three mixed elements whose first
/// coordinates form an arithmetic-like pattern d, d + 2^k, d + 2^(k+1).
pub fn rank2_pm(m1: u64, m2: u64) -> Result<Certificate> {
    if m1 < 4 {
        return Err(Error::Precondition(format!(
            "rank-2 construction needs first modulus at least 4, got {m1}"
        )));
    }
    if m2 < 3 {
        return Err(Error::Precondition(format!(
            "rank-2 construction needs second modulus at least 3, got {m2}"
        )));
    }
    let k = floor_log2_third(m1);
    let l = floor_log2_third(m2);
    let m = (m1 + 3) / 6;
    let d = (m + m1 - (1u64 << k) % m1) % m1;
    let mut elements: Vec<Vec<u64>> = Vec::with_capacity((k + l + 3) as usize);
    for i in 0..k {
        elements.push(vec![1u64 << i, 0]);
    }
    for j in 0..l {
        elements.push(vec![0, (3u64 << j) % m2]);
    }
    for step in 0..3u64 {
        let offset = if step == 0 { 0 } else { (1u64 << (k + step as u32 - 1)) % m1 };
        elements.push(vec![(d + offset) % m1, 1]);
    }
    let cert = Certificate::new(
        &[m1, m2],
        WeightSpec::Pm,
        elements,
        Some(format!("rank-2 pattern of length {} in C{m1} x C{m2}", k + l + 3)),
    );
    certify(cert)
}

/// With all nonzero residues as weights, the invariant factors equal to the
/// exponent contribute one independent basis element each; any weighted
/// combination of them would need every coefficient divisible by the
/// exponent.
pub fn independent_full(g: &AbelianGroup) -> Result<Certificate> {
    let moduli = g.moduli();
    if g.is_trivial() {
        return certify(Certificate::new(
            &[1],
            WeightSpec::Full,
            Vec::new(),
            Some("trivial group".to_string()),
        ));
    }
    let exponent = g.exponent();
    let mut elements = Vec::new();
    for (i, &n) in moduli.iter().enumerate() {
        if n == exponent {
            let mut coords = vec![0u64; moduli.len()];
            coords[i] = 1;
            elements.push(coords);
        }
    }
    let cert = Certificate::new(
        moduli,
        WeightSpec::Full,
        elements,
        Some("independent basis elements of maximal order".to_string()),
    );
    certify(cert)
}

/// Concatenates two certificates over a direct product of their groups.
/// Sound whenever both weight specs agree and describe the same integer
/// weights in every ambient group; the verifier re-checks the result.
pub fn compose(a: &Certificate, b: &Certificate) -> Result<Certificate> {
    if a.weights != b.weights {
        return Err(Error::Precondition(format!(
            "cannot compose certificates with weights {} and {}",
            a.weights, b.weights
        )));
    }
    let mut group = a.group.clone();
    group.extend_from_slice(&b.group);
    let mut elements: Vec<Vec<u64>> = Vec::with_capacity(a.elements.len() + b.elements.len());
    for e in &a.elements {
        let mut coords = e.clone();
        coords.extend(std::iter::repeat(0).take(b.group.len()));
        elements.push(coords);
    }
    for e in &b.elements {
        let mut coords = vec![0u64; a.group.len()];
        coords.extend_from_slice(e);
        elements.push(coords);
    }
    let cert = Certificate::new(&group, a.weights.clone(), elements, None);
    certify(cert)
}

/// One step of a construction plan: a lone cyclic factor carries a doubling
/// chain, a pair of factors carries the rank-2 pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Single(u64),
    Pair(u64, u64),
}

impl Part {
    fn length(&self) -> u32 {
        match *self {
            Part::Single(m) => floor_log2(m.max(1)),
            Part::Pair(a, b) => floor_log2_third(a) + floor_log2_third(b) + 3,
        }
    }
}

fn pairable(a: u64, b: u64) -> bool {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi >= 4 && lo >= 3
}

fn pair_of(a: u64, b: u64) -> Part {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    Part::Pair(hi, lo)
}

/// Best matching-plus-singletons over one decomposition's parts; exhaustive
/// for small part counts, greedy otherwise. Returns the plan and its total
/// sequence length.
fn best_matching(factors: &[u64]) -> (u32, Vec<Part>) {
    let mut sorted: Vec<u64> = factors.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.len() > EXHAUSTIVE_MATCHING_MAX_PARTS {
        return greedy_matching(&sorted);
    }
    let mut best_len = 0;
    let mut best_plan = Vec::new();
    let mut plan = Vec::new();
    match_rec(&mut sorted, &mut plan, 0, &mut best_len, &mut best_plan);
    (best_len, best_plan)
}

fn match_rec(
    remaining: &mut Vec<u64>,
    plan: &mut Vec<Part>,
    acc: u32,
    best_len: &mut u32,
    best_plan: &mut Vec<Part>,
) {
    let Some(&first) = remaining.first() else {
        if acc > *best_len || best_plan.is_empty() {
            *best_len = acc;
            *best_plan = plan.clone();
        }
        return;
    };
    remaining.remove(0);

    let single = Part::Single(first);
    plan.push(single);
    match_rec(remaining, plan, acc + single.length(), best_len, best_plan);
    plan.pop();

    for j in 0..remaining.len() {
        if j > 0 && remaining[j] == remaining[j - 1] {
            continue;
        }
        let partner = remaining[j];
        if !pairable(first, partner) {
            continue;
        }
        let pair = pair_of(first, partner);
        remaining.remove(j);
        plan.push(pair);
        match_rec(remaining, plan, acc + pair.length(), best_len, best_plan);
        plan.pop();
        remaining.insert(j, partner);
    }

    remaining.insert(0, first);
}

fn greedy_matching(sorted: &[u64]) -> (u32, Vec<Part>) {
    let mut used = vec![false; sorted.len()];
    let mut plan = Vec::new();
    let mut total = 0;
    for i in 0..sorted.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let alone = Part::Single(sorted[i]);
        let mut choice = alone;
        let mut gain_idx = None;
        for (j, &other) in sorted.iter().enumerate().skip(i + 1) {
            if used[j] || !pairable(sorted[i], other) {
                continue;
            }
            let pair = pair_of(sorted[i], other);
            let separate = alone.length() + Part::Single(other).length();
            if pair.length() > separate {
                choice = pair;
                gain_idx = Some(j);
                break;
            }
        }
        if let Some(j) = gain_idx {
            used[j] = true;
        }
        total += choice.length();
        plan.push(choice);
    }
    (total, plan)
}

fn realize(plan: &[Part]) -> Result<Certificate> {
    let mut acc: Option<Certificate> = None;
    for part in plan {
        let next = match *part {
            Part::Single(m) => cyclic_chain(m)?,
            Part::Pair(a, b) => rank2_pm(a, b)?,
        };
        acc = Some(match acc {
            None => next,
            Some(prev) => compose(&prev, &next)?,
        });
    }
    match acc {
        Some(cert) => Ok(cert),
        None => certify(Certificate::new(&[1], WeightSpec::Pm, Vec::new(), None)),
    }
}

/// Longest plus-minus dissociated sequence obtainable by combining doubling
/// chains and rank-2 patterns across the group's decompositions into cyclic
/// factors. The certificate's ambient product multiplies out to the group,
/// so its length is a lower bound for the longest dissociated sequence.
pub fn plan_best(g: &AbelianGroup) -> Result<Certificate> {
    if g.is_trivial() {
        return certify(Certificate::new(&[1], WeightSpec::Pm, Vec::new(), None));
    }
    let mut best: Option<(u32, Vec<Part>)> = None;
    let mut seen = 0usize;
    g.for_each_decomposition(&mut |factors: &[u64]| {
        seen += 1;
        let (len, plan) = best_matching(factors);
        let better = match &best {
            None => true,
            Some((cur, cur_plan)) => {
                len > *cur || (len == *cur && plan.len() < cur_plan.len())
            }
        };
        if better {
            best = Some((len, plan));
        }
        seen < PLAN_DECOMP_BUDGET
    })?;
    let (_, plan) = best.ok_or_else(|| {
        Error::Precondition("no decomposition produced a construction plan".to_string())
    })?;
    let mut ordered = plan;
    ordered.sort_by_key(|part| match *part {
        Part::Single(m) => (u64::MAX - m, 0, 0),
        Part::Pair(a, b) => (u64::MAX - a, u64::MAX - b, 1),
    });
    realize(&ordered)
}
