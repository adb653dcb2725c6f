//! Weight sets for weighted zero-sum problems.
//!
//! A weight set is a nonempty set of residues modulo the group exponent. A
//! sequence `g_1, ..., g_k` has a weighted zero subsum when some nonempty
//! subset admits weights `a_i` from the set with `sum a_i g_i = 0`. The
//! Davenport constant of a pair (group, weights) is the least length forcing
//! such a subsum, equivalently one more than the longest sequence without
//! one.
//!
//! [`WeightSpec`] is the symbolic form that appears in certificates and on
//! the command line; [`WeightSet`] is its concrete residue list for one
//! exponent. [`normalize`] reduces a pair to coprime form: dividing the
//! weights and dilating the group by their common divisor with the exponent
//! leaves the constant unchanged, so every computation downstream may assume
//! `gcd` one.

use crate::group::AbelianGroup;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Symbolic weight set, independent of any particular group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightSpec {
    /// `{+1, -1}`.
    Pm,
    /// All of `{1, ..., exp - 1}`.
    Full,
    /// Explicit integers, reduced modulo the exponent on materialization.
    Set { values: Vec<i64> },
}

impl WeightSpec {
    pub fn set(values: &[i64]) -> Self {
        WeightSpec::Set {
            values: values.to_vec(),
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Pm => write!(f, "pm"),
            WeightSpec::Full => write!(f, "full"),
            WeightSpec::Set { values } => {
                write!(f, "set:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Concrete residues of a weight set modulo a fixed exponent. Residues are
/// sorted, deduplicated and reduced; the list is never empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSet {
    exponent: u64,
    residues: Vec<u64>,
}

/// Shape of a weight set after normalization, used to pick evaluation rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightForm {
    /// `{u, -u}` with `u` invertible; equivalent to `{+1, -1}`.
    PlusMinus,
    /// Every nonzero residue.
    Full,
    /// A single invertible residue; equivalent to classical `{1}`.
    Single,
    /// Anything else.
    Other,
}

impl WeightSet {
    /// Materializes a spec for a given exponent. Every residue is reduced;
    /// for exponent 1 any spec collapses to `{0}`.
    pub fn from_spec(spec: &WeightSpec, exponent: u64) -> Result<WeightSet> {
        if exponent == 0 {
            return Err(Error::InvalidModulus);
        }
        let mut residues: Vec<u64> = match spec {
            WeightSpec::Pm => vec![1 % exponent, (exponent - 1) % exponent],
            WeightSpec::Full => {
                if exponent == 1 {
                    vec![0]
                } else {
                    (1..exponent).collect()
                }
            }
            WeightSpec::Set { values } => {
                if values.is_empty() {
                    return Err(Error::EmptyWeights);
                }
                values
                    .iter()
                    .map(|&v| v.rem_euclid(exponent as i64) as u64)
                    .collect()
            }
        };
        residues.sort_unstable();
        residues.dedup();
        Ok(WeightSet { exponent, residues })
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// A degenerate set contains the residue 0, which makes every single
    /// element a weighted zero subsum on its own: the constant is 1.
    pub fn is_degenerate(&self) -> bool {
        self.residues[0] == 0
    }

    /// Residues as signed representatives in `(-exp/2, exp/2]`, the form
    /// witnesses are reported in.
    pub fn signed_representatives(&self) -> Vec<i64> {
        self.residues
            .iter()
            .map(|&r| {
                if 2 * r <= self.exponent {
                    r as i64
                } else {
                    r as i64 - self.exponent as i64
                }
            })
            .collect()
    }

    /// Classifies the shape. Reliable after normalization; an unreduced set
    /// such as `{2, 10}` mod 12 classifies as [`WeightForm::Other`] even
    /// though it reduces to a plus minus pair over a smaller group.
    pub fn form(&self) -> WeightForm {
        let e = self.exponent;
        let r = &self.residues;
        if self.is_degenerate() {
            return WeightForm::Other;
        }
        if e == 2 && r == &[1] {
            // +1 and -1 coincide mod 2.
            return WeightForm::PlusMinus;
        }
        if r.len() == 2 && r[0] + r[1] == e && gcd(r[0], e) == 1 {
            return WeightForm::PlusMinus;
        }
        if r.len() as u64 == e - 1 && r[0] == 1 && *r.last().unwrap() == e - 1 {
            // Sorted and deduplicated, so this pins the full range.
            return WeightForm::Full;
        }
        if r.len() == 1 && gcd(r[0], e) == 1 {
            return WeightForm::Single;
        }
        WeightForm::Other
    }
}

/// A weighted problem reduced to coprime form.
#[derive(Clone, Debug)]
pub struct NormalizedProblem {
    /// The dilated group `dG`.
    pub group: AbelianGroup,
    /// The reduced weights, materialized for the dilated group's exponent.
    pub weights: WeightSet,
    /// The common divisor that was removed.
    pub divisor: u64,
}

/// Reduces (group, weights) by `d = gcd(weights, exponent)`: the constant of
/// the original pair equals the constant of (`dG`, `weights / d`). The
/// reduced weights are coprime to the new exponent as a set.
pub fn normalize(group: &AbelianGroup, spec: &WeightSpec) -> Result<NormalizedProblem> {
    let exponent = group.exponent();
    let set = WeightSet::from_spec(spec, exponent)?;
    let divisor = set
        .residues()
        .iter()
        .fold(exponent, |acc, &r| gcd(acc, r));
    // gcd against 0 keeps the accumulator, so a degenerate set reduces by
    // the gcd of its nonzero residues alone.
    let reduced_group = group.dilate(divisor)?;
    let reduced_exponent = reduced_group.exponent();
    debug_assert_eq!(reduced_exponent, exponent / divisor);
    // Every residue is divisible by the gcd, so division keeps the list
    // sorted and duplicate free.
    let residues: Vec<u64> = set.residues().iter().map(|&r| r / divisor).collect();
    let weights = WeightSet {
        exponent: reduced_exponent,
        residues,
    };
    Ok(NormalizedProblem {
        group: reduced_group,
        weights,
        divisor,
    })
}

/// Parses a command line weight description: `pm`, `full`, or
/// `set:1,-1,5`.
pub fn parse_weights(text: &str) -> Result<WeightSpec> {
    let t = text.trim();
    match t.to_ascii_lowercase().as_str() {
        "pm" | "+-" | "+-1" | "pm1" => return Ok(WeightSpec::Pm),
        "full" | "all" => return Ok(WeightSpec::Full),
        _ => {}
    }
    if let Some(list) = t.strip_prefix("set:") {
        let mut values = Vec::new();
        for tok in list.split(',') {
            let v: i64 = tok.trim().parse().map_err(|_| {
                Error::GroupSyntax(format!("bad weight {tok:?} in {t:?}"))
            })?;
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::EmptyWeights);
        }
        return Ok(WeightSpec::Set { values });
    }
    Err(Error::GroupSyntax(format!(
        "cannot parse weights {t:?}: expected pm, full, or set:a,b,c"
    )))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
