//! Diverse collections of bounded vectors built from a binary collection.
//!
//! A bounded seed `x^s` is mapped to a binary seed `y^s`, a binary generator
//! diversifies `y^s`, and every binary solution `y°` is mapped back:
//!
//! - R1: `x°_j = L°_j` if `y°_j = 0`, else `U°_j`.
//! - R2: `x°_j = x^s_j` if `y°_j = y^s_j`, else the R1 value.
//!
//! The binary seed splits each component at the contracted midpoint
//! `(L°_j + U°_j) / 2`, the same threshold the contracted opposite uses, so
//! lifting `complement(y^s)` reproduces the opposite of `x^s` under either
//! rule for any contraction parameters.

use serde::{Deserialize, Serialize};

use crate::collection::Provenance;
use crate::error::ensure_dim;
use crate::opposition::{round_away_from, LambdaPolicy};
use crate::{BinaryVector, BoundedInterval, BoundedVector, DiverseCollection, Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftRule {
    #[default]
    R1,
    R2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiftPolicy {
    pub rule: LiftRule,
    pub lambda: LambdaPolicy,
    /// Bit assigned to a seed component sitting exactly on the midpoint.
    pub midpoint_bit: u8,
}

impl Default for LiftPolicy {
    fn default() -> Self {
        LiftPolicy {
            rule: LiftRule::R1,
            lambda: LambdaPolicy::default(),
            midpoint_bit: 0,
        }
    }
}

impl LiftPolicy {
    pub fn new(rule: LiftRule, lambda: LambdaPolicy) -> Self {
        LiftPolicy {
            rule,
            lambda,
            ..Self::default()
        }
    }

    pub fn with_midpoint_bit(mut self, bit: u8) -> Self {
        self.midpoint_bit = bit;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.midpoint_bit > 1 {
            return Err(Error::Parameter(format!(
                "midpoint bit must be 0 or 1, got {}",
                self.midpoint_bit
            )));
        }
        self.lambda.validate()
    }
}

fn binarize_with(
    x_s: &BoundedVector,
    intervals: &[BoundedInterval],
    midpoint_bit: u8,
) -> Result<BinaryVector> {
    let bits = x_s
        .values()
        .iter()
        .zip(intervals)
        .map(|(&x, iv)| {
            let mid = iv.contracted_midpoint();
            if x < mid {
                0
            } else if x > mid {
                1
            } else {
                midpoint_bit
            }
        })
        .collect();
    BinaryVector::new(bits)
}

/// Binary image of a bounded seed: 0 below the contracted midpoint, 1 above,
/// `policy.midpoint_bit` on it.
pub fn binarize_seed(x_s: &BoundedVector, policy: &LiftPolicy) -> Result<BinaryVector> {
    policy.validate()?;
    let intervals = policy.lambda.apply(x_s.intervals())?;
    binarize_with(x_s, &intervals, policy.midpoint_bit)
}

/// Bounded value for bit `bit` of component `j`: `L°_j` or `U°_j`, rounded
/// away from the seed component when integral.
fn target(bit: u8, seed_value: f64, interval: &BoundedInterval, integral: bool) -> f64 {
    let (lo, hi) = interval.contracted();
    let raw = if bit == 0 { lo } else { hi };
    if integral {
        round_away_from(raw, seed_value, interval)
    } else {
        raw
    }
}

/// Maps each member of `binary` to a bounded vector under `policy.rule`.
/// The seed `x_s` is the first member of the result. Random contraction
/// parameters are drawn once per call and shared by all members.
pub fn lift_collection(
    x_s: &BoundedVector,
    binary: &DiverseCollection<BinaryVector>,
    policy: &LiftPolicy,
) -> Result<DiverseCollection<BoundedVector>> {
    policy.validate()?;
    let n = x_s.len();
    if let Some(d) = binary.dim() {
        ensure_dim(n, d)?;
    }
    let intervals = policy.lambda.apply(x_s.intervals())?;
    let y_s = binarize_with(x_s, &intervals, policy.midpoint_bit)?;

    let mut members = Vec::with_capacity(binary.len() + 1);
    members.push(x_s.clone());
    for y in binary {
        let values = (0..n)
            .map(|j| {
                let keep = policy.rule == LiftRule::R2 && y.get(j) == y_s.get(j);
                if keep {
                    x_s.values()[j]
                } else {
                    target(y.get(j), x_s.values()[j], &intervals[j], x_s.integral()[j])
                }
            })
            .collect();
        members.push(BoundedVector::new(
            values,
            intervals.clone(),
            x_s.integral().to_vec(),
        )?);
    }

    let mut provenance = Provenance::new(
        "lift",
        serde_json::json!({
            "seed": x_s,
            "binary_seed": y_s,
            "policy": policy,
            "lambdas": intervals
                .iter()
                .map(|iv| (iv.lambda_lower(), iv.lambda_upper()))
                .collect::<Vec<_>>(),
            "binary_provenance": binary.provenance(),
        }),
    );
    if let Some(seed) = policy.lambda.seed() {
        provenance = provenance.with_rng(seed);
    }
    DiverseCollection::new(members, provenance)
}
