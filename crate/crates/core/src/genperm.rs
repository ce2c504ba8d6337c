//! Interleaving generator for permutations.
//!
//! For spacing `h`, `P(h)` lists the stride-`h` subsequences of the seed
//! starting from the last offset: `(P(h:h), P(h:h−1), …, P(h:1))` with
//! `P(h:s)` the seed elements at positions `s, s+h, s+2h, …`. `P*(h)` is
//! `P(h)` reversed. Working on positions rather than labels applies the same
//! pattern to any seed, not just the identity.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::collection::{DistinctSink, Provenance};
use crate::{DiverseCollection, Error, Permutation, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGenParams {
    pub h_values: BTreeSet<usize>,
    pub include_reversals: bool,
}

impl PermGenParams {
    pub fn new(h_values: impl IntoIterator<Item = usize>, include_reversals: bool) -> Self {
        PermGenParams {
            h_values: h_values.into_iter().collect(),
            include_reversals,
        }
    }

    /// `h = 1..=n/2` with reversals.
    pub fn default_for(n: usize) -> Self {
        Self::new(1..=(n / 2).max(1), true)
    }

    /// The two spacings nearest `√n`, with reversals.
    pub fn sqrt_only(n: usize) -> Self {
        let root = (n as f64).sqrt();
        let lo = (root.floor() as usize).clamp(1, n.max(1));
        let hi = (root.ceil() as usize).clamp(1, n.max(1));
        Self::new([lo, hi], true)
    }
}

/// Elements of `p` at 1-based positions `s, s+h, …, s+rh ≤ n`.
pub fn subsequence(p: &Permutation, h: usize, s: usize) -> Result<Vec<usize>> {
    let n = p.len();
    if s < 1 || s > h || h > n {
        return Err(Error::Parameter(format!(
            "subsequence needs 1 <= s <= h <= n (s = {s}, h = {h}, n = {n})"
        )));
    }
    Ok(p.order()[s - 1..].iter().step_by(h).copied().collect())
}

/// `P(h)` for `1 ≤ h ≤ n`.
pub fn interleave(p: &Permutation, h: usize) -> Result<Permutation> {
    let mut order = Vec::with_capacity(p.len());
    for s in (1..=h).rev() {
        order.extend(subsequence(p, h, s)?);
    }
    Permutation::new(order)
}

/// `P(h)` for each `h` (except `h = 1`, which is the seed itself), each
/// followed by `P*(h)` when reversals are requested. Repeats are dropped.
pub fn generate_perm(
    p: &Permutation,
    params: &PermGenParams,
) -> Result<DiverseCollection<Permutation>> {
    let n = p.len();
    if let Some(&bad) = params.h_values.iter().find(|&&h| h == 0 || h > n) {
        return Err(Error::Parameter(format!("h = {bad} outside 1..={n}")));
    }
    let mut sink = DistinctSink::new(Some(p.clone()), None);
    for &h in &params.h_values {
        let ph = interleave(p, h)?;
        if params.include_reversals {
            let reversed = ph.reversed();
            sink.push(ph);
            sink.push(reversed);
        } else {
            sink.push(ph);
        }
    }
    Ok(sink.finish(Provenance::new(
        "perm",
        serde_json::json!({ "seed": p, "params": params }),
    )))
}
