//! Diversification generators for 0-1 vectors.
//!
//! All generators work relative to the seed: every output is the seed with
//! some set of components complemented, so running a generator on a seed and
//! on its complement gives componentwise complementary collections.
//! Exact repeats and copies of the seed are never emitted.

use serde::{Deserialize, Serialize};

use crate::collection::{DistinctSink, Provenance};
use crate::{BinaryVector, DiverseCollection, Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FirstGenVariant {
    /// Type 1 solutions and their complements.
    #[default]
    Basic,
    /// Basic output followed by the paired-flip Type 1A solutions and their
    /// complements.
    Augmented1A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstGenParams {
    /// Largest spacing `h*`.
    pub h_max: usize,
    /// Stop after this many distinct solutions; `None` for no limit.
    pub max_solutions: Option<usize>,
    pub q_stride: usize,
    pub h_stride: usize,
    pub variant: FirstGenVariant,
}

impl FirstGenParams {
    /// Unit strides, no solution limit.
    pub fn new(h_max: usize) -> Self {
        FirstGenParams {
            h_max,
            max_solutions: None,
            q_stride: 1,
            h_stride: 1,
            variant: FirstGenVariant::Basic,
        }
    }

    /// The commonly recommended `h* = max(1, n / 5)`.
    pub fn recommended(n: usize) -> Self {
        Self::new((n / 5).max(1))
    }

    pub fn with_max_solutions(mut self, max: usize) -> Self {
        self.max_solutions = Some(max);
        self
    }

    pub fn with_variant(mut self, variant: FirstGenVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_strides(mut self, h_stride: usize, q_stride: usize) -> Self {
        self.h_stride = h_stride;
        self.q_stride = q_stride;
        self
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.h_max == 0 || self.h_max >= n {
            return Err(Error::Parameter(format!(
                "h_max = {} must satisfy 1 <= h_max <= n - 1 = {}",
                self.h_max,
                n.saturating_sub(1)
            )));
        }
        if self.max_solutions == Some(0) {
            return Err(Error::Parameter("max_solutions must be at least 1".into()));
        }
        if self.q_stride == 0 || self.h_stride == 0 {
            return Err(Error::Parameter("strides must be at least 1".into()));
        }
        Ok(())
    }
}

/// 0-based positions flipped by the Type 1 solution for spacing `h` and
/// shift `q` (both 1-based): `q, q+h, q+2h, …` up to `n`.
pub fn type1_flips(n: usize, h: usize, q: usize) -> impl Iterator<Item = usize> {
    (q..=n).step_by(h).map(|p| p - 1)
}

/// 0-based positions flipped by the Type 1A solution: the pair `q, q+1` and
/// every pair `q+kh, q+1+kh` with `q+1+kh ≤ n`.
pub fn type1a_flips(n: usize, h: usize, q: usize) -> impl Iterator<Item = usize> {
    (q..n).step_by(h).flat_map(|p| [p - 1, p])
}

fn basic_pass(seed: &BinaryVector, params: &FirstGenParams, sink: &mut DistinctSink<BinaryVector>) {
    let n = seed.len();
    for h in (1..=params.h_max).step_by(params.h_stride) {
        let q_max = if h < 3 { 1 } else { h };
        for q in (1..=q_max).step_by(params.q_stride) {
            let x1 = seed.complement_over(type1_flips(n, h, q));
            let x2 = (h > 1).then(|| x1.complement());
            sink.push(x1);
            if let Some(x2) = x2 {
                sink.push(x2);
            }
            if sink.is_full() {
                return;
            }
        }
    }
}

fn augmented_pass(
    seed: &BinaryVector,
    params: &FirstGenParams,
    sink: &mut DistinctSink<BinaryVector>,
) {
    let n = seed.len();
    for h in (3..=params.h_max.min(n.saturating_sub(2))).step_by(params.h_stride) {
        for q in (1..=h).step_by(params.q_stride) {
            let x1 = seed.complement_over(type1a_flips(n, h, q));
            let x2 = x1.complement();
            sink.push(x1);
            sink.push(x2);
            if sink.is_full() {
                return;
            }
        }
    }
}

fn provenance(name: &str, seed: &BinaryVector, params: &FirstGenParams) -> Provenance {
    Provenance::new(name, serde_json::json!({ "seed": seed, "params": params }))
}

/// First diversification generator.
///
/// For `h = 1, 1 + h_stride, … ≤ h_max` and `q = 1, 1 + q_stride, … ≤ q*`
/// (`q* = 1` for `h < 3`, else `h`), emits the seed with positions
/// `q, q+h, q+2h, …` complemented, followed by its complement when `h > 1`.
/// With [`FirstGenVariant::Augmented1A`] the Type 1A pass of
/// [`first_generator_1a`] follows.
pub fn first_generator(
    seed: &BinaryVector,
    params: &FirstGenParams,
) -> Result<DiverseCollection<BinaryVector>> {
    params.validate(seed.len())?;
    let mut sink = DistinctSink::new(Some(seed.clone()), params.max_solutions);
    basic_pass(seed, params, &mut sink);
    if params.variant == FirstGenVariant::Augmented1A && !sink.is_full() {
        augmented_pass(seed, params, &mut sink);
    }
    Ok(sink.finish(provenance("first", seed, params)))
}

/// Type 1A / 2A solutions only: for `h = 3, … ≤ h_max` and `q = 1, … ≤ h`,
/// the seed with pairs `(q+kh, q+1+kh)` complemented, and its complement.
pub fn first_generator_1a(
    seed: &BinaryVector,
    params: &FirstGenParams,
) -> Result<DiverseCollection<BinaryVector>> {
    params.validate(seed.len())?;
    let n = seed.len();
    if params.h_max < 3 || params.h_max > n.saturating_sub(2) {
        return Err(Error::Parameter(format!(
            "paired flips need 3 <= h_max <= n - 2 (h_max = {}, n = {n})",
            params.h_max
        )));
    }
    let mut sink = DistinctSink::new(Some(seed.clone()), params.max_solutions);
    augmented_pass(seed, params, &mut sink);
    Ok(sink.finish(provenance("first1a", seed, params)))
}

/// Sequential max/min generator.
///
/// Emits the seed and its complement, then repeatedly halves every key
/// subset of the index set and emits the seed complemented over the union
/// of first halves and over the union of second halves, until every key
/// subset is a singleton. Halves are contiguous; for odd-sized subsets the
/// side receiving the larger half alternates, keeping the two unions
/// balanced. For `n = 2^k` this yields `2(1 + k)` solutions, each after the
/// first two at Hamming distance exactly `n / 2` from all predecessors.
pub fn sequential_generator(seed: &BinaryVector) -> DiverseCollection<BinaryVector> {
    let n = seed.len();
    let mut sink = DistinctSink::new(None, None);
    sink.push(seed.clone());
    sink.push(seed.complement());

    let mut key_subsets: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut larger_to_first = true;
    while key_subsets.iter().any(|s| s.len() > 1) {
        let mut first_union = Vec::with_capacity(n);
        let mut second_union = Vec::with_capacity(n);
        let mut next = Vec::with_capacity(key_subsets.len() * 2);
        for subset in &key_subsets {
            let big = subset.len().div_ceil(2);
            let (head, tail) = subset.split_at(big);
            let (first, second) = if subset.len() % 2 == 1 {
                let sides = if larger_to_first {
                    (head, tail)
                } else {
                    (tail, head)
                };
                larger_to_first = !larger_to_first;
                sides
            } else {
                (head, tail)
            };
            first_union.extend_from_slice(first);
            second_union.extend_from_slice(second);
            next.extend(
                [head.to_vec(), tail.to_vec()]
                    .into_iter()
                    .filter(|s| !s.is_empty()),
            );
        }
        sink.push(seed.complement_over(first_union));
        sink.push(seed.complement_over(second_union));
        key_subsets = next;
    }
    sink.finish(Provenance::new(
        "sequential",
        serde_json::json!({ "seed": seed }),
    ))
}
