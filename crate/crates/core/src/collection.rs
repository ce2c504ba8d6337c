use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::rng::{RngSeed, RNG_ALGORITHM};
use crate::types::Solution;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngRecord {
    pub algorithm: String,
    pub seed: RngSeed,
}

impl From<RngSeed> for RngRecord {
    fn from(seed: RngSeed) -> Self {
        RngRecord {
            algorithm: RNG_ALGORITHM.to_string(),
            seed,
        }
    }
}

/// Everything needed to regenerate a collection: the generator, its full
/// parameter record and the seed of any random draws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng: Option<RngRecord>,
}

impl Provenance {
    pub fn new(generator: impl Into<String>, params: impl Serialize) -> Self {
        Provenance {
            generator: generator.into(),
            params: serde_json::to_value(params).unwrap_or(Value::Null),
            rng: None,
        }
    }

    pub fn with_rng(mut self, seed: RngSeed) -> Self {
        self.rng = Some(seed.into());
        self
    }
}

/// Ordered, homogeneous set of generated solutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Solution")]
pub struct DiverseCollection<T> {
    provenance: Provenance,
    members: Vec<T>,
}

impl<T: Solution> DiverseCollection<T> {
    /// Fails when members disagree on dimension.
    pub fn new(members: Vec<T>, provenance: Provenance) -> Result<Self> {
        if let Some(first) = members.first() {
            let n = first.dim();
            if let Some(bad) = members.iter().find(|m| m.dim() != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: bad.dim(),
                });
            }
        }
        Ok(Self {
            provenance,
            members,
        })
    }

    pub(crate) fn from_parts_unchecked(members: Vec<T>, provenance: Provenance) -> Self {
        Self {
            provenance,
            members,
        }
    }

    pub fn members(&self) -> &[T] {
        &self.members
    }

    pub fn into_members(self) -> Vec<T> {
        self.members
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Shared dimension, `None` for an empty collection.
    pub fn dim(&self) -> Option<usize> {
        self.members.first().map(Solution::dim)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.members.iter()
    }
}

impl<'a, T> IntoIterator for &'a DiverseCollection<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Collects members while dropping exact repeats and an optional excluded
/// solution (typically the seed). Stops accepting once `limit` is reached.
pub(crate) struct DistinctSink<T> {
    members: Vec<T>,
    excluded: Option<T>,
    limit: usize,
}

impl<T: Solution> DistinctSink<T> {
    pub(crate) fn new(excluded: Option<T>, limit: Option<usize>) -> Self {
        DistinctSink {
            members: Vec::new(),
            excluded,
            limit: limit.unwrap_or(usize::MAX),
        }
    }

    pub(crate) fn is_full(&self) -> bool {
        self.members.len() >= self.limit
    }

    pub(crate) fn push(&mut self, candidate: T) {
        if self.is_full() || self.excluded.as_ref() == Some(&candidate) {
            return;
        }
        if !self.members.contains(&candidate) {
            self.members.push(candidate);
        }
    }

    pub(crate) fn finish(self, provenance: Provenance) -> DiverseCollection<T> {
        DiverseCollection::from_parts_unchecked(self.members, provenance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::BinaryVector;

    #[test]
    fn rejects_mixed_dimensions() {
        let a = BinaryVector::zeros(3).unwrap();
        let b = BinaryVector::zeros(4).unwrap();
        let r = DiverseCollection::new(vec![a, b], Provenance::new("test", ()));
        assert!(matches!(
            r,
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 4
            })
        ));
    }

    #[test]
    fn sink_dedups_and_limits() {
        let z = BinaryVector::zeros(2).unwrap();
        let o = BinaryVector::ones(2).unwrap();
        let mut sink = DistinctSink::new(Some(z.clone()), Some(2));
        sink.push(z.clone());
        sink.push(o.clone());
        sink.push(o.clone());
        assert!(!sink.is_full());
        sink.push(BinaryVector::new(vec![1, 0]).unwrap());
        sink.push(BinaryVector::new(vec![0, 1]).unwrap());
        let c = sink.finish(Provenance::new("test", ()));
        assert_eq!(c.len(), 2);
        assert_eq!(c.members()[0], o);
    }

    #[test]
    fn json_round_trip() {
        let c = DiverseCollection::new(
            vec![BinaryVector::new(vec![0, 1]).unwrap()],
            Provenance::new("test", serde_json::json!({"h": 1})).with_rng(RngSeed(9)),
        )
        .unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: DiverseCollection<BinaryVector> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
