//! Distances between solutions, collection diversity statistics and greedy
//! max-min subset extraction.

use serde::{Deserialize, Serialize};

use crate::collection::Provenance;
use crate::error::ensure_dim;
use crate::{DiverseCollection, Error, Result, Solution};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "metric")]
pub enum Metric {
    /// Number of positions where the two solutions differ.
    #[default]
    Hamming,
    /// `Σ w_j |a_j − b_j|`, unit weights when `weights` is `None`.
    WeightedL1 {
        weights: Option<Vec<f64>>,
    },
    Euclidean,
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Hamming => "hamming",
            Metric::WeightedL1 { .. } => "weighted_l1",
            Metric::Euclidean => "euclidean",
        }
    }
}

pub fn distance<T: Solution>(a: &T, b: &T, metric: &Metric) -> Result<f64> {
    let n = a.dim();
    ensure_dim(n, b.dim())?;
    let pairs = (0..n).map(|j| (a.component(j), b.component(j)));
    Ok(match metric {
        Metric::Hamming => pairs.filter(|(x, y)| x != y).count() as f64,
        Metric::WeightedL1 { weights: None } => pairs.map(|(x, y)| (x - y).abs()).sum(),
        Metric::WeightedL1 { weights: Some(w) } => {
            ensure_dim(n, w.len())?;
            pairs.zip(w).map(|((x, y), wj)| wj * (x - y).abs()).sum()
        }
        Metric::Euclidean => pairs.map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt(),
    })
}

/// Pairwise and seed-relative spread of a collection. Statistics with no
/// pairs to average over are `+∞`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiversityReport {
    pub member_count: usize,
    pub min_pairwise: f64,
    pub mean_pairwise: f64,
    pub min_to_seed: f64,
    pub metric: String,
}

impl DiversityReport {
    pub const CSV_HEADER: [&'static str; 5] = [
        "member_count",
        "min_pairwise",
        "mean_pairwise",
        "min_to_seed",
        "metric",
    ];

    pub fn csv_fields(&self) -> [String; 5] {
        [
            self.member_count.to_string(),
            self.min_pairwise.to_string(),
            self.mean_pairwise.to_string(),
            self.min_to_seed.to_string(),
            self.metric.clone(),
        ]
    }
}

pub fn report<T: Solution>(
    collection: &DiverseCollection<T>,
    seed: &T,
    metric: &Metric,
) -> Result<DiversityReport> {
    let members = collection.members();
    if members.is_empty() {
        return Err(Error::Domain(
            "diversity report of an empty collection".into(),
        ));
    }
    let mut min_pairwise = f64::INFINITY;
    let mut sum = 0.0;
    let mut pairs = 0usize;
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            let d = distance(a, b, metric)?;
            min_pairwise = min_pairwise.min(d);
            sum += d;
            pairs += 1;
        }
    }
    let mean_pairwise = if pairs == 0 {
        f64::INFINITY
    } else {
        sum / pairs as f64
    };
    let mut min_to_seed = f64::INFINITY;
    for m in members.iter().filter(|m| *m != seed) {
        min_to_seed = min_to_seed.min(distance(m, seed, metric)?);
    }
    Ok(DiversityReport {
        member_count: members.len(),
        min_pairwise,
        mean_pairwise,
        min_to_seed,
        metric: metric.name().to_string(),
    })
}

/// Greedy max-min selection of `k` members.
///
/// Starts from `start` (which must be a population member; default the first
/// member) and repeatedly adds the member whose minimum distance to the
/// members already chosen is largest, ties going to the lowest population
/// index. The result is in selection order.
pub fn extract_diverse_subset<T: Solution>(
    population: &DiverseCollection<T>,
    k: usize,
    start: Option<&T>,
    metric: &Metric,
) -> Result<DiverseCollection<T>> {
    let members = population.members();
    if k == 0 || k > members.len() {
        return Err(Error::Parameter(format!(
            "k = {k} outside 1..={}",
            members.len()
        )));
    }
    let first = match start {
        None => 0,
        Some(s) => members
            .iter()
            .position(|m| m == s)
            .ok_or_else(|| Error::Parameter("start solution is not in the population".into()))?,
    };

    let mut chosen = vec![first];
    let mut taken = vec![false; members.len()];
    taken[first] = true;
    let mut nearest: Vec<f64> = members
        .iter()
        .map(|m| distance(m, &members[first], metric))
        .collect::<Result<_>>()?;
    while chosen.len() < k {
        let mut best: Option<usize> = None;
        for i in 0..members.len() {
            if !taken[i] && best.is_none_or(|b| nearest[i] > nearest[b]) {
                best = Some(i);
            }
        }
        let next = best.expect("k <= population size");
        taken[next] = true;
        chosen.push(next);
        for i in 0..members.len() {
            if !taken[i] {
                nearest[i] = nearest[i].min(distance(&members[i], &members[next], metric)?);
            }
        }
    }

    let provenance = Provenance::new(
        "extract",
        serde_json::json!({
            "k": k,
            "start_index": first + 1,
            "metric": metric,
            "selected": chosen.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "population": population.provenance(),
        }),
    );
    DiverseCollection::new(
        chosen.into_iter().map(|i| members[i].clone()).collect(),
        provenance,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{BinaryVector, BoundedInterval, BoundedVector, Permutation};

    fn bv(bits: &[u8]) -> BinaryVector {
        BinaryVector::new(bits.to_vec()).unwrap()
    }

    fn coll<T: Solution>(members: Vec<T>) -> DiverseCollection<T> {
        DiverseCollection::new(members, Provenance::new("test", ())).unwrap()
    }

    fn cube3() -> DiverseCollection<BinaryVector> {
        coll(
            (0u8..8)
                .map(|v| bv(&[(v >> 2) & 1, (v >> 1) & 1, v & 1]))
                .collect(),
        )
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(
            distance(&bv(&[0, 1, 1]), &bv(&[1, 1, 0]), &Metric::Hamming).unwrap(),
            2.0
        );
        let a = bv(&[1, 0, 1, 1]);
        for m in [
            Metric::Hamming,
            Metric::Euclidean,
            Metric::WeightedL1 { weights: None },
        ] {
            assert_eq!(distance(&a, &a, &m).unwrap(), 0.0);
        }
        assert!(distance(&a, &bv(&[1]), &Metric::Hamming).is_err());
    }

    #[test]
    fn permutation_p5_distance_to_identity() {
        // 4 and 8 stay in place; every other position differs
        let p5 = Permutation::new(vec![
            5, 10, 15, 4, 9, 14, 3, 8, 13, 18, 2, 7, 12, 17, 1, 6, 11, 16,
        ])
        .unwrap();
        let id = Permutation::identity(18).unwrap();
        let fixed = p5
            .order()
            .iter()
            .enumerate()
            .filter(|(i, &v)| v == i + 1)
            .count();
        assert_eq!(fixed, 2);
        assert_eq!(distance(&p5, &id, &Metric::Hamming).unwrap(), 16.0);
    }

    #[test]
    fn bounded_metrics() {
        let iv = BoundedInterval::new(0.0, 10.0).unwrap();
        let a = BoundedVector::continuous(vec![2.0, 5.0], vec![iv; 2]).unwrap();
        let b = BoundedVector::continuous(vec![1.0, 9.0], vec![iv; 2]).unwrap();
        assert_eq!(
            distance(&a, &b, &Metric::WeightedL1 { weights: None }).unwrap(),
            5.0
        );
        let w = Metric::WeightedL1 {
            weights: Some(vec![2.0, 0.5]),
        };
        assert_eq!(distance(&a, &b, &w).unwrap(), 4.0);
        assert!((distance(&a, &b, &Metric::Euclidean).unwrap() - 17f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn report_examples() {
        let x = bv(&[1, 0, 0, 1, 1]);
        let r = report(&coll(vec![x.clone(), x.complement()]), &x, &Metric::Hamming).unwrap();
        assert_eq!(r.min_pairwise, 5.0);
        assert_eq!(r.min_to_seed, 5.0);

        let single = report(&coll(vec![x.clone()]), &x, &Metric::Hamming).unwrap();
        assert_eq!(single.min_pairwise, f64::INFINITY);
        assert_eq!(single.min_to_seed, f64::INFINITY);
        assert_eq!(single.member_count, 1);

        let empty: DiverseCollection<BinaryVector> = coll(vec![]);
        assert!(matches!(
            report(&empty, &x, &Metric::Hamming),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn greedy_cube() {
        let pop = cube3();
        let zero = bv(&[0, 0, 0]);
        let two = extract_diverse_subset(&pop, 2, Some(&zero), &Metric::Hamming).unwrap();
        assert_eq!(two.members(), &[zero.clone(), bv(&[1, 1, 1])]);
        let three = extract_diverse_subset(&pop, 3, Some(&zero), &Metric::Hamming).unwrap();
        assert_eq!(three.members()[2], bv(&[0, 0, 1]));
        let all = extract_diverse_subset(&pop, 8, None, &Metric::Hamming).unwrap();
        assert_eq!(all.len(), 8);
        for m in pop.iter() {
            assert!(all.members().contains(m));
        }
    }

    #[test]
    fn greedy_errors() {
        let pop = cube3();
        assert!(extract_diverse_subset(&pop, 0, None, &Metric::Hamming).is_err());
        assert!(extract_diverse_subset(&pop, 9, None, &Metric::Hamming).is_err());
        let stranger = bv(&[1, 1, 1, 1]);
        assert!(extract_diverse_subset(&pop, 2, Some(&stranger), &Metric::Hamming).is_err());
    }
}
