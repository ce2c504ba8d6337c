//! Opposite points: the classical reflection `U + L − x'`, the contracted
//! farthest-point rule, and the max-min rule relative to a collection.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::rng::RngSeed;
use crate::types::{BoundedInterval, BoundedVector};
use crate::{Error, Result};

pub const DEFAULT_LAMBDA_LOWER: f64 = 0.2;
pub const DEFAULT_LAMBDA_UPPER: f64 = 0.3;

/// Reflection through the interval midpoint.
pub fn obl_opposite(x: f64, interval: &BoundedInterval) -> Result<f64> {
    if !interval.contains(x) {
        return Err(Error::Domain(format!(
            "x' = {x} outside [{}, {}]",
            interval.lower(),
            interval.upper()
        )));
    }
    Ok(interval.upper() + interval.lower() - x)
}

/// `(L°, U°)` for the interval's contraction parameters.
pub fn dbl_bounds(interval: &BoundedInterval) -> (f64, f64) {
    interval.contracted()
}

/// Which contracted bound an exact midpoint maps to.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MidpointTie {
    #[default]
    Upper,
    Lower,
}

/// Farthest point from `x` in `[L°, U°]`. Integral components are rounded to
/// the nearest integer, with half-way values rounded away from `x`.
///
/// `x` may lie anywhere on the real line; values beyond `U°` map to `L°`
/// and values below `L°` map to `U°`.
pub fn dbl_opposite(
    x: f64,
    interval: &BoundedInterval,
    integral: bool,
    tie: MidpointTie,
) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("x' = {x} is not finite")));
    }
    let (lo, hi) = interval.contracted();
    let mid = (lo + hi) / 2.0;
    let raw = if x > mid {
        lo
    } else if x < mid {
        hi
    } else {
        match tie {
            MidpointTie::Upper => hi,
            MidpointTie::Lower => lo,
        }
    };
    Ok(if integral {
        round_away_from(raw, x, interval)
    } else {
        raw
    })
}

/// Nearest integer to `raw`; exact halves go to the side farther from
/// `anchor`. Result is kept inside the interval.
pub(crate) fn round_away_from(raw: f64, anchor: f64, interval: &BoundedInterval) -> f64 {
    let down = raw.floor();
    let up = raw.ceil();
    let tie = raw - down == up - raw;
    let rounded = if raw - down < up - raw || (tie && (down - anchor).abs() > (up - anchor).abs()) {
        down
    } else {
        up
    };
    clamp_integral(rounded, interval)
}

pub(crate) fn clamp_integral(x: f64, interval: &BoundedInterval) -> f64 {
    x.clamp(interval.lower().ceil(), interval.upper().floor())
}

/// How contraction parameters are chosen per component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "policy")]
pub enum LambdaPolicy {
    /// The same `(λ_L, λ_U)` for every component.
    Fixed { lower: f64, upper: f64 },
    /// Independent uniform draws per component from the given ranges.
    PerComponentRandom {
        lower_range: (f64, f64),
        upper_range: (f64, f64),
        seed: RngSeed,
    },
}

impl Default for LambdaPolicy {
    fn default() -> Self {
        LambdaPolicy::Fixed {
            lower: DEFAULT_LAMBDA_LOWER,
            upper: DEFAULT_LAMBDA_UPPER,
        }
    }
}

fn check_range((a, b): (f64, f64)) -> Result<()> {
    if 0.0 <= a && a <= b && b < 0.5 {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "sampling interval [{a}, {b}] is not inside [0, 0.5)"
        )))
    }
}

impl LambdaPolicy {
    /// Same interval for both parameters.
    pub fn random(range: (f64, f64), seed: RngSeed) -> Self {
        LambdaPolicy::PerComponentRandom {
            lower_range: range,
            upper_range: range,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            LambdaPolicy::Fixed { lower, upper } => {
                check_range((lower, lower))?;
                check_range((upper, upper))
            }
            LambdaPolicy::PerComponentRandom {
                lower_range,
                upper_range,
                ..
            } => {
                check_range(lower_range)?;
                check_range(upper_range)
            }
        }
    }

    /// `(λ_L, λ_U)` for each of `n` components. Random draws alternate
    /// `λ_L`, `λ_U` per component in index order.
    pub fn resolve(&self, n: usize) -> Result<Vec<(f64, f64)>> {
        self.validate()?;
        Ok(match *self {
            LambdaPolicy::Fixed { lower, upper } => vec![(lower, upper); n],
            LambdaPolicy::PerComponentRandom {
                lower_range,
                upper_range,
                seed,
            } => {
                let mut rng = seed.rng();
                (0..n)
                    .map(|_| {
                        let l = rng.gen_range(lower_range.0..=lower_range.1);
                        let u = rng.gen_range(upper_range.0..=upper_range.1);
                        (l, u)
                    })
                    .collect()
            }
        })
    }

    /// Applies the resolved parameters to `intervals`.
    pub fn apply(&self, intervals: &[BoundedInterval]) -> Result<Vec<BoundedInterval>> {
        self.resolve(intervals.len())?
            .into_iter()
            .zip(intervals)
            .map(|((l, u), iv)| iv.relambda(l, u))
            .collect()
    }

    pub fn seed(&self) -> Option<RngSeed> {
        match *self {
            LambdaPolicy::Fixed { .. } => None,
            LambdaPolicy::PerComponentRandom { seed, .. } => Some(seed),
        }
    }
}

/// Vector-level midpoint handling; `Random` settles each tie with a coin flip
/// from the given seed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "tie")]
pub enum TiePolicy {
    #[default]
    Upper,
    Lower,
    Random {
        seed: RngSeed,
    },
}

/// Componentwise [`dbl_opposite`]. The returned vector's intervals carry the
/// contraction parameters actually used.
pub fn dbl_opposite_vector(
    x: &BoundedVector,
    lambda: &LambdaPolicy,
    tie: TiePolicy,
) -> Result<BoundedVector> {
    let intervals = lambda.apply(x.intervals())?;
    let mut coin = match tie {
        TiePolicy::Random { seed } => Some(seed.rng()),
        _ => None,
    };
    let values = x
        .values()
        .iter()
        .zip(&intervals)
        .zip(x.integral())
        .map(|((&xj, iv), &int)| {
            let side = match (&mut coin, tie) {
                (Some(rng), _) if xj == iv.contracted_midpoint() => {
                    if rng.gen_bool(0.5) {
                        MidpointTie::Upper
                    } else {
                        MidpointTie::Lower
                    }
                }
                (_, TiePolicy::Lower) => MidpointTie::Lower,
                _ => MidpointTie::Upper,
            };
            dbl_opposite(xj, iv, int, side)
        })
        .collect::<Result<Vec<f64>>>()?;
    BoundedVector::new(values, intervals, x.integral().to_vec())
}

/// One component's values across a collection, sorted, with sentinels
/// `x^0` and `x^{r+1}` at either end.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedColumn {
    values: Vec<f64>,
    lower: f64,
    upper: f64,
}

impl SortedColumn {
    pub fn new(mut values: Vec<f64>, lower: f64, upper: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain(
                "max-min opposite of an empty collection".into(),
            ));
        }
        if values
            .iter()
            .chain([&lower, &upper])
            .any(|v| !v.is_finite())
        {
            return Err(Error::Domain("non-finite column value".into()));
        }
        if lower > upper {
            return Err(Error::Parameter(format!(
                "sentinels out of order: {lower} > {upper}"
            )));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self {
            values,
            lower,
            upper,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sentinels(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    /// Distance from `x` to the nearest column value.
    pub fn min_distance(&self, x: f64) -> f64 {
        self.values
            .iter()
            .map(|v| (x - v).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// `x^0, x^1, ..., x^r, x^{r+1}`.
    fn extended(&self) -> impl Iterator<Item = f64> + '_ {
        std::iter::once(self.lower)
            .chain(self.values.iter().copied())
            .chain(std::iter::once(self.upper))
    }
}

/// Point between the sentinels farthest from every column value: a
/// sentinel when an end gap wins, otherwise the midpoint of the winning
/// interior gap.
///
/// An end gap `x^1 − x^0` keeps its full width as clearance while an
/// interior gap only offers half, so gaps are compared by the clearance
/// they give. Equal clearances resolve to the lowest gap index.
pub fn maxmin_opposite_component(column: &SortedColumn) -> f64 {
    let points: Vec<f64> = column.extended().collect();
    let r = column.values.len();
    let mut best_h = 1;
    let mut best_clearance = f64::NEG_INFINITY;
    for h in 1..=r + 1 {
        let gap = points[h] - points[h - 1];
        let clearance = if h == 1 || h == r + 1 { gap } else { gap / 2.0 };
        if clearance > best_clearance {
            best_clearance = clearance;
            best_h = h;
        }
    }
    if best_h == 1 {
        points[0]
    } else if best_h == r + 1 {
        points[r + 1]
    } else {
        (points[best_h] + points[best_h - 1]) / 2.0
    }
}

/// End points used as `x^0` / `x^{r+1}` by [`maxmin_opposite`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sentinels {
    /// `L_j` and `U_j`.
    #[default]
    Bounds,
    /// `L°_j` and `U°_j`.
    Contracted,
}

/// Componentwise max-min opposite of a collection of bounded vectors.
///
/// Integral components take the nearest integer to the continuous result;
/// half-way values go to whichever neighbour is farther from the column.
pub fn maxmin_opposite(
    members: &[BoundedVector],
    bounds: &[BoundedInterval],
    sentinels: Sentinels,
) -> Result<BoundedVector> {
    let first = members
        .first()
        .ok_or_else(|| Error::Domain("max-min opposite of an empty collection".into()))?;
    let n = bounds.len();
    for m in members {
        crate::error::ensure_dim(n, m.len())?;
        for (j, (&x, iv)) in m.values().iter().zip(bounds).enumerate() {
            if !iv.contains(x) {
                return Err(Error::Domain(format!(
                    "component {}: {x} outside [{}, {}]",
                    j + 1,
                    iv.lower(),
                    iv.upper()
                )));
            }
        }
    }
    let integral = first.integral().to_vec();
    let mut values = Vec::with_capacity(n);
    for (j, iv) in bounds.iter().enumerate() {
        let (lo, hi) = match sentinels {
            Sentinels::Bounds => (iv.lower(), iv.upper()),
            Sentinels::Contracted => iv.contracted(),
        };
        let column = SortedColumn::new(members.iter().map(|m| m.values()[j]).collect(), lo, hi)?;
        let x = maxmin_opposite_component(&column);
        values.push(if integral[j] {
            round_farthest(x, &column, iv)
        } else {
            x
        });
    }
    BoundedVector::new(values, bounds.to_vec(), integral)
}

fn round_farthest(x: f64, column: &SortedColumn, interval: &BoundedInterval) -> f64 {
    let down = clamp_integral(x.floor(), interval);
    let up = clamp_integral(x.ceil(), interval);
    let (dd, du) = ((x - down).abs(), (up - x).abs());
    if dd < du {
        down
    } else if du < dd {
        up
    } else if column.min_distance(down) > column.min_distance(up) {
        down
    } else {
        up
    }
}
