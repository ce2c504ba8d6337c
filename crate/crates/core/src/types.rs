//! Solution representations shared by every generator.
//!
//! Components are stored 0-based. Everything that crosses an external
//! boundary (reports, files, permutation labels) is 1-based.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::validate::{self, ValidationReport};
use crate::{Error, Result};

/// Common view over the three solution spaces.
pub trait Solution: Clone + PartialEq + Serialize + DeserializeOwned {
    /// Short name used in provenance records and file headers.
    const KIND: &'static str;

    fn dim(&self) -> usize;

    /// Component `j` (0-based) as a real number.
    fn component(&self, j: usize) -> f64;

    fn validate(&self) -> ValidationReport;

    /// Components rendered for a CSV row.
    fn fields(&self) -> Vec<String> {
        (0..self.dim())
            .map(|j| self.component(j).to_string())
            .collect()
    }
}

/// A 0/1 vector of length n ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct BinaryVector(Vec<u8>);

impl BinaryVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        validate::check_binary(&bits).into_result()?;
        Ok(Self(bits))
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Result<Self> {
        Self::new(bits.into_iter().map(u8::from).collect())
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> u8 {
        self.0[j]
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|&b| 1 - b).collect())
    }

    /// Complements the components at the given 0-based positions and copies
    /// the rest.
    pub fn complement_over(&self, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = self.0.clone();
        for j in positions {
            bits[j] ^= 1;
        }
        Self(bits)
    }

    pub fn hamming(&self, other: &Self) -> Result<usize> {
        crate::error::ensure_dim(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }
}

impl TryFrom<Vec<u8>> for BinaryVector {
    type Error = Error;

    fn try_from(bits: Vec<u8>) -> Result<Self> {
        Self::new(bits)
    }
}

impl From<BinaryVector> for Vec<u8> {
    fn from(v: BinaryVector) -> Self {
        v.0
    }
}

impl Solution for BinaryVector {
    const KIND: &'static str = "binary";

    fn dim(&self) -> usize {
        self.0.len()
    }

    fn component(&self, j: usize) -> f64 {
        f64::from(self.0[j])
    }

    fn validate(&self) -> ValidationReport {
        validate::check_binary(&self.0)
    }
}

/// Closed interval `[L, U]` with contraction parameters for the shrunken
/// interval `[L°, U°]`, `L° = L + λ_L (U − L)` and `U° = U − λ_U (U − L)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct BoundedInterval {
    lower: f64,
    upper: f64,
    lambda_lower: f64,
    lambda_upper: f64,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    lower: f64,
    upper: f64,
    #[serde(default)]
    lambda_lower: f64,
    #[serde(default)]
    lambda_upper: f64,
}

impl TryFrom<RawInterval> for BoundedInterval {
    type Error = Error;

    fn try_from(r: RawInterval) -> Result<Self> {
        Self::with_lambdas(r.lower, r.upper, r.lambda_lower, r.lambda_upper)
    }
}

impl From<BoundedInterval> for RawInterval {
    fn from(iv: BoundedInterval) -> Self {
        RawInterval {
            lower: iv.lower,
            upper: iv.upper,
            lambda_lower: iv.lambda_lower,
            lambda_upper: iv.lambda_upper,
        }
    }
}

impl BoundedInterval {
    /// Interval with no contraction (`L° = L`, `U° = U`).
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        Self::with_lambdas(lower, upper, 0.0, 0.0)
    }

    pub fn with_lambdas(
        lower: f64,
        upper: f64,
        lambda_lower: f64,
        lambda_upper: f64,
    ) -> Result<Self> {
        let iv = Self {
            lower,
            upper,
            lambda_lower,
            lambda_upper,
        };
        let report = validate::check_interval(&iv);
        if report.passed() {
            Ok(iv)
        } else if report
            .violations
            .iter()
            .all(|v| matches!(v.kind, validate::ViolationKind::LambdaOutOfRange { .. }))
        {
            Err(Error::Parameter(format!(
                "contraction parameters ({lambda_lower}, {lambda_upper}) must lie in [0, 0.5)"
            )))
        } else {
            Err(Error::Invalid(report))
        }
    }

    /// Same bounds, different contraction.
    pub fn relambda(&self, lambda_lower: f64, lambda_upper: f64) -> Result<Self> {
        Self::with_lambdas(self.lower, self.upper, lambda_lower, lambda_upper)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn lambda_lower(&self) -> f64 {
        self.lambda_lower
    }

    pub fn lambda_upper(&self) -> f64 {
        self.lambda_upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        (self.lower + self.upper) / 2.0
    }

    /// `(L°, U°)`. Always satisfies `L ≤ L° ≤ U° ≤ U`.
    pub fn contracted(&self) -> (f64, f64) {
        let w = self.width();
        let lo = (self.lower + self.lambda_lower * w).clamp(self.lower, self.upper);
        let hi = (self.upper - self.lambda_upper * w).clamp(lo, self.upper);
        (lo, hi)
    }

    /// `(L° + U°) / 2`.
    pub fn contracted_midpoint(&self) -> f64 {
        let (lo, hi) = self.contracted();
        (lo + hi) / 2.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Real or integer vector with per-component bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBounded", into = "RawBounded")]
pub struct BoundedVector {
    values: Vec<f64>,
    intervals: Vec<BoundedInterval>,
    integral: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct RawBounded {
    values: Vec<f64>,
    intervals: Vec<BoundedInterval>,
    #[serde(default)]
    integral: Option<Vec<bool>>,
}

impl TryFrom<RawBounded> for BoundedVector {
    type Error = Error;

    fn try_from(r: RawBounded) -> Result<Self> {
        let integral = r.integral.unwrap_or_else(|| vec![false; r.values.len()]);
        Self::new(r.values, r.intervals, integral)
    }
}

impl From<BoundedVector> for RawBounded {
    fn from(v: BoundedVector) -> Self {
        RawBounded {
            values: v.values,
            intervals: v.intervals,
            integral: Some(v.integral),
        }
    }
}

impl BoundedVector {
    pub fn new(
        values: Vec<f64>,
        intervals: Vec<BoundedInterval>,
        integral: Vec<bool>,
    ) -> Result<Self> {
        validate::check_bounded(&values, &intervals, &integral).into_result()?;
        Ok(Self {
            values,
            intervals,
            integral,
        })
    }

    /// All components continuous.
    pub fn continuous(values: Vec<f64>, intervals: Vec<BoundedInterval>) -> Result<Self> {
        let integral = vec![false; values.len()];
        Self::new(values, intervals, integral)
    }

    /// Replaces the values, keeping bounds and integrality.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(values, self.intervals.clone(), self.integral.clone())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn intervals(&self) -> &[BoundedInterval] {
        &self.intervals
    }

    pub fn integral(&self) -> &[bool] {
        &self.integral
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl Solution for BoundedVector {
    const KIND: &'static str = "bounded";

    fn dim(&self) -> usize {
        self.values.len()
    }

    fn component(&self, j: usize) -> f64 {
        self.values[j]
    }

    fn validate(&self) -> ValidationReport {
        validate::check_bounded(&self.values, &self.intervals, &self.integral)
    }
}

/// An arrangement of the labels `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        validate::check_permutation(&order).into_result()?;
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect())
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// 0-based position of each label: `positions()[label - 1]`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &label) in self.0.iter().enumerate() {
            pos[label - 1] = i;
        }
        pos
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(order: Vec<usize>) -> Result<Self> {
        Self::new(order)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl Solution for Permutation {
    const KIND: &'static str = "permutation";

    fn dim(&self) -> usize {
        self.0.len()
    }

    fn component(&self, j: usize) -> f64 {
        self.0[j] as f64
    }

    fn validate(&self) -> ValidationReport {
        validate::check_permutation(&self.0)
    }
}
