//! Proximity objectives and closed-form projections onto structured
//! feasible sets.
//!
//! A generated point `x⁰` that violates the problem's constraints is
//! replaced by the feasible point closest to it under a proximity objective:
//! either the linear form `Σ f_j x_j` (maximized, `f_j > 0` where
//! `x⁰_j = 1`, `f_j < 0` where `x⁰_j = 0`) or the weighted distance
//! `Σ f_j |x_j − x⁰_j|` (minimized, `f_j > 0`). For partition-structured
//! 0-1 constraints the linear form is optimized by picking the largest
//! coefficients in each block; for boxes the distance is minimized by
//! clamping.
//!
//! Ties are always settled towards the lowest index.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::ensure_dim;
use crate::opposition::clamp_integral;
use crate::rng::RngSeed;
use crate::{BinaryVector, BoundedInterval, BoundedVector, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProximityForm {
    /// Maximize `Σ f_j x_j`.
    Linear,
    /// Minimize `Σ f_j |x_j − x⁰_j|`.
    WeightedL1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProximityObjective {
    coefficients: Vec<f64>,
    form: ProximityForm,
    anchor: Vec<f64>,
    /// Multiplicative jitter exponents applied to the coefficients, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    jitter: Option<Vec<f64>>,
}

impl ProximityObjective {
    /// Linear form anchored at a binary point. Coefficient signs must agree
    /// with the anchor bits.
    pub fn linear(anchor: &BinaryVector, coefficients: Vec<f64>) -> Result<Self> {
        ensure_dim(anchor.len(), coefficients.len())?;
        for (j, (&f, &b)) in coefficients.iter().zip(anchor.bits()).enumerate() {
            let ok = if b == 1 { f > 0.0 } else { f < 0.0 };
            if !ok || !f.is_finite() {
                return Err(Error::Parameter(format!(
                    "coefficient {} = {f} has the wrong sign for anchor bit {b}",
                    j + 1
                )));
            }
        }
        Ok(ProximityObjective {
            coefficients,
            form: ProximityForm::Linear,
            anchor: anchor.bits().iter().map(|&b| f64::from(b)).collect(),
            jitter: None,
        })
    }

    /// Weighted distance to `anchor`; all weights strictly positive.
    pub fn weighted_l1(anchor: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        ensure_dim(anchor.len(), weights.len())?;
        if let Some((j, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(**w > 0.0 && w.is_finite()))
        {
            return Err(Error::Parameter(format!(
                "weight {} = {w} must be positive",
                j + 1
            )));
        }
        if anchor.iter().any(|a| !a.is_finite()) {
            return Err(Error::Parameter("anchor must be finite".into()));
        }
        Ok(ProximityObjective {
            coefficients: weights,
            form: ProximityForm::WeightedL1,
            anchor,
            jitter: None,
        })
    }

    /// Unit-weight distance to `anchor`.
    pub fn unit_l1(anchor: Vec<f64>) -> Result<Self> {
        let n = anchor.len();
        Self::weighted_l1(anchor, vec![1.0; n])
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn form(&self) -> ProximityForm {
        self.form
    }

    pub fn anchor(&self) -> &[f64] {
        &self.anchor
    }

    pub fn jitter(&self) -> Option<&[f64]> {
        self.jitter.as_deref()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Same objective with every coefficient multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Parameter(format!("scale {c} must be positive")));
        }
        let mut out = self.clone();
        out.coefficients.iter_mut().for_each(|f| *f *= c);
        Ok(out)
    }

    fn require(&self, form: ProximityForm) -> Result<()> {
        if self.form == form {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "operation needs a {form:?} objective, got {:?}",
                self.form
            )))
        }
    }
}

/// Per-component count of recorded solutions that agreed with the anchor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMemory", into = "RawMemory")]
pub struct FrequencyMemory {
    counts: Vec<u64>,
    total: u64,
}

#[derive(Serialize, Deserialize)]
struct RawMemory {
    counts: Vec<u64>,
    total: u64,
}

impl TryFrom<RawMemory> for FrequencyMemory {
    type Error = Error;

    fn try_from(r: RawMemory) -> Result<Self> {
        FrequencyMemory::new(r.counts, r.total)
    }
}

impl From<FrequencyMemory> for RawMemory {
    fn from(m: FrequencyMemory) -> Self {
        RawMemory {
            counts: m.counts,
            total: m.total,
        }
    }
}

impl FrequencyMemory {
    pub fn new(counts: Vec<u64>, total: u64) -> Result<Self> {
        if let Some((j, c)) = counts.iter().enumerate().find(|(_, &c)| c > total) {
            return Err(Error::Parameter(format!(
                "count {} = {c} exceeds total {total}",
                j + 1
            )));
        }
        Ok(FrequencyMemory { counts, total })
    }

    pub fn empty(n: usize) -> Self {
        FrequencyMemory {
            counts: vec![0; n],
            total: 0,
        }
    }

    /// Counts the components where `x` agrees with `anchor`.
    pub fn record(&mut self, x: &BinaryVector, anchor: &BinaryVector) -> Result<()> {
        ensure_dim(self.counts.len(), x.len())?;
        ensure_dim(self.counts.len(), anchor.len())?;
        for (c, (a, b)) in self
            .counts
            .iter_mut()
            .zip(x.bits().iter().zip(anchor.bits()))
        {
            if a == b {
                *c += 1;
            }
        }
        self.total += 1;
        Ok(())
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoefficientMode<'a> {
    /// `f_j = ±1`.
    Unit,
    /// `f_j = σ_j (1 + β freq_j / total)`.
    Frequency {
        memory: &'a FrequencyMemory,
        beta: f64,
    },
}

/// Linear-form coefficients for anchor `x0`.
///
/// In frequency mode a seed adds a multiplicative jitter `exp(β u_j)` with
/// `u_j` uniform in `(−0.5, 0.5)`; the draws are kept on the objective. The
/// seed is ignored in unit mode.
pub fn build_coefficients(
    x0: &BinaryVector,
    mode: CoefficientMode<'_>,
    rng: Option<RngSeed>,
) -> Result<ProximityObjective> {
    let sign = |b: u8| if b == 1 { 1.0 } else { -1.0 };
    match mode {
        CoefficientMode::Unit => {
            let f = x0.bits().iter().map(|&b| sign(b)).collect();
            ProximityObjective::linear(x0, f)
        }
        CoefficientMode::Frequency { memory, beta } => {
            if !(beta >= 0.0 && beta.is_finite()) {
                return Err(Error::Parameter(format!("beta = {beta} must be >= 0")));
            }
            if memory.total == 0 {
                return Err(Error::Parameter(
                    "frequency memory has no recordings".into(),
                ));
            }
            ensure_dim(x0.len(), memory.counts.len())?;
            let total = memory.total as f64;
            let jitter: Option<Vec<f64>> = rng.map(|seed| {
                let mut r = seed.rng();
                (0..x0.len()).map(|_| r.gen_range(-0.5..0.5)).collect()
            });
            let f = x0
                .bits()
                .iter()
                .zip(&memory.counts)
                .enumerate()
                .map(|(j, (&b, &c))| {
                    let scale = jitter.as_ref().map_or(1.0, |u| (beta * u[j]).exp());
                    sign(b) * (1.0 + beta * c as f64 / total) * scale
                })
                .collect();
            let mut obj = ProximityObjective::linear(x0, f)?;
            obj.jitter = jitter;
            Ok(obj)
        }
    }
}

/// Objective value at `x`: `Σ f_j x_j` or `Σ f_j |x_j − x⁰_j|`.
pub fn evaluate_proximity(obj: &ProximityObjective, x: &[f64]) -> Result<f64> {
    ensure_dim(obj.len(), x.len())?;
    let terms = obj.coefficients.iter().zip(x).zip(&obj.anchor);
    Ok(match obj.form {
        ProximityForm::Linear => terms.map(|((f, xj), _)| f * xj).sum(),
        ProximityForm::WeightedL1 => terms.map(|((f, xj), a)| f * (xj - a).abs()).sum(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    /// One selected variable per block.
    #[serde(alias = "GUB", alias = "multiple_choice")]
    Gub,
    /// Exactly `m_i` selected variables per block, `0 < m_i < |N_i|`.
    #[serde(alias = "GeneralizedMultipleChoice")]
    GeneralizedMultipleChoice,
    /// A single block covering every variable.
    #[serde(alias = "Cardinality")]
    Cardinality,
    /// Per-component bounds only.
    #[serde(alias = "Box")]
    Box,
}

/// Partition-structured feasible region. Block members are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSystem {
    pub kind: ConstraintKind,
    #[serde(default)]
    pub blocks: Vec<Vec<usize>>,
    #[serde(default)]
    pub rhs: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<BoundedInterval>>,
}

impl ConstraintSystem {
    pub fn gub(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let rhs = vec![1; blocks.len()];
        Self::checked(ConstraintKind::Gub, blocks, rhs, None)
    }

    pub fn generalized_multiple_choice(blocks: Vec<Vec<usize>>, rhs: Vec<usize>) -> Result<Self> {
        Self::checked(ConstraintKind::GeneralizedMultipleChoice, blocks, rhs, None)
    }

    pub fn cardinality(n: usize, m: usize) -> Result<Self> {
        Self::checked(
            ConstraintKind::Cardinality,
            vec![(1..=n).collect()],
            vec![m],
            None,
        )
    }

    pub fn boxed(bounds: Vec<BoundedInterval>) -> Result<Self> {
        Self::checked(ConstraintKind::Box, Vec::new(), Vec::new(), Some(bounds))
    }

    fn checked(
        kind: ConstraintKind,
        blocks: Vec<Vec<usize>>,
        rhs: Vec<usize>,
        bounds: Option<Vec<BoundedInterval>>,
    ) -> Result<Self> {
        let cs = ConstraintSystem {
            kind,
            blocks,
            rhs,
            bounds,
        };
        cs.validate()?;
        Ok(cs)
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        match self.kind {
            ConstraintKind::Box => self.bounds.as_ref().map_or(0, Vec::len),
            _ => self.blocks.iter().map(Vec::len).sum(),
        }
    }

    /// Right-hand sides, with the implicit all-ones default for GUB.
    pub fn effective_rhs(&self) -> Vec<usize> {
        if self.kind == ConstraintKind::Gub && self.rhs.is_empty() {
            vec![1; self.blocks.len()]
        } else {
            self.rhs.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parameter(msg));
        if self.kind == ConstraintKind::Box {
            let Some(bounds) = &self.bounds else {
                return bad("box constraints need bounds".into());
            };
            if bounds.is_empty() {
                return bad("box constraints need at least one interval".into());
            }
            return Ok(());
        }
        let n = self.n();
        if self.blocks.is_empty() || n == 0 {
            return bad("no blocks".into());
        }
        let mut seen = vec![false; n];
        for (i, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return bad(format!("block {} is empty", i + 1));
            }
            for &j in block {
                if j == 0 || j > n {
                    return bad(format!("index {j} in block {} outside 1..={n}", i + 1));
                }
                if std::mem::replace(&mut seen[j - 1], true) {
                    return bad(format!("index {j} appears in more than one block"));
                }
            }
        }
        let rhs = self.effective_rhs();
        if rhs.len() != self.blocks.len() {
            return bad(format!(
                "{} right-hand sides for {} blocks",
                rhs.len(),
                self.blocks.len()
            ));
        }
        match self.kind {
            ConstraintKind::Gub => {
                if let Some(i) = rhs.iter().position(|&m| m != 1) {
                    return bad(format!(
                        "GUB block {} has rhs {} (must be 1)",
                        i + 1,
                        rhs[i]
                    ));
                }
            }
            ConstraintKind::GeneralizedMultipleChoice | ConstraintKind::Cardinality => {
                if self.kind == ConstraintKind::Cardinality && self.blocks.len() != 1 {
                    return bad("cardinality constraint must have a single block".into());
                }
                for (i, (&m, block)) in rhs.iter().zip(&self.blocks).enumerate() {
                    if m == 0 || m >= block.len() {
                        return bad(format!(
                            "block {} needs 0 < m < {} (m = {m})",
                            i + 1,
                            block.len()
                        ));
                    }
                }
            }
            ConstraintKind::Box => unreachable!(),
        }
        Ok(())
    }

    /// Whether a 0-1 vector satisfies every block equation.
    pub fn is_feasible(&self, x: &BinaryVector) -> bool {
        if self.kind == ConstraintKind::Box || x.len() != self.n() {
            return false;
        }
        self.blocks
            .iter()
            .zip(self.effective_rhs())
            .all(|(block, m)| block.iter().filter(|&&j| x.get(j - 1) == 1).count() == m)
    }
}

/// Sets the `m_i` largest-coefficient variables of each block to 1.
fn select_top(obj: &ProximityObjective, cs: &ConstraintSystem) -> Result<BinaryVector> {
    obj.require(ProximityForm::Linear)?;
    cs.validate()?;
    ensure_dim(cs.n(), obj.len())?;
    let f = obj.coefficients();
    let mut bits = vec![0u8; cs.n()];
    for (block, m) in cs.blocks.iter().zip(cs.effective_rhs()) {
        let mut order: Vec<usize> = block.iter().map(|&j| j - 1).collect();
        order.sort_by(|&a, &b| f[b].total_cmp(&f[a]).then(a.cmp(&b)));
        for &j in &order[..m] {
            bits[j] = 1;
        }
    }
    BinaryVector::new(bits)
}

fn require_kind(cs: &ConstraintSystem, kind: ConstraintKind) -> Result<()> {
    if cs.kind == kind {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "expected {kind:?} constraints, got {:?}",
            cs.kind
        )))
    }
}

/// Maximizes the linear objective over `Σ_{j∈N_i} x_j = 1`.
pub fn project_gub(obj: &ProximityObjective, cs: &ConstraintSystem) -> Result<BinaryVector> {
    require_kind(cs, ConstraintKind::Gub)?;
    select_top(obj, cs)
}

/// Maximizes the linear objective over `Σ_{j∈N_i} x_j = m_i`.
pub fn project_generalized_multichoice(
    obj: &ProximityObjective,
    cs: &ConstraintSystem,
) -> Result<BinaryVector> {
    require_kind(cs, ConstraintKind::GeneralizedMultipleChoice)?;
    select_top(obj, cs)
}

/// Maximizes the linear objective over `Σ_j x_j = m1`.
pub fn project_cardinality(obj: &ProximityObjective, m1: usize, n: usize) -> Result<BinaryVector> {
    let cs = ConstraintSystem::cardinality(n, m1)?;
    select_top(obj, &cs)
}

/// Dispatches on the constraint kind for the 0-1 systems.
pub fn project_binary(obj: &ProximityObjective, cs: &ConstraintSystem) -> Result<BinaryVector> {
    match cs.kind {
        ConstraintKind::Box => Err(Error::Parameter(
            "box constraints project bounded vectors; use project_box".into(),
        )),
        _ => select_top(obj, cs),
    }
}

/// Closest point of the box to `x0` under any positive weighted distance:
/// componentwise clamp, then the nearest feasible integer for integral
/// components.
pub fn project_box(
    x0: &[f64],
    bounds: &[BoundedInterval],
    integral: &[bool],
) -> Result<BoundedVector> {
    ensure_dim(bounds.len(), x0.len())?;
    ensure_dim(bounds.len(), integral.len())?;
    if x0.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("anchor must be finite".into()));
    }
    let values = x0
        .iter()
        .zip(bounds)
        .zip(integral)
        .map(|((&x, iv), &int)| {
            let c = x.clamp(iv.lower(), iv.upper());
            if int {
                clamp_integral(c.round(), iv)
            } else {
                c
            }
        })
        .collect();
    BoundedVector::new(values, bounds.to_vec(), integral.to_vec())
}
