//! Report-style invariant checks for raw solution data.
//!
//! The checked constructors in [`crate::types`] run these same checks, so a
//! value that exists as a typed solution always produces a passing report.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::types::BoundedInterval;

/// One violated invariant. `index` is the 1-based component it concerns, when
/// the violation is local to a component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub index: Option<usize>,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ViolationKind {
    Empty,
    NotBinary {
        value: u8,
    },
    LengthMismatch {
        values: usize,
        intervals: usize,
        integral: usize,
    },
    NonFinite,
    InvertedInterval {
        lower: f64,
        upper: f64,
    },
    LambdaOutOfRange {
        lambda: f64,
    },
    BelowLower {
        value: f64,
        lower: f64,
    },
    AboveUpper {
        value: f64,
        upper: f64,
    },
    NotIntegral {
        value: f64,
    },
    LabelOutOfRange {
        label: usize,
        n: usize,
    },
    DuplicateLabel {
        label: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(j) = self.index {
            write!(f, "component {j}: ")?;
        }
        match &self.kind {
            ViolationKind::Empty => write!(f, "empty solution"),
            ViolationKind::NotBinary { value } => write!(f, "value {value} is not 0 or 1"),
            ViolationKind::LengthMismatch {
                values,
                intervals,
                integral,
            } => write!(
                f,
                "length mismatch: {values} values, {intervals} intervals, {integral} integrality flags"
            ),
            ViolationKind::NonFinite => write!(f, "non-finite value"),
            ViolationKind::InvertedInterval { lower, upper } => {
                write!(f, "lower bound {lower} exceeds upper bound {upper}")
            }
            ViolationKind::LambdaOutOfRange { lambda } => {
                write!(f, "contraction {lambda} outside [0, 0.5)")
            }
            ViolationKind::BelowLower { value, lower } => {
                write!(f, "x = {value} < L = {lower}")
            }
            ViolationKind::AboveUpper { value, upper } => {
                write!(f, "x = {value} > U = {upper}")
            }
            ViolationKind::NotIntegral { value } => write!(f, "{value} is not an integer"),
            ViolationKind::LabelOutOfRange { label, n } => {
                write!(f, "label {label} outside 1..={n}; not a bijection")
            }
            ViolationKind::DuplicateLabel { label } => {
                write!(f, "label {label} repeated; not a bijection")
            }
        }
    }
}

/// Outcome of a validation pass. Empty `violations` means the input passed.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, index: Option<usize>, kind: ViolationKind) {
        self.violations.push(Violation { index, kind });
    }

    pub(crate) fn into_result(self) -> crate::Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(crate::Error::Invalid(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn check_binary(bits: &[u8]) -> ValidationReport {
    let mut report = ValidationReport::default();
    if bits.is_empty() {
        report.push(None, ViolationKind::Empty);
    }
    for (j, &b) in bits.iter().enumerate() {
        if b > 1 {
            report.push(Some(j + 1), ViolationKind::NotBinary { value: b });
        }
    }
    report
}

pub(crate) fn check_interval_into(
    report: &mut ValidationReport,
    index: Option<usize>,
    interval: &BoundedInterval,
) {
    let (l, u) = (interval.lower(), interval.upper());
    if !l.is_finite() || !u.is_finite() {
        report.push(index, ViolationKind::NonFinite);
        return;
    }
    if l > u {
        report.push(
            index,
            ViolationKind::InvertedInterval { lower: l, upper: u },
        );
    }
    for lambda in [interval.lambda_lower(), interval.lambda_upper()] {
        if !(0.0..0.5).contains(&lambda) {
            report.push(index, ViolationKind::LambdaOutOfRange { lambda });
        }
    }
}

pub fn check_interval(interval: &BoundedInterval) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_interval_into(&mut report, None, interval);
    report
}

pub fn check_bounded(
    values: &[f64],
    intervals: &[BoundedInterval],
    integral: &[bool],
) -> ValidationReport {
    let mut report = ValidationReport::default();
    if values.is_empty() {
        report.push(None, ViolationKind::Empty);
    }
    if values.len() != intervals.len() || values.len() != integral.len() {
        report.push(
            None,
            ViolationKind::LengthMismatch {
                values: values.len(),
                intervals: intervals.len(),
                integral: integral.len(),
            },
        );
        return report;
    }
    for (j, ((&x, iv), &int)) in values.iter().zip(intervals).zip(integral).enumerate() {
        let idx = Some(j + 1);
        check_interval_into(&mut report, idx, iv);
        if !x.is_finite() {
            report.push(idx, ViolationKind::NonFinite);
            continue;
        }
        if x < iv.lower() {
            report.push(
                idx,
                ViolationKind::BelowLower {
                    value: x,
                    lower: iv.lower(),
                },
            );
        }
        if x > iv.upper() {
            report.push(
                idx,
                ViolationKind::AboveUpper {
                    value: x,
                    upper: iv.upper(),
                },
            );
        }
        if int && x.fract() != 0.0 {
            report.push(idx, ViolationKind::NotIntegral { value: x });
        }
    }
    report
}

pub fn check_permutation(order: &[usize]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = order.len();
    if n == 0 {
        report.push(None, ViolationKind::Empty);
    }
    let mut seen = vec![false; n];
    for (j, &label) in order.iter().enumerate() {
        if label == 0 || label > n {
            report.push(Some(j + 1), ViolationKind::LabelOutOfRange { label, n });
        } else if std::mem::replace(&mut seen[label - 1], true) {
            report.push(Some(j + 1), ViolationKind::DuplicateLabel { label });
        }
    }
    report
}
