//! Pass/fail outcomes with concrete counterexamples, and the tolerance policy
//! used by every numeric comparison in the crate.

use serde::Serialize;

/// Slack for the two kinds of inequalities.
///
/// Non-strict comparisons (`≥ 0`, `≤ 0`, `= 0`) hold up to `slack`; strict
/// comparisons (`> 0`, `< 0`) must clear `strict`. Keeping the two apart
/// means a value can legitimately satisfy both `v ≥ 0` and `v < 0` only
/// inside the tiny band `(−slack, −strict)`, which well-scaled inputs never
/// occupy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerance {
    pub slack: f64,
    pub strict: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            slack: 1e-9,
            strict: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(slack: f64, strict: f64) -> Self {
        Tolerance { slack, strict }
    }

    /// `v ≥ 0` up to slack.
    pub fn ge_zero(self, v: f64) -> bool {
        v >= -self.slack
    }

    /// `v ≤ 0` up to slack.
    pub fn le_zero(self, v: f64) -> bool {
        v <= self.slack
    }

    /// `v = 0` up to slack.
    pub fn eq_zero(self, v: f64) -> bool {
        v.abs() <= self.slack
    }

    /// `v > 0` with strict clearance.
    pub fn gt_zero(self, v: f64) -> bool {
        v > self.strict
    }

    /// `v < 0` with strict clearance.
    pub fn lt_zero(self, v: f64) -> bool {
        v < -self.strict
    }

    /// `a ≤ b` up to slack.
    pub fn le(self, a: f64, b: f64) -> bool {
        a <= b + self.slack
    }

    /// `a < b` with strict clearance.
    pub fn lt(self, a: f64, b: f64) -> bool {
        a < b - self.strict
    }
}

/// A grid point playing a named role inside a counterexample, e.g. the `x`
/// of a failed implication.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessPoint {
    pub role: &'static str,
    pub index: usize,
    pub point: f64,
}

/// A named value attached to a counterexample, e.g. the offending sum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessValue {
    pub label: &'static str,
    pub value: f64,
}

/// A concrete counterexample: the grid points involved and the values that
/// violate the checked inequality.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Witness {
    pub points: Vec<WitnessPoint>,
    pub values: Vec<WitnessValue>,
}

impl Witness {
    pub fn new() -> Self {
        Witness::default()
    }

    pub fn with_point(mut self, role: &'static str, index: usize, point: f64) -> Self {
        self.points.push(WitnessPoint { role, index, point });
        self
    }

    pub fn with_value(mut self, label: &'static str, value: f64) -> Self {
        self.values.push(WitnessValue { label, value });
        self
    }

    pub fn point(&self, role: &str) -> Option<&WitnessPoint> {
        self.points.iter().find(|p| p.role == role)
    }

    /// Whether any involved grid point sits at the coordinate `x` (up to
    /// `eps`). Handy for asserting "the counterexample runs through x = 1".
    pub fn mentions_coordinate(&self, x: f64, eps: f64) -> bool {
        self.points.iter().any(|p| (p.point - x).abs() <= eps)
    }
}

/// Outcome of a property check. A failed verdict always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    pub witness: Option<Witness>,
    pub tolerance: Tolerance,
}

impl Verdict {
    pub fn pass(tolerance: Tolerance) -> Self {
        Verdict {
            passed: true,
            witness: None,
            tolerance,
        }
    }

    pub fn fail(tolerance: Tolerance, witness: Witness) -> Self {
        Verdict {
            passed: false,
            witness: Some(witness),
            tolerance,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.passed
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn into_witness(self) -> Option<Witness> {
        self.witness
    }
}
