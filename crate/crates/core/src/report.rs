//! Pass/fail records for invariant suites.

use serde::Serialize;

/// How a computed value is compared with its bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `value <= bound + tolerance`
    AtMost,
    /// `value >= bound - tolerance`
    AtLeast,
    /// `|value - bound| <= tolerance`
    Equal,
}

/// One checked inequality or identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub inputs: String,
    pub value: f64,
    pub relation: Relation,
    pub bound: f64,
    /// Slack in the direction of the relation; negative means violated.
    pub margin: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, inputs: impl Into<String>, value: f64, relation: Relation, bound: f64, tolerance: f64) -> Check {
        let margin = match relation {
            Relation::AtMost => bound - value,
            Relation::AtLeast => value - bound,
            Relation::Equal => -(value - bound).abs(),
        };
        let passed = margin.is_finite() && margin >= -tolerance;
        Check { name: name.into(), inputs: inputs.into(), value, relation, bound, margin, tolerance, passed }
    }

    pub fn at_most(name: impl Into<String>, inputs: impl Into<String>, value: f64, bound: f64, tolerance: f64) -> Check {
        Check::new(name, inputs, value, Relation::AtMost, bound, tolerance)
    }

    pub fn at_least(name: impl Into<String>, inputs: impl Into<String>, value: f64, bound: f64, tolerance: f64) -> Check {
        Check::new(name, inputs, value, Relation::AtLeast, bound, tolerance)
    }

    pub fn equal(name: impl Into<String>, inputs: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Check {
        Check::new(name, inputs, value, Relation::Equal, expected, tolerance)
    }

    /// A yes/no condition, recorded as `1 >= 1`.
    pub fn holds(name: impl Into<String>, inputs: impl Into<String>, ok: bool) -> Check {
        Check::new(name, inputs, if ok { 1.0 } else { 0.0 }, Relation::AtLeast, 1.0, 0.0)
    }

    /// A computation that failed before a value was available.
    pub fn error(name: impl Into<String>, inputs: impl Into<String>, err: &crate::Error) -> Check {
        let mut c = Check::holds(name, format!("{} ({err})", inputs.into()), false);
        c.value = f64::NAN;
        c
    }
}

/// Checks produced by one suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Smallest margin over all checks.
    pub fn worst_margin(&self) -> f64 {
        self.checks.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min)
    }
}
