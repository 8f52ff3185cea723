//! Verdicts and check records shared by the verification pipelines.

use serde::{Deserialize, Serialize};

/// Outcome of a verification.
///
/// `Inconclusive` is reserved for numerical checks whose margin is smaller
/// than the error estimate of the method that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn all<I: IntoIterator<Item = Verdict>>(verdicts: I) -> Verdict {
        verdicts.into_iter().fold(Verdict::Pass, Verdict::and)
    }

    /// Verdict for a numerically computed strict inequality `lhs > rhs`.
    ///
    /// Passes when the margin is at least `factor` error estimates, fails
    /// only when the violation itself exceeds that band.
    pub fn from_margin(margin: f64, error: f64, factor: f64) -> Verdict {
        let band = factor * error.abs();
        if margin >= band && margin > 0.0 {
            Verdict::Pass
        } else if margin < -band {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

/// One inequality or identity checked by a pipeline, with its witness values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub verdict: Verdict,
}

impl Check {
    /// Exact (non-FEM) check of `lhs > rhs`.
    pub fn greater(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Check {
            name: name.into(),
            lhs,
            rhs,
            margin: lhs - rhs,
            verdict: Verdict::from_bool(lhs > rhs),
        }
    }

    /// Exact check of `lhs < rhs`.
    pub fn less(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Check {
            name: name.into(),
            lhs,
            rhs,
            margin: rhs - lhs,
            verdict: Verdict::from_bool(lhs < rhs),
        }
    }

    /// `|lhs - rhs| <= tol`; the margin is the unused part of the tolerance.
    pub fn close(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = tol - (lhs - rhs).abs();
        Check {
            name: name.into(),
            lhs,
            rhs,
            margin,
            verdict: Verdict::from_bool(margin >= 0.0),
        }
    }

    /// FEM-backed check of `lhs > rhs` under the margin policy of
    /// [`Verdict::from_margin`] with a factor of three.
    pub fn greater_numerical(name: impl Into<String>, lhs: f64, rhs: f64, error: f64) -> Self {
        let margin = lhs - rhs;
        Check {
            name: name.into(),
            lhs,
            rhs,
            margin,
            verdict: Verdict::from_margin(margin, error, 3.0),
        }
    }
}

/// A named claim and the checks that establish it.
///
/// `lhs`, `rhs` and `margin` repeat the first (headline) check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub branch: Option<String>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(claim: impl Into<String>, checks: Vec<Check>) -> Self {
        let verdict = Verdict::all(checks.iter().map(|c| c.verdict));
        let (lhs, rhs, margin) = checks
            .first()
            .map(|c| (c.lhs, c.rhs, c.margin))
            .unwrap_or((f64::NAN, f64::NAN, f64::NAN));
        Report {
            claim: claim.into(),
            branch: None,
            lhs,
            rhs,
            margin,
            verdict,
            checks,
        }
    }

    pub fn with_branch(mut self, branch: impl Into<String>) -> Self {
        self.branch = Some(branch.into());
        self
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.verdict == Verdict::Fail)
    }
}
