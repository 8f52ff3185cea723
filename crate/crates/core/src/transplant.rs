//! Lower bounds on eigenvalue sums by linear transplantation.
//!
//! The map `τ` sending `T(c, d)` onto `T(a, b)` turns the first `n`
//! eigenfunctions of `T(a, b)` into trial functions on `T(c, d)`, and
//! `Λ_n(a, b) > C Λ_n(c, d)` follows once
//! `[((a-c)² + d²)(1-γ) + 2b(a-c)δ + b²γ] / d² < 1/C`, where `γ` and `δ`
//! are the energy fractions of the `y` derivative and the mixed term.
//! `T(0, b)` is compared with the equilateral `E = T(0, √3)` when
//! `γ < 3/4` and with the right triangles `F± = T(±1, 2√3)` otherwise.

use std::f64::consts::PI;

use serde::Serialize;

use crate::certify::{self, bessel_zero, SectorSpec};
use crate::equilateral::{equilateral_sum_target, right_sum_target};
use crate::error::{Error, Result};
use crate::fem::{self, RayleighData};
use crate::geometry::{polya_upper, FanTriangle};
use crate::report::{Check, Report, Verdict};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Data of one transplantation inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransplantCondition {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub big_c: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl TransplantCondition {
    pub fn new(a: f64, b: f64, c: f64, d: f64, big_c: f64, gamma: f64, delta: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::domain("b", b, "b > 0"));
        }
        if !(d > 0.0) {
            return Err(Error::domain("d", d, "d > 0"));
        }
        if !(big_c > 0.0) {
            return Err(Error::domain("C", big_c, "C > 0"));
        }
        Ok(TransplantCondition {
            a,
            b,
            c,
            d,
            big_c,
            gamma,
            delta,
        })
    }

    /// `lhs < 1/C` implies `Λ_n(a, b) > C Λ_n(c, d)`.
    pub fn holds(&self) -> bool {
        lemtrace_lhs(self) < 1.0 / self.big_c
    }
}

pub fn lemtrace_lhs(cond: &TransplantCondition) -> f64 {
    let TransplantCondition {
        a, b, c, d, gamma, delta, ..
    } = *cond;
    let s = a - c;
    ((s * s + d * d) * (1.0 - gamma) + 2.0 * b * s * delta + b * b * gamma) / (d * d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Equilateral,
    Right,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Equilateral => "equilateral",
            Branch::Right => "right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchDecision {
    pub branch: Branch,
    /// `γ` on the equilateral branch, `b² + 50/(11 - 8γ)` on the right one.
    pub lhs: f64,
    /// `3/4`, respectively `13`.
    pub rhs: f64,
    pub holds: bool,
}

/// Which comparison triangle handles `T(0, b)` for the energy fraction `γ`.
pub fn prop_unknown_branch(b: f64, gamma: f64) -> Result<BranchDecision> {
    if !(b > SQRT3) {
        return Err(Error::domain("b", b, "b > sqrt 3"));
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::domain("gamma", gamma, "0 <= gamma <= 1"));
    }
    Ok(if gamma < 0.75 {
        BranchDecision {
            branch: Branch::Equilateral,
            lhs: gamma,
            rhs: 0.75,
            holds: true,
        }
    } else {
        let lhs = b * b + 50.0 / (11.0 - 8.0 * gamma);
        BranchDecision {
            branch: Branch::Right,
            lhs,
            rhs: 13.0,
            holds: lhs > 13.0,
        }
    })
}

/// `C(b) = (3b⁴ + 68b² + 9) / (20b²(b² + 1))` and `C̃(b) = (13b² + 81) / (40b²)`.
pub fn c_funcs(b: f64) -> Result<(f64, f64)> {
    if !(b > 0.0) {
        return Err(Error::domain("b", b, "b > 0"));
    }
    let b2 = b * b;
    let c = (3.0 * b2 * b2 + 68.0 * b2 + 9.0) / (20.0 * b2 * (b2 + 1.0));
    let c_tilde = (13.0 * b2 + 81.0) / (40.0 * b2);
    Ok((c, c_tilde))
}

/// Right side of the reduced inequality `C̃(h) > 3(h²+17)/(20h²) + 7(h²-3)/(10h²(b²+1))`.
pub fn condch_rhs(h: f64, b: f64) -> f64 {
    let h2 = h * h;
    3.0 * (h2 + 17.0) / (20.0 * h2) + 7.0 * (h2 - 3.0) / (10.0 * h2 * (b * b + 1.0))
}

/// Uniform grid of `points` values strictly inside `(lo, hi)`.
pub fn open_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (1..=points)
        .map(|i| lo + (hi - lo) * i as f64 / (points + 1) as f64)
        .collect()
}

/// Verifies `Λ₂(0,b) > C(b)Λ₂(0,√3)` reduces to a true inequality for every
/// `b` in `grid` (all in `(√3, h)`), with equality at `b = √3`.
pub fn condch_verify(h: f64, grid: &[f64]) -> Result<Report> {
    if !(h > SQRT3) {
        return Err(Error::domain("h", h, "h > sqrt 3"));
    }
    if let Some(&b) = grid.iter().find(|&&b| !(b > SQRT3 && b < h)) {
        return Err(Error::domain("b", b, "sqrt 3 < b < h"));
    }
    let (_, ct) = c_funcs(h)?;
    let mut checks = vec![Check::close("equality at b = sqrt 3", condch_rhs(h, SQRT3), ct, 1e-12)];
    for &b in grid {
        checks.push(Check::greater(format!("C~(h) > reduced rhs at b = {b}"), ct, condch_rhs(h, b)));
        // the inequality before simplification
        let (c, _) = c_funcs(b)?;
        let first = 3.0 * (1.0 / c - 1.0) / (b * b - 3.0);
        let second = h * h * (1.0 - ct / c) / (h * h - b * b);
        checks.push(Check::greater(format!("gamma window nonempty at b = {b}"), first, second));
    }
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    for w in sorted.windows(2) {
        checks.push(Check::greater(
            format!("reduced rhs decreasing on [{}, {}]", w[0], w[1]),
            condch_rhs(h, w[0]),
            condch_rhs(h, w[1]),
        ));
    }
    Ok(Report::new(format!("Lambda_2(0,b) > C(b) Lambda_2(0,sqrt 3) for sqrt 3 < b < {h}"), checks))
}

/// Verification of `Λ_n D² > Λ_n D²|_E` for one `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem1Report {
    pub b: f64,
    pub n: usize,
    pub level: u32,
    pub sum_d2: f64,
    pub sum_d2_error: f64,
    pub equilateral_target: f64,
    pub right_target: f64,
    pub rayleigh: Option<RayleighData>,
    /// Why the energy fractions are unavailable, if they are.
    pub rayleigh_note: Option<String>,
    pub report: Report,
}

fn right_branch_condition(b: f64, sign: f64, r: &RayleighData) -> Result<TransplantCondition> {
    TransplantCondition::new(0.0, b, sign, 2.0 * SQRT3, 6.0 / 11.0 * 16.0 / (1.0 + b * b), r.gamma, r.delta)
}

fn equilateral_branch_condition(b: f64, r: &RayleighData) -> Result<TransplantCondition> {
    TransplantCondition::new(0.0, b, 0.0, SQRT3, 4.0 / (1.0 + b * b), r.gamma, r.delta)
}

/// Numerical check of `lhs < 1/C` with the energy-fraction errors
/// propagated through the affine dependence on `γ` and `δ`.
fn condition_check(name: &str, cond: &TransplantCondition, r: &RayleighData) -> Check {
    let lhs = lemtrace_lhs(cond);
    let s = cond.a - cond.c;
    let dg = ((cond.b * cond.b - s * s - cond.d * cond.d) / (cond.d * cond.d)).abs();
    let dd = (2.0 * cond.b * s / (cond.d * cond.d)).abs();
    let err = dg * r.gamma_error + dd * r.delta_error;
    Check::greater_numerical(name, 1.0 / cond.big_c, lhs, err)
}

fn theorem1_report(b: f64, n: usize, ex: &fem::Extrapolated, t: &crate::geometry::Triangle) -> Result<Theorem1Report> {
    let d2 = 1.0 + b * b;
    let (sum, err) = ex.sum(n);
    let (sum_d2, sum_d2_error) = (sum * d2, err * d2);
    let equilateral_target = equilateral_sum_target(n)?;
    let right_target = right_sum_target(n)?;
    let equality = (b - SQRT3).abs() < 1e-12;
    let mut checks = Vec::new();
    if equality {
        checks.push(Check::close(
            "Lambda_n D^2 equals the equilateral value",
            sum_d2,
            equilateral_target,
            0.005 * equilateral_target,
        ));
    } else {
        checks.push(Check::greater_numerical(
            "Lambda_n D^2 > Lambda_n D^2 of the equilateral triangle",
            sum_d2,
            equilateral_target,
            sum_d2_error,
        ));
        checks.push(Check::greater_numerical(
            "Lambda_n D^2 > min(equilateral, 6/11 right-triangle value)",
            sum_d2,
            equilateral_target.min(6.0 / 11.0 * right_target),
            sum_d2_error,
        ));
    }
    let (rayleigh, rayleigh_note) = match fem::rayleigh_data_from(t, ex, n) {
        Ok(r) => (Some(r), None),
        Err(e @ Error::SplitCluster { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let mut branch = None;
    if let (Some(r), false) = (&rayleigh, equality) {
        let gamma = r.gamma.clamp(0.0, 1.0);
        let decision = prop_unknown_branch(b, gamma)?;
        branch = Some(decision.branch);
        checks.push(Check {
            name: format!("branch condition ({})", decision.branch.name()),
            lhs: decision.lhs,
            rhs: decision.rhs,
            margin: if decision.branch == Branch::Equilateral {
                decision.rhs - decision.lhs
            } else {
                decision.lhs - decision.rhs
            },
            verdict: Verdict::from_bool(decision.holds),
        });
        match decision.branch {
            Branch::Equilateral => {
                let cond = equilateral_branch_condition(b, r)?;
                checks.push(condition_check("transplant from E: lhs < 1/C", &cond, r));
            }
            Branch::Right => {
                // both sign choices are evaluated; the better one is kept
                let plus = condition_check("transplant from F+: lhs < 1/C", &right_branch_condition(b, 1.0, r)?, r);
                let minus = condition_check("transplant from F-: lhs < 1/C", &right_branch_condition(b, -1.0, r)?, r);
                checks.push(if plus.margin >= minus.margin { plus } else { minus });
            }
        }
    }
    let mut report = Report::new(format!("Lambda_{n} D^2 of T(0,{b}) >= Lambda_{n} D^2 of the equilateral triangle"), checks);
    if let Some(br) = branch {
        report = report.with_branch(br.name());
    }
    Ok(Theorem1Report {
        b,
        n,
        level: ex.fine.level,
        sum_d2,
        sum_d2_error,
        equilateral_target,
        right_target,
        rayleigh,
        rayleigh_note,
        report,
    })
}

fn check_subequilateral(f: &FanTriangle) -> Result<()> {
    if f.a != 0.0 || f.b < SQRT3 - 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "T({}, {}) is not subequilateral (need a = 0, b >= sqrt 3)",
            f.a, f.b
        )));
    }
    Ok(())
}

/// Reports for `n = 1..=n_max` from one FEM solve of `T(0, b)`.
pub fn theorem1_sweep(f: &FanTriangle, n_max: usize, level: u32) -> Result<Vec<Theorem1Report>> {
    check_subequilateral(f)?;
    if n_max == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let t = f.triangle();
    let ex = fem::dirichlet_eigenvalues(&t, n_max + 1, level)?;
    (1..=n_max).map(|n| theorem1_report(f.b, n, &ex, &t)).collect()
}

pub fn theorem1_verify(f: &FanTriangle, n: usize, level: u32) -> Result<Theorem1Report> {
    theorem1_sweep(f, n, level)?.pop().ok_or_else(|| Error::InvalidArgument("n must be at least 1".into()))
}

/// `112π²/9`, the value of `λ₂D²` for the equilateral triangle.
pub const SECOND_EIGENVALUE_TARGET: f64 = 112.0 * PI * PI / 9.0;

/// Boundary between the sector argument and the transplantation argument.
pub const SECTOR_THRESHOLD: f64 = 2.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem2Report {
    pub b: f64,
    pub level: u32,
    pub lambda2_d2: f64,
    pub lambda2_d2_error: f64,
    pub report: Report,
}

/// `λ₂D² > 112π²/9` on `T(0, b)`, `b > √3`, with a FEM cross-check; at
/// `b = √3` only the FEM value is compared for equality.
pub fn theorem2_verify(b: f64, level: u32) -> Result<Theorem2Report> {
    let f = FanTriangle::isosceles(b)?;
    check_subequilateral(&f)?;
    let d2 = 1.0 + b * b;
    let ex = fem::dirichlet_eigenvalues(&f.triangle(), 3, level)?;
    let lambda2_d2 = ex.values[1] * d2;
    let lambda2_d2_error = ex.errors[1] * d2;
    let target = SECOND_EIGENVALUE_TARGET;
    let lambda3_d2 = ex.values[2] * d2;
    if (b - SQRT3).abs() < 1e-12 {
        let checks = vec![
            Check::close("lambda2 D^2 equals 112 pi^2 / 9", lambda2_d2, target, 0.01 * target),
            Check::close("lambda3 D^2 equals 112 pi^2 / 9", lambda3_d2, target, 0.01 * target),
        ];
        return Ok(Theorem2Report {
            b,
            level,
            lambda2_d2,
            lambda2_d2_error,
            report: Report::new("lambda_2 D^2 of the equilateral triangle", checks).with_branch("equilateral"),
        });
    }
    let mut checks = Vec::new();
    let branch;
    if b >= SECTOR_THRESHOLD {
        branch = "sector";
        let sector = SectorSpec::at_apex(b, d2.sqrt())?;
        let nu = sector.order;
        let j2 = bessel_zero(nu, 2)?;
        let j2nu = bessel_zero(2.0 * nu, 1)?;
        checks.push(Check::greater("j_{nu,2}^2 > 112 pi^2 / 9", j2 * j2, target));
        checks.push(Check::less("second sector eigenvalue is j_{nu,2}^2 / D^2", j2, j2nu));
    } else {
        branch = "transplant";
        let h = SECTOR_THRESHOLD;
        let (c, ct) = c_funcs(b)?;
        let (_, ct_h) = c_funcs(h)?;
        checks.push(Check::greater("reduced inequality at b", ct_h, condch_rhs(h, b)));
        checks.push(Check::greater("C~(b) >= C(b)", ct + 1e-15, c));
        let lemma = certify::lemma62_verify(None)?;
        checks.push(Check {
            name: "certified Lambda_2(0, 5/2) > C~(5/2) Lambda_2(0, sqrt 3)".into(),
            lhs: lemma.lambda1_lower + lemma.certificate.interval.lower,
            rhs: ct_h * 40.0 * PI * PI / 9.0,
            margin: lemma.lambda1_lower + lemma.certificate.interval.lower - ct_h * 40.0 * PI * PI / 9.0,
            verdict: lemma.report.verdict,
        });
        let polya = polya_upper(&f.triangle());
        let bound = c * 40.0 * PI * PI / 9.0 - polya;
        checks.push(Check::close(
            "C(b) Lambda_2(0,sqrt 3) - Polya bound equals 112 pi^2 / (9 D^2)",
            bound * d2,
            target,
            1e-10 * target,
        ));
    }
    checks.insert(
        0,
        Check::greater_numerical("FEM lambda2 D^2 > 112 pi^2 / 9", lambda2_d2, target, lambda2_d2_error),
    );
    // the bound for lambda_3 follows from lambda_3 >= lambda_2
    checks.push(Check::greater_numerical(
        "FEM lambda3 D^2 > 112 pi^2 / 9",
        lambda3_d2,
        target,
        ex.errors[2] * d2,
    ));
    Ok(Theorem2Report {
        b,
        level,
        lambda2_d2,
        lambda2_d2_error,
        report: Report::new(format!("lambda_2 D^2 of T(0,{b}) > 112 pi^2 / 9"), checks).with_branch(branch),
    })
}
