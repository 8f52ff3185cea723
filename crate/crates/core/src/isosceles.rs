//! Aperture sweeps of isosceles triangles.
//!
//! `T(alpha)` has its apex at the origin, equal sides of length 1 and
//! aperture `alpha`. Along a sweep we track the fundamental tone `lambda_1`,
//! the lowest antisymmetric tone `lambda_a` and the lowest symmetric tone
//! above `lambda_1`, called `lambda_s`, under four normalizations.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fem::{mesh::BoundaryConditions, solve_extrapolated, Extrapolated};
use crate::geometry::{IsoscelesAperture, Triangle};
use crate::report::{Check, Report, Verdict};

pub const MIN_LEVEL: u32 = 6;
pub const DEFAULT_LEVEL: u32 = 6;
/// Points of the uniform base grid on `[pi/6, 2pi/3]`; spacing `pi/162`.
pub const DEFAULT_GRID_POINTS: usize = 82;
/// Subdivision factor of the local refinements.
pub const REFINEMENT: usize = 4;
/// Relative tolerance for the minima read off the published plots.
pub const FIGURE_TOLERANCE: f64 = 0.01;
/// Relative tolerance for closed-form values at special apertures.
pub const EXACT_TOLERANCE: f64 = 1e-4;
/// Relative tolerance of the mirror identity for the antisymmetric tone.
pub const MIRROR_TOLERANCE: f64 = 0.005;
const SAME_ALPHA: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scaling {
    Side,
    Diameter,
    Perimeter,
    Area,
}

impl Scaling {
    pub const ALL: [Scaling; 4] = [Scaling::Side, Scaling::Diameter, Scaling::Perimeter, Scaling::Area];

    /// `l^2`, `D^2`, `L^2` or `A` of `T(alpha)` with unit equal sides.
    pub fn factor(self, alpha: f64) -> f64 {
        let f = IsoscelesAperture { alpha, l: 1.0 }.scale_functionals();
        match self {
            Scaling::Side => 1.0,
            Scaling::Diameter => f.diameter * f.diameter,
            Scaling::Perimeter => f.perimeter * f.perimeter,
            Scaling::Area => f.area,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scaling::Side => "side",
            Scaling::Diameter => "diameter",
            Scaling::Perimeter => "perimeter",
            Scaling::Area => "area",
        }
    }
}

impl std::str::FromStr for Scaling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "side" => Ok(Scaling::Side),
            "diameter" => Ok(Scaling::Diameter),
            "perimeter" => Ok(Scaling::Perimeter),
            "area" => Ok(Scaling::Area),
            _ => Err(Error::InvalidArgument(format!(
                "unknown scaling {s:?}, expected side, diameter, perimeter or area"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tone {
    Lambda1,
    LambdaA,
    LambdaS,
}

impl Tone {
    pub const ALL: [Tone; 3] = [Tone::Lambda1, Tone::LambdaA, Tone::LambdaS];

    pub fn name(self) -> &'static str {
        match self {
            Tone::Lambda1 => "lambda1",
            Tone::LambdaA => "lambda_a",
            Tone::LambdaS => "lambda_s",
        }
    }
}

impl std::str::FromStr for Tone {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda1" => Ok(Tone::Lambda1),
            "lambda_a" => Ok(Tone::LambdaA),
            "lambda_s" => Ok(Tone::LambdaS),
            _ => Err(Error::InvalidArgument(format!(
                "unknown tone {s:?}, expected lambda1, lambda_a or lambda_s"
            ))),
        }
    }
}

/// One aperture of a sweep. The `*_error` fields are signed: the extrapolated
/// value minus the extrapolation obtained one level coarser.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub lambda1: f64,
    pub lambda_a: f64,
    pub lambda_s: f64,
    pub lambda1_error: f64,
    pub lambda_a_error: f64,
    pub lambda_s_error: f64,
}

impl SweepRow {
    pub fn value(&self, tone: Tone) -> f64 {
        match tone {
            Tone::Lambda1 => self.lambda1,
            Tone::LambdaA => self.lambda_a,
            Tone::LambdaS => self.lambda_s,
        }
    }

    pub fn error(&self, tone: Tone) -> f64 {
        match tone {
            Tone::Lambda1 => self.lambda1_error,
            Tone::LambdaA => self.lambda_a_error,
            Tone::LambdaS => self.lambda_s_error,
        }
    }

    fn scaled(&self, s: f64) -> SweepRow {
        SweepRow {
            alpha: self.alpha,
            lambda1: self.lambda1 * s,
            lambda_a: self.lambda_a * s,
            lambda_s: self.lambda_s * s,
            lambda1_error: self.lambda1_error * s,
            lambda_a_error: self.lambda_a_error * s,
            lambda_s_error: self.lambda_s_error * s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub scaling: Scaling,
    pub level: u32,
    /// Sorted by strictly increasing `alpha`.
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// The same data under another normalization.
    pub fn rescale(&self, scaling: Scaling) -> SweepTable {
        let rows = self
            .rows
            .iter()
            .map(|r| r.scaled(scaling.factor(r.alpha) / self.scaling.factor(r.alpha)))
            .collect();
        SweepTable {
            scaling,
            level: self.level,
            rows,
        }
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.alpha).collect()
    }

    pub fn values(&self, tone: Tone) -> Vec<f64> {
        self.rows.iter().map(|r| r.value(tone)).collect()
    }

    /// Index of the row at aperture `alpha`, if there is one.
    pub fn position(&self, alpha: f64) -> Option<usize> {
        self.rows.iter().position(|r| (r.alpha - alpha).abs() < SAME_ALPHA)
    }

    fn merge(mut self, other: SweepTable) -> SweepTable {
        self.rows.extend(other.rows);
        self.rows.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
        self.rows.dedup_by(|a, b| (a.alpha - b.alpha).abs() < SAME_ALPHA);
        self
    }
}

/// `DEFAULT_GRID_POINTS` uniform apertures on `[pi/6, 2pi/3]`. Both `pi/3`
/// and `pi/2` are grid points.
pub fn default_grid() -> Vec<f64> {
    uniform_grid(FRAC_PI_6, 2.0 * FRAC_PI_3, DEFAULT_GRID_POINTS)
}

pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![lo],
        _ => (0..points)
            .map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// Extrapolated eigenvalues with the signed difference to the extrapolation
/// one level coarser.
fn nested(t: &Triangle, bc: &BoundaryConditions, k: usize, level: u32) -> Result<(Vec<f64>, Vec<f64>)> {
    let fine: Extrapolated = solve_extrapolated(t, bc, k, level)?;
    let coarse = solve_extrapolated(t, bc, k, level - 1)?;
    let errors = fine.values.iter().zip(&coarse.values).map(|(f, c)| f - c).collect();
    Ok((fine.values, errors))
}

fn sweep_row(alpha: f64, level: u32) -> Result<SweepRow> {
    let t = IsoscelesAperture::new(alpha, 1.0)?;
    let half = t.half_triangle();
    let (full, full_err) = nested(&t.triangle(), &BoundaryConditions::dirichlet(), 1, level)?;
    let (anti, anti_err) = nested(&half, &BoundaryConditions::dirichlet(), 1, level)?;
    let (sym, sym_err) = nested(&half, &BoundaryConditions::neumann_first(), 2, level)?;
    Ok(SweepRow {
        alpha,
        lambda1: full[0],
        lambda_a: anti[0],
        lambda_s: sym[1],
        lambda1_error: full_err[0],
        lambda_a_error: anti_err[0],
        lambda_s_error: sym_err[1],
    })
}

/// `lambda_1` on the full triangle, `lambda_a` and `lambda_s` on the upper
/// half with a Dirichlet or Neumann condition on the symmetry line.
pub fn sweep(alpha_grid: &[f64], scaling: Scaling, level: u32) -> Result<SweepTable> {
    if level < MIN_LEVEL {
        return Err(Error::domain("level", level as f64, "level >= 6"));
    }
    if let Some(a) = alpha_grid.iter().find(|a| !(**a > 0.0 && **a < PI)) {
        return Err(Error::domain("alpha", *a, "(0, pi)"));
    }
    let mut grid = alpha_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() < SAME_ALPHA);
    let rows = grid
        .iter()
        .map(|a| sweep_row(*a, level))
        .collect::<Result<Vec<_>>>()?;
    let side = SweepTable {
        scaling: Scaling::Side,
        level,
        rows,
    };
    Ok(side.rescale(scaling))
}

/// Apertures splitting `[alpha_{i-1}, alpha_{i+1}]` into steps `REFINEMENT`
/// times finer, excluding existing grid points.
fn refine_around(grid: &[f64], i: usize) -> Vec<f64> {
    let lo = i.saturating_sub(1);
    let hi = (i + 1).min(grid.len() - 1);
    (lo..hi)
        .flat_map(|k| {
            let (a, b) = (grid[k], grid[k + 1]);
            (1..REFINEMENT).map(move |j| a + (b - a) * j as f64 / REFINEMENT as f64)
        })
        .collect()
}

fn argmin(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map_or(0, |(i, _)| i)
}

/// Sweep of `grid`, then refined near `pi/3` and near the interior grid
/// minimum of every tone under every scaling.
pub fn refined_sweep(grid: &[f64], scaling: Scaling, level: u32) -> Result<SweepTable> {
    let base = sweep(grid, Scaling::Side, level)?;
    let alphas = base.alphas();
    if alphas.len() < 3 {
        return Ok(base.rescale(scaling));
    }
    let mut centers = Vec::new();
    if let Some(i) = base.position(FRAC_PI_3) {
        centers.push(i);
    }
    for s in Scaling::ALL {
        let t = base.rescale(s);
        for tone in Tone::ALL {
            let i = argmin(&t.values(tone));
            if i > 0 && i + 1 < alphas.len() {
                centers.push(i);
            }
        }
    }
    centers.sort_unstable();
    centers.dedup();
    let extra: Vec<f64> = centers.iter().flat_map(|i| refine_around(&alphas, *i)).collect();
    let refined = base.merge(sweep(&extra, Scaling::Side, level)?);
    Ok(refined.rescale(scaling))
}

/// The default sweep: base grid plus local refinements.
pub fn default_sweep(scaling: Scaling, level: u32) -> Result<SweepTable> {
    refined_sweep(&default_grid(), scaling, level)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Minimum {
    pub tone: Tone,
    pub scaling: Scaling,
    pub alpha: f64,
    pub value: f64,
}

/// Grid minimum of one curve, refined by the parabola through it and its two
/// neighbours.
pub fn find_min(table: &SweepTable, tone: Tone) -> Result<Minimum> {
    let v = table.values(tone);
    let a = table.alphas();
    let i = argmin(&v);
    if i == 0 || i + 1 >= v.len() {
        return Err(Error::MinimumAtEdge {
            curve: format!("{} ({} scaling)", tone.name(), table.scaling.name()),
            alpha: a.get(i).copied().unwrap_or(f64::NAN),
        });
    }
    let (x0, x1, x2) = (a[i - 1], a[i], a[i + 1]);
    let (y0, y1, y2) = (v[i - 1], v[i], v[i + 1]);
    // Newton form y = y0 + d1 (x - x0) + d2 (x - x0)(x - x1)
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let d2 = (d12 - d01) / (x2 - x0);
    let (alpha, value) = if d2 > 0.0 {
        let x = 0.5 * (x0 + x1) - d01 / (2.0 * d2);
        (x, y0 + d01 * (x - x0) + d2 * (x - x0) * (x - x1))
    } else {
        (x1, y1)
    };
    Ok(Minimum {
        tone,
        scaling: table.scaling,
        alpha,
        value,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Decreasing,
    Increasing,
}

/// Successive differences of one curve on `[lo, hi]`. A strict claim uses
/// the FEM margin policy; a non-strict claim only fails on a violation
/// larger than three error estimates. The error of a difference is the
/// difference of the signed error estimates, since discretization errors
/// vary smoothly with the aperture.
fn monotone_checks(table: &SweepTable, tone: Tone, lo: f64, hi: f64, dir: Direction, strict: bool) -> Check {
    let rows: Vec<&SweepRow> = table
        .rows
        .iter()
        .filter(|r| r.alpha >= lo - SAME_ALPHA && r.alpha <= hi + SAME_ALPHA)
        .collect();
    let name = format!(
        "{} {} {} on [{lo:.6}, {hi:.6}]",
        tone.name(),
        table.scaling.name(),
        match (dir, strict) {
            (Direction::Decreasing, true) => "strictly decreasing",
            (Direction::Decreasing, false) => "decreasing",
            (Direction::Increasing, true) => "strictly increasing",
            (Direction::Increasing, false) => "increasing",
        }
    );
    let steps: Vec<(f64, Verdict)> = rows
        .windows(2)
        .map(|w| {
            let diff = w[1].value(tone) - w[0].value(tone);
            let margin = if dir == Direction::Decreasing { -diff } else { diff };
            let error = (w[1].error(tone) - w[0].error(tone)).abs();
            let verdict = if strict {
                Verdict::from_margin(margin, error, 3.0)
            } else {
                Verdict::from_bool(margin >= -3.0 * error)
            };
            (margin, verdict)
        })
        .collect();
    let verdict = if steps.is_empty() {
        Verdict::Fail
    } else {
        Verdict::all(steps.iter().map(|s| s.1))
    };
    let margin = steps.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    Check {
        name,
        lhs: rows.len() as f64,
        rhs: 2.0,
        margin,
        verdict,
    }
}

/// Interval monotonicity of `lambda_1` and `lambda_a` under every scaling
/// for which it is claimed, on the part of each interval the table covers.
/// The headline margin of each check is the smallest successive difference
/// in the claimed direction; `lhs` is the number of apertures checked.
pub fn verify_monotonicity(table: &SweepTable) -> Report {
    use Direction::*;
    let lo = table.rows.first().map_or(0.0, |r| r.alpha);
    let hi = table.rows.last().map_or(PI, |r| r.alpha);
    let claims: [(Tone, Scaling, f64, f64, Direction, bool); 14] = [
        (Tone::Lambda1, Scaling::Side, lo, FRAC_PI_3, Decreasing, true),
        (Tone::Lambda1, Scaling::Side, FRAC_PI_2, hi, Increasing, true),
        (Tone::Lambda1, Scaling::Diameter, lo, FRAC_PI_3, Decreasing, true),
        (Tone::Lambda1, Scaling::Diameter, FRAC_PI_3, hi, Increasing, true),
        (Tone::Lambda1, Scaling::Perimeter, lo, FRAC_PI_3, Decreasing, true),
        (Tone::Lambda1, Scaling::Perimeter, FRAC_PI_3, hi, Increasing, true),
        (Tone::Lambda1, Scaling::Area, lo, FRAC_PI_3, Decreasing, false),
        (Tone::Lambda1, Scaling::Area, FRAC_PI_3, hi, Increasing, false),
        (Tone::LambdaA, Scaling::Side, lo, FRAC_PI_2, Decreasing, true),
        (Tone::LambdaA, Scaling::Side, FRAC_PI_2, hi, Increasing, true),
        (Tone::LambdaA, Scaling::Area, lo, FRAC_PI_2, Decreasing, false),
        (Tone::LambdaA, Scaling::Area, FRAC_PI_2, hi, Increasing, false),
        (Tone::LambdaA, Scaling::Diameter, lo, FRAC_PI_3, Decreasing, true),
        (Tone::LambdaA, Scaling::Diameter, FRAC_PI_3, hi, Increasing, true),
    ];
    let checks = claims
        .iter()
        .filter(|c| c.2 < c.3)
        .map(|&(tone, scaling, a, b, dir, strict)| monotone_checks(&table.rescale(scaling), tone, a, b, dir, strict))
        .collect();
    Report::new("monotonicity of the fundamental and antisymmetric tones of isosceles triangles", checks)
}

/// `lambda_a(alpha) A(alpha) = lambda_a(pi - alpha) A(pi - alpha)` on up to
/// `pairs` mirrored apertures present in the table.
pub fn mirror_identity(table: &SweepTable, pairs: usize) -> Report {
    let t = table.rescale(Scaling::Area);
    let candidates: Vec<(usize, usize)> = t
        .rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.alpha < FRAC_PI_2 - SAME_ALPHA)
        .filter_map(|(i, r)| t.position(PI - r.alpha).map(|j| (i, j)))
        .collect();
    let picked: Vec<(usize, usize)> = if candidates.len() <= pairs {
        candidates
    } else {
        (0..pairs)
            .map(|k| candidates[k * (candidates.len() - 1) / (pairs - 1).max(1)])
            .collect()
    };
    let mut checks = vec![Check {
        name: "mirrored pairs available".into(),
        lhs: picked.len() as f64,
        rhs: pairs as f64,
        margin: picked.len() as f64 - pairs as f64,
        verdict: Verdict::from_bool(picked.len() >= pairs),
    }];
    checks.extend(picked.iter().map(|&(i, j)| {
        let (a, b) = (t.rows[i].lambda_a, t.rows[j].lambda_a);
        Check::close(
            format!("lambda_a A at {:.6} and {:.6}", t.rows[i].alpha, t.rows[j].alpha),
            a,
            b,
            MIRROR_TOLERANCE * b,
        )
    }));
    Report::new("antisymmetric tone times area is symmetric under alpha -> pi - alpha", checks)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneSidedSlope {
    pub slope: f64,
    pub error: f64,
}

/// One-sided slope at row `i` from the neighbours `i + s` and `i + 2s`.
/// The error combines the change between the two difference quotients with
/// the FEM error of the nearer one.
fn one_sided_slope(t: &SweepTable, tone: Tone, i: usize, right: bool) -> Option<OneSidedSlope> {
    let step = |k: usize| if right { i.checked_add(k) } else { i.checked_sub(k) };
    let (j1, j2) = (step(1)?, step(2)?);
    let (r0, r1, r2) = (t.rows.get(i)?, t.rows.get(j1)?, t.rows.get(j2)?);
    let q = |r: &SweepRow| (r.value(tone) - r0.value(tone)) / (r.alpha - r0.alpha);
    let (s1, s2) = (q(r1), q(r2));
    let fem = (r1.error(tone) - r0.error(tone)).abs() / (r1.alpha - r0.alpha).abs();
    Some(OneSidedSlope {
        slope: s1,
        error: (s1 - s2).abs() + fem,
    })
}

/// Corner of `lambda_1 D^2` at the equilateral aperture: the one-sided slopes
/// differ by more than ten times their combined estimation error.
pub fn corner_check(table: &SweepTable) -> Report {
    let t = table.rescale(Scaling::Diameter);
    let slopes = t.position(FRAC_PI_3).and_then(|i| {
        Some((
            one_sided_slope(&t, Tone::Lambda1, i, false)?,
            one_sided_slope(&t, Tone::Lambda1, i, true)?,
        ))
    });
    let checks = match slopes {
        Some((left, right)) => vec![
            Check::greater(
                "slope jump of lambda1 D^2 exceeds 10x slope error",
                (right.slope - left.slope).abs(),
                10.0 * (left.error + right.error),
            ),
            Check::less("left slope negative", left.slope, 0.0),
            Check::greater("right slope positive", right.slope, 0.0),
        ],
        None => vec![Check {
            name: "table has two rows on each side of pi/3".into(),
            lhs: 0.0,
            rhs: 1.0,
            margin: -1.0,
            verdict: Verdict::Fail,
        }],
    };
    Report::new("lambda1 D^2 has a corner at alpha = pi/3", checks)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservationReport {
    /// Aperture where `lambda_a - lambda_s` changes sign, by linear
    /// interpolation between the bracketing rows.
    pub crossing: Option<f64>,
    pub report: Report,
}

/// `lambda_s < lambda_a` below `pi/3` and `lambda_a < lambda_s` above it, at
/// every aperture of the table other than `pi/3` itself.
pub fn observation_crossing(table: &SweepTable) -> ObservationReport {
    let rows: Vec<&SweepRow> = table
        .rows
        .iter()
        .filter(|r| (r.alpha - FRAC_PI_3).abs() > SAME_ALPHA)
        .collect();
    let below = rows.iter().any(|r| r.alpha < FRAC_PI_3);
    let above = rows.iter().any(|r| r.alpha > FRAC_PI_3);
    let mut checks = vec![Check {
        name: "grid straddles pi/3".into(),
        lhs: rows.len() as f64,
        rhs: 2.0,
        margin: rows.len() as f64 - 2.0,
        verdict: Verdict::from_bool(below && above),
    }];
    for r in &rows {
        let error = r.lambda_a_error.abs() + r.lambda_s_error.abs();
        checks.push(if r.alpha < FRAC_PI_3 {
            Check::greater_numerical(format!("lambda_a > lambda_s at {:.6}", r.alpha), r.lambda_a, r.lambda_s, error)
        } else {
            Check::greater_numerical(format!("lambda_s > lambda_a at {:.6}", r.alpha), r.lambda_s, r.lambda_a, error)
        });
    }
    let gap: Vec<(f64, f64)> = table.rows.iter().map(|r| (r.alpha, r.lambda_a - r.lambda_s)).collect();
    let crossing = gap.windows(2).find_map(|w| {
        let ((a0, g0), (a1, g1)) = (w[0], w[1]);
        if g0 == 0.0 {
            Some(a0)
        } else if g0 * g1 < 0.0 {
            Some(a0 - g0 * (a1 - a0) / (g1 - g0))
        } else {
            None
        }
    });
    ObservationReport {
        crossing,
        report: Report::new("second mode is symmetric below pi/3 and antisymmetric above", checks),
    }
}

/// A minimum read off the published plots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureMinimum {
    pub tone: Tone,
    pub scaling: Scaling,
    pub alpha: f64,
    pub value: f64,
}

pub const FIGURE_MINIMA: [FigureMinimum; 5] = [
    FigureMinimum { tone: Tone::Lambda1, scaling: Scaling::Side, alpha: 1.3614, value: 48.03 },
    FigureMinimum { tone: Tone::LambdaS, scaling: Scaling::Side, alpha: 1.2243, value: 120.04 },
    FigureMinimum { tone: Tone::LambdaS, scaling: Scaling::Perimeter, alpha: 0.8378, value: 1071.6 },
    FigureMinimum { tone: Tone::LambdaA, scaling: Scaling::Perimeter, alpha: 1.2566, value: 1073.7 },
    FigureMinimum { tone: Tone::LambdaS, scaling: Scaling::Area, alpha: 0.5960, value: 48.88 },
];

/// Location tolerance for plotted minima: the plots sample apertures with
/// spacing `pi/60`.
pub const FIGURE_ALPHA_TOLERANCE: f64 = PI / 60.0;

/// A closed-form value attained at a special aperture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactValue {
    pub label: &'static str,
    pub tone: Tone,
    pub scaling: Scaling,
    pub alpha: f64,
    pub value: f64,
}

pub fn exact_values() -> Vec<ExactValue> {
    let p2 = PI * PI;
    let s3 = 3f64.sqrt();
    let v = |label, tone, scaling, alpha, value| ExactValue { label, tone, scaling, alpha, value };
    vec![
        v("3*16pi^2/9", Tone::Lambda1, Scaling::Side, FRAC_PI_3, 48.0 * p2 / 9.0),
        v("7*16pi^2/9", Tone::LambdaA, Scaling::Side, FRAC_PI_3, 112.0 * p2 / 9.0),
        v("7*16pi^2/9", Tone::LambdaS, Scaling::Side, FRAC_PI_3, 112.0 * p2 / 9.0),
        v("10pi^2", Tone::LambdaA, Scaling::Side, FRAC_PI_2, 10.0 * p2),
        v("3*16pi^2/9", Tone::Lambda1, Scaling::Diameter, FRAC_PI_3, 48.0 * p2 / 9.0),
        v("7*16pi^2/9", Tone::LambdaA, Scaling::Diameter, FRAC_PI_3, 112.0 * p2 / 9.0),
        v("112pi^2", Tone::LambdaS, Scaling::Perimeter, FRAC_PI_3, 112.0 * p2),
        v("48pi^2", Tone::Lambda1, Scaling::Perimeter, FRAC_PI_3, 48.0 * p2),
        v("28pi^2/(3sqrt3)", Tone::LambdaS, Scaling::Area, FRAC_PI_3, 28.0 * p2 / (3.0 * s3)),
        v("4pi^2/sqrt3", Tone::Lambda1, Scaling::Area, FRAC_PI_3, 4.0 * p2 / s3),
        v("5pi^2", Tone::LambdaA, Scaling::Area, FRAC_PI_2, 5.0 * p2),
    ]
}

/// Plotted minima within relative tolerance `tol` (see [`FIGURE_TOLERANCE`])
/// and closed-form values at `pi/3` and `pi/2` within [`EXACT_TOLERANCE`].
pub fn verify_figure_values(table: &SweepTable, tol: f64) -> Report {
    let mut checks = Vec::new();
    for f in FIGURE_MINIMA {
        let name = format!("min {} ({})", f.tone.name(), f.scaling.name());
        match find_min(&table.rescale(f.scaling), f.tone) {
            Ok(m) => {
                checks.push(Check::close(format!("{name} = {}", f.value), m.value, f.value, tol * f.value));
                checks.push(Check::close(format!("{name} at alpha {}", f.alpha), m.alpha, f.alpha, FIGURE_ALPHA_TOLERANCE));
            }
            Err(_) => checks.push(Check {
                name: format!("{name} interior to the grid"),
                lhs: f64::NAN,
                rhs: f.value,
                margin: f64::NAN,
                verdict: Verdict::Fail,
            }),
        }
    }
    for e in exact_values() {
        let t = table.rescale(e.scaling);
        let name = format!("{} {} at {:.6} = {}", e.tone.name(), e.scaling.name(), e.alpha, e.label);
        checks.push(match t.position(e.alpha) {
            Some(i) => Check::close(name, t.rows[i].value(e.tone), e.value, EXACT_TOLERANCE * e.value),
            None => Check {
                name: format!("{name}: aperture not on grid"),
                lhs: f64::NAN,
                rhs: e.value,
                margin: f64::NAN,
                verdict: Verdict::Fail,
            },
        });
    }
    Report::new("plotted minima and closed-form values of the isosceles sweeps", checks)
}

/// Right triangle with hypotenuse 1 and smallest angle `alpha`.
pub fn right_triangle(alpha: f64) -> Result<Triangle> {
    if !(alpha > 0.0 && alpha <= FRAC_PI_4) {
        return Err(Error::domain("alpha", alpha, "(0, pi/4]"));
    }
    let (s, c) = alpha.sin_cos();
    Triangle::new([0.0, 0.0], [c, 0.0], [0.0, s])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RightRow {
    pub alpha: f64,
    pub lambda1_area: f64,
    /// Signed, against the extrapolation one level coarser.
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RightFamilyReport {
    pub rows: Vec<RightRow>,
    pub report: Report,
}

pub const RIGHT_FAMILY_START: f64 = 0.15;
pub const RIGHT_FAMILY_POINTS: usize = 24;

/// `(0.15, pi/4]` in equal steps, plus `pi/6`.
pub fn right_family_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (1..=RIGHT_FAMILY_POINTS)
        .map(|k| RIGHT_FAMILY_START + (FRAC_PI_4 - RIGHT_FAMILY_START) * k as f64 / RIGHT_FAMILY_POINTS as f64)
        .collect();
    g.push(FRAC_PI_6);
    g.sort_by(f64::total_cmp);
    g.dedup_by(|a, b| (*a - *b).abs() < SAME_ALPHA);
    g
}

/// `lambda_1 A` of right triangles is non-increasing in the smallest angle,
/// with closed-form endpoints: half a square at `pi/4` and half an
/// equilateral triangle at `pi/6`.
pub fn verify_right_family(level: u32) -> Result<RightFamilyReport> {
    if level < MIN_LEVEL {
        return Err(Error::domain("level", level as f64, "level >= 6"));
    }
    let rows = right_family_grid()
        .into_iter()
        .map(|alpha| {
            let t = right_triangle(alpha)?;
            let (v, e) = nested(&t, &BoundaryConditions::dirichlet(), 1, level)?;
            let area = t.area();
            Ok(RightRow {
                alpha,
                lambda1_area: v[0] * area,
                error: e[0] * area,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let p2 = PI * PI;
    let at = |alpha: f64| rows.iter().find(|r| (r.alpha - alpha).abs() < SAME_ALPHA);
    let mut checks = Vec::new();
    let mut worst: Option<Check> = None;
    for w in rows.windows(2) {
        let margin = w[0].lambda1_area - w[1].lambda1_area;
        let error = (w[0].error - w[1].error).abs();
        let c = Check {
            name: format!("non-increasing from {:.6} to {:.6}", w[0].alpha, w[1].alpha),
            lhs: w[0].lambda1_area,
            rhs: w[1].lambda1_area,
            margin,
            verdict: Verdict::from_bool(margin >= -3.0 * error),
        };
        if worst.as_ref().is_none_or(|x| c.margin < x.margin || c.verdict == Verdict::Fail) {
            worst = Some(c.clone());
        }
        if c.verdict != Verdict::Pass {
            checks.push(c);
        }
    }
    if let Some(w) = worst {
        checks.insert(0, Check { name: format!("smallest step: {}", w.name), ..w });
    }
    for (alpha, exact, label) in [
        (FRAC_PI_4, 2.5 * p2, "half square 5pi^2/2"),
        (FRAC_PI_6, 14.0 * 3f64.sqrt() * p2 / 9.0, "half equilateral 14sqrt3 pi^2/9"),
    ] {
        if let Some(r) = at(alpha) {
            checks.push(Check::close(
                format!("lambda1 A at {alpha:.6} = {label}"),
                r.lambda1_area,
                exact,
                EXACT_TOLERANCE * exact,
            ));
        }
    }
    Ok(RightFamilyReport {
        rows,
        report: Report::new("lambda1 A of right triangles is non-increasing in the smallest angle", checks),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn default_grid_shape() {
        let g = default_grid();
        assert_eq!(g.len(), DEFAULT_GRID_POINTS);
        assert!(g.windows(2).all(|w| w[1] - w[0] <= 0.02));
        for target in [FRAC_PI_3, FRAC_PI_2] {
            assert!(g.iter().any(|a| (a - target).abs() < 1e-12));
        }
    }

    #[test]
    fn scaling_factors() {
        let a = FRAC_PI_3;
        assert_relative_eq!(Scaling::Diameter.factor(a), 1.0, max_relative = 1e-14);
        assert_relative_eq!(Scaling::Perimeter.factor(a), 9.0, max_relative = 1e-14);
        assert_relative_eq!(Scaling::Area.factor(a), 3f64.sqrt() / 4.0, max_relative = 1e-14);
        assert_relative_eq!(Scaling::Diameter.factor(FRAC_PI_2), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn parabolic_minimum_is_exact_for_parabolas() {
        let rows = [0.3, 0.5, 0.6, 0.9]
            .iter()
            .map(|&a| {
                let v = 3.0 + 2.0 * (a - 0.55f64).powi(2);
                SweepRow {
                    alpha: a,
                    lambda1: v,
                    lambda_a: v + 1.0,
                    lambda_s: v + 2.0,
                    lambda1_error: 0.0,
                    lambda_a_error: 0.0,
                    lambda_s_error: 0.0,
                }
            })
            .collect();
        let t = SweepTable { scaling: Scaling::Side, level: 6, rows };
        let m = find_min(&t, Tone::Lambda1).unwrap();
        assert_relative_eq!(m.alpha, 0.55, max_relative = 1e-12);
        assert_relative_eq!(m.value, 3.0, max_relative = 1e-12);
        let mut edge = t.clone();
        edge.rows.truncate(2);
        assert!(matches!(find_min(&edge, Tone::Lambda1), Err(Error::MinimumAtEdge { .. })));
    }

    #[test]
    fn argument_validation() {
        assert!(sweep(&[1.0], Scaling::Side, 5).is_err());
        assert!(sweep(&[0.0], Scaling::Side, 6).is_err());
        assert!(right_triangle(0.9).is_err());
        assert!(verify_right_family(4).is_err());
        assert_eq!("perimeter".parse::<Scaling>().unwrap(), Scaling::Perimeter);
        assert!("volume".parse::<Scaling>().is_err());
    }

    #[test]
    fn right_triangle_angles() {
        let t = right_triangle(0.4).unwrap();
        let mut a = t.angles();
        a.sort_by(f64::total_cmp);
        assert_relative_eq!(a[0], 0.4, max_relative = 1e-12);
        assert_relative_eq!(a[2], FRAC_PI_2, max_relative = 1e-12);
    }

    #[test]
    fn special_apertures_match_closed_forms() {
        let t = sweep(&[FRAC_PI_3, FRAC_PI_2], Scaling::Side, MIN_LEVEL).unwrap();
        let p2 = PI * PI;
        assert_relative_eq!(t.rows[0].lambda1, 48.0 * p2 / 9.0, max_relative = 1e-5);
        assert_relative_eq!(t.rows[0].lambda_a, 112.0 * p2 / 9.0, max_relative = 1e-5);
        assert_relative_eq!(t.rows[0].lambda_s, 112.0 * p2 / 9.0, max_relative = 1e-5);
        assert_relative_eq!(t.rows[1].lambda_a, 10.0 * p2, max_relative = 1e-5);
        let area = t.rescale(Scaling::Area);
        assert_relative_eq!(area.rows[1].lambda_a, 5.0 * p2, max_relative = 1e-5);
    }
}
