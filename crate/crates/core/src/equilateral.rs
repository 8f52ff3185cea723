//! Exact spectrum of the equilateral triangle.
//!
//! For sidelength `s` the Dirichlet eigenvalues are
//! `sigma(m, n) = (16 pi^2 / 9) (m^2 + mn + n^2) / s^2` for `m, n >= 1`.
//! Pairs with `m != n` come in mirror pairs, one symmetric and one
//! antisymmetric mode; antisymmetric modes are indexed here by `m < n`,
//! symmetric ones by `m >= n`.
//!
//! Everything that decides an inequality between eigenvalues works on the
//! integer quadratic form `q = m^2 + mn + n^2`, never on floats.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `16 pi^2 / 9`, the eigenvalue unit of the unit-side equilateral triangle.
pub const SIGMA_UNIT: f64 = 16.0 * PI * PI / 9.0;

/// Relative guard band for comparing a float `lambda` against an exact
/// eigenvalue: modes within `COUNT_GUARD * lambda` below `lambda` are treated
/// as equal to it and therefore not counted.
pub const COUNT_GUARD: f64 = 1e-13;

/// Validity threshold `48 pi^2` of the counting bounds.
pub const COUNTING_THRESHOLD: f64 = 48.0 * PI * PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumClass {
    Full,
    Antisym,
    Sym,
}

impl SpectrumClass {
    fn admits(self, m: u64, n: u64) -> bool {
        match self {
            SpectrumClass::Full => true,
            SpectrumClass::Antisym => m < n,
            SpectrumClass::Sym => m >= n,
        }
    }
}

impl std::str::FromStr for SpectrumClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(SpectrumClass::Full),
            "antisym" => Ok(SpectrumClass::Antisym),
            "sym" => Ok(SpectrumClass::Sym),
            other => Err(Error::InvalidArgument(format!(
                "unknown spectrum class {other:?} (expected full, antisym or sym)"
            ))),
        }
    }
}

/// Mode `(m, n)` of the equilateral triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub m: u64,
    pub n: u64,
}

impl ModeIndex {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument(format!(
                "mode indices must be positive, got ({m}, {n})"
            )));
        }
        Ok(ModeIndex { m, n })
    }

    /// The quadratic form `m^2 + mn + n^2`.
    pub fn q(&self) -> u64 {
        self.m * self.m + self.m * self.n + self.n * self.n
    }

    pub fn symmetry(&self) -> Symmetry {
        if self.m < self.n {
            Symmetry::Antisymmetric
        } else {
            Symmetry::Symmetric
        }
    }

    pub fn eigenvalue(&self, sidelength: f64) -> f64 {
        SIGMA_UNIT * self.q() as f64 / (sidelength * sidelength)
    }
}

/// `sigma_{m,n}` at the given sidelength.
pub fn sigma(m: u64, n: u64, sidelength: f64) -> Result<f64> {
    if !(sidelength > 0.0) {
        return Err(Error::domain("sidelength", sidelength, "s > 0"));
    }
    Ok(ModeIndex::new(m, n)?.eigenvalue(sidelength))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub j: usize,
    pub mode: ModeIndex,
    pub q: u64,
    pub lambda: f64,
}

/// The first eigenvalues of one symmetry class, ordered by `q` and then by
/// ascending `m` inside a degenerate cluster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub class: SpectrumClass,
    pub sidelength: f64,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    pub fn q_values(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.q).collect()
    }

    pub fn lambdas(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.lambda).collect()
    }

    /// Sum of the first `n` quadratic-form values.
    pub fn q_partial_sum(&self, n: usize) -> u64 {
        self.rows.iter().take(n).map(|r| r.q).sum()
    }
}

fn modes_below(bound: u64, class: SpectrumClass) -> Vec<ModeIndex> {
    let mut out = Vec::new();
    let mut m = 1u64;
    // q >= m^2 + m + 1 > m^2
    while m * m < bound {
        let mut n = 1u64;
        loop {
            let q = m * m + m * n + n * n;
            if q >= bound {
                break;
            }
            if class.admits(m, n) {
                out.push(ModeIndex { m, n });
            }
            n += 1;
        }
        m += 1;
    }
    out
}

pub fn enumerate(n_max: usize, class: SpectrumClass, sidelength: f64) -> Result<SpectrumTable> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    if !(sidelength > 0.0) {
        return Err(Error::domain("sidelength", sidelength, "s > 0"));
    }
    // All modes with q < bound are present, so the first n_max after sorting
    // are exactly the first n_max eigenvalues.
    let mut bound = 8u64;
    let mut modes = loop {
        let modes = modes_below(bound, class);
        if modes.len() >= n_max {
            break modes;
        }
        bound *= 2;
    };
    modes.sort_by_key(|md| (md.q(), md.m));
    let rows = modes
        .into_iter()
        .take(n_max)
        .enumerate()
        .map(|(i, mode)| SpectrumRow {
            j: i + 1,
            mode,
            q: mode.q(),
            lambda: mode.eigenvalue(sidelength),
        })
        .collect();
    Ok(SpectrumTable {
        class,
        sidelength,
        rows,
    })
}

/// `N(lambda) = #{j : lambda_j(E_1) < lambda}` by direct lattice enumeration
/// over `1 <= m, n <= ceil(R)`, `R = (3 / 4 pi) sqrt(lambda)`.
pub fn counting_exact(lambda: f64, class: SpectrumClass) -> u64 {
    if !(lambda > 0.0) {
        return 0;
    }
    let radius = 3.0 / (4.0 * PI) * lambda.sqrt();
    let top = radius.ceil() as u64 + 1;
    let mut count = 0u64;
    for m in 1..=top {
        for n in 1..=top {
            if !class.admits(m, n) {
                continue;
            }
            let sigma = SIGMA_UNIT * (m * m + m * n + n * n) as f64;
            if lambda - sigma > COUNT_GUARD * lambda {
                count += 1;
            }
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountingBounds {
    pub lower: f64,
    pub upper: f64,
}

fn check_counting_domain(lambda: f64) -> Result<()> {
    if lambda > COUNTING_THRESHOLD && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("lambda", lambda, "lambda > 48 pi^2"))
    }
}

/// Two-sided bound on `N(lambda)` valid for `lambda > 48 pi^2`.
pub fn counting_bounds(lambda: f64) -> Result<CountingBounds> {
    check_counting_domain(lambda)?;
    let s3 = 3f64.sqrt();
    let root = lambda.sqrt();
    Ok(CountingBounds {
        lower: s3 / (16.0 * PI) * lambda - (6.0 - s3) / (4.0 * PI) * root - 0.5,
        upper: s3 / (16.0 * PI) * lambda - s3 / (4.0 * PI) * root + 0.5,
    })
}

/// Upper bound on the antisymmetric counting function, `lambda > 48 pi^2`.
pub fn antisym_counting_upper(lambda: f64) -> Result<f64> {
    check_counting_domain(lambda)?;
    let s3 = 3f64.sqrt();
    Ok(s3 / (32.0 * PI) * lambda - s3 / (4.0 * PI) * lambda.sqrt() + 0.75)
}

/// The counting functions at one `lambda` with their bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountingRow {
    pub lambda: f64,
    pub exact: u64,
    pub lower: f64,
    pub upper: f64,
    pub antisym_exact: u64,
    pub antisym_upper: f64,
    /// `lower < exact < upper` and `antisym_exact < antisym_upper`.
    pub holds: bool,
}

/// Counting functions and bounds at `points` log-spaced values in
/// `(48 pi^2, lambda_max]`, the last one equal to `lambda_max`.
pub fn counting_sandwich(points: usize, lambda_max: f64) -> Result<Vec<CountingRow>> {
    check_counting_domain(lambda_max)?;
    if points == 0 {
        return Err(Error::InvalidArgument("points must be at least 1".into()));
    }
    let ratio = lambda_max / COUNTING_THRESHOLD;
    (1..=points)
        .map(|k| {
            let lambda = if k == points {
                lambda_max
            } else {
                COUNTING_THRESHOLD * ratio.powf(k as f64 / points as f64)
            };
            let b = counting_bounds(lambda)?;
            let antisym_upper = antisym_counting_upper(lambda)?;
            let exact = counting_exact(lambda, SpectrumClass::Full);
            let antisym_exact = counting_exact(lambda, SpectrumClass::Antisym);
            let e = exact as f64;
            Ok(CountingRow {
                lambda,
                exact,
                lower: b.lower,
                upper: b.upper,
                antisym_exact,
                antisym_upper,
                holds: b.lower < e && e < b.upper && (antisym_exact as f64) < antisym_upper,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueBounds {
    pub lower: f64,
    /// The upper bound in closed form before rounding of its constants.
    pub upper_closed: f64,
    /// `29.03 j + 9.9 sqrt(29.03 j + 39) + 64`.
    pub upper: f64,
}

/// Bounds on `lambda_j(E_1)` for `j >= 17`.
pub fn eigenvalue_bounds(j: u64) -> Result<EigenvalueBounds> {
    if j < 17 {
        return Err(Error::domain("j", j as f64, "j >= 17"));
    }
    let s3 = 3f64.sqrt();
    let jf = j as f64;
    let lower = 16.0 * PI / s3 * (jf - 0.5) + 8.0 * (4.0 * PI / s3 * (jf - 0.5) + 1.0).sqrt() + 8.0;
    let shift = 13.0 - 4.0 * s3;
    let upper_closed = 16.0 * PI / s3 * (jf + 0.5)
        + 4.0 / s3 * (6.0 - s3) * (16.0 * PI / s3 * (jf + 0.5) + 4.0 * shift).sqrt()
        + 8.0 * shift;
    let upper = 29.03 * jf + 9.9 * (29.03 * jf + 39.0).sqrt() + 64.0;
    Ok(EigenvalueBounds {
        lower,
        upper_closed,
        upper,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntisymBounds {
    pub lower_closed: f64,
    /// `58 j + 8 sqrt(58 j - 28) - 12`.
    pub lower: f64,
}

/// Lower bounds on `lambda^a_j(E_1)` for `j >= 9`.
pub fn antisym_bounds(j: u64) -> Result<AntisymBounds> {
    if j < 9 {
        return Err(Error::domain("j", j as f64, "j >= 9"));
    }
    let s3 = 3f64.sqrt();
    let jf = j as f64;
    let t = 32.0 * PI / s3 * (jf - 0.75);
    Ok(AntisymBounds {
        lower_closed: t + 8.0 * (t + 16.0).sqrt() + 32.0,
        lower: 58.0 * jf + 8.0 * (58.0 * jf - 28.0).sqrt() - 12.0,
    })
}

/// Lower bound on `lambda^a_n / lambda_n` for `n >= 110` from the two
/// numeric bounds above.
pub fn tail_ratio(n: u64) -> f64 {
    let nf = n as f64;
    (58.0 * nf + 8.0 * (58.0 * nf - 28.0).sqrt() - 12.0)
        / (29.03 * nf + 9.9 * (29.03 * nf + 39.0).sqrt() + 64.0)
}

/// Number of first eigenvalues covered by the explicit comparison.
pub const EXPLICIT_RANGE: usize = 110;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitEntry {
    pub j: usize,
    pub q: u64,
    pub q_antisym: u64,
    /// `6 q^a_j > 11 q_j`
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaExplicitReport {
    pub entries: Vec<ExplicitEntry>,
    /// Indices where `6 q^a_j <= 11 q_j`.
    pub exceptions: Vec<usize>,
    /// `6 (q^a_1 + .. + q^a_4)` and `11 (q_1 + .. + q_4)`.
    pub partial_sum_lhs: u64,
    pub partial_sum_rhs: u64,
    pub partial_sum_holds: bool,
    /// Exceptions are exactly `[4]` and the partial-sum inequality holds.
    pub pass: bool,
}

/// Compare `lambda^a_j` against `11/6 lambda_j` for `j <= 110` in integers.
pub fn verify_lemma_explicit() -> LemmaExplicitReport {
    let full = enumerate(EXPLICIT_RANGE, SpectrumClass::Full, 1.0).expect("n_max > 0");
    let anti = enumerate(EXPLICIT_RANGE, SpectrumClass::Antisym, 1.0).expect("n_max > 0");
    let entries: Vec<ExplicitEntry> = full
        .rows
        .iter()
        .zip(&anti.rows)
        .map(|(f, a)| ExplicitEntry {
            j: f.j,
            q: f.q,
            q_antisym: a.q,
            holds: 6 * a.q > 11 * f.q,
        })
        .collect();
    let exceptions: Vec<usize> = entries.iter().filter(|e| !e.holds).map(|e| e.j).collect();
    let partial_sum_lhs = 6 * anti.q_partial_sum(4);
    let partial_sum_rhs = 11 * full.q_partial_sum(4);
    let partial_sum_holds = partial_sum_lhs > partial_sum_rhs;
    let pass = exceptions == [4] && partial_sum_holds;
    LemmaExplicitReport {
        entries,
        exceptions,
        partial_sum_lhs,
        partial_sum_rhs,
        partial_sum_holds,
        pass,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioPoint {
    pub n: u64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompEquilateralReport {
    /// Largest `n` checked by exact partial sums.
    pub exact_up_to: usize,
    /// First `n` where `6 Lambda^a_n <= 11 Lambda_n` in integers.
    pub exact_first_failure: Option<usize>,
    /// The tail-ratio bound evaluated on the grid.
    pub ratio_grid: Vec<RatioPoint>,
    pub ratio_at_110: f64,
    pub ratio_first_failure: Option<u64>,
    pub pass: bool,
}

/// Geometric grid of integers in `[lo, hi]`, including both ends.
pub fn geometric_grid(lo: u64, hi: u64, points: usize) -> Vec<u64> {
    let mut out: Vec<u64> = (0..points)
        .map(|i| {
            let t = i as f64 / (points.max(2) - 1) as f64;
            ((lo as f64) * (hi as f64 / lo as f64).powf(t)).round() as u64
        })
        .map(|n| n.clamp(lo, hi))
        .collect();
    out.dedup();
    out
}

/// `Lambda^a_n > 11/6 Lambda_n` for all n: exact sums up to
/// `min(n_max, 110)`, then the tail-ratio bound on a grid up to `10^6`.
pub fn verify_compequilateral(n_max: usize) -> Result<CompEquilateralReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let upto = n_max.min(EXPLICIT_RANGE);
    let full = enumerate(upto, SpectrumClass::Full, 1.0)?;
    let anti = enumerate(upto, SpectrumClass::Antisym, 1.0)?;
    let mut sum_full = 0u64;
    let mut sum_anti = 0u64;
    let mut exact_first_failure = None;
    for (f, a) in full.rows.iter().zip(&anti.rows) {
        sum_full += f.q;
        sum_anti += a.q;
        if 6 * sum_anti <= 11 * sum_full && exact_first_failure.is_none() {
            exact_first_failure = Some(f.j);
        }
    }
    let threshold = 11.0 / 6.0;
    let ratio_grid: Vec<RatioPoint> = geometric_grid(EXPLICIT_RANGE as u64, 1_000_000, 400)
        .into_iter()
        .map(|n| RatioPoint {
            n,
            ratio: tail_ratio(n),
        })
        .collect();
    let ratio_first_failure = ratio_grid.iter().find(|p| p.ratio <= threshold).map(|p| p.n);
    let ratio_at_110 = tail_ratio(EXPLICIT_RANGE as u64);
    let pass = exact_first_failure.is_none() && ratio_first_failure.is_none() && ratio_at_110 > threshold;
    Ok(CompEquilateralReport {
        exact_up_to: upto,
        exact_first_failure,
        ratio_grid,
        ratio_at_110,
        ratio_first_failure,
        pass,
    })
}

/// `Lambda_n D^2` of any equilateral triangle (scale invariant).
pub fn equilateral_sum_target(n: usize) -> Result<f64> {
    Ok(SIGMA_UNIT * enumerate(n, SpectrumClass::Full, 1.0)?.q_partial_sum(n) as f64)
}

/// `Lambda_n D^2` of the 30-60-90 triangle, whose spectrum is the
/// antisymmetric spectrum of the equilateral triangle it halves.
pub fn right_sum_target(n: usize) -> Result<f64> {
    // Half of the side-s equilateral has diameter s.
    Ok(SIGMA_UNIT * enumerate(n, SpectrumClass::Antisym, 1.0)?.q_partial_sum(n) as f64)
}
