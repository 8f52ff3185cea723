use std::fmt;
use std::io;

use serde::Serialize;
use trispec::certify;
use trispec::equilateral::{self, SpectrumClass};
use trispec::fem::{self, BoundaryConditions};
use trispec::geometry::{self, RectangleObjective};
use trispec::isosceles::{self, Scaling};
use trispec::report::{Check, Report};
use trispec::transplant;
use trispec::{FanTriangle, IsoscelesAperture, Triangle, Verdict};

use crate::args::*;
use crate::output::{self, render};

pub enum CliError {
    /// Bad flag values; reported like a usage error.
    Usage(String),
    Compute(trispec::Error),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<trispec::Error> for CliError {
    fn from(e: trispec::Error) -> Self {
        match e {
            trispec::Error::OutOfDomain { .. } | trispec::Error::InvalidArgument(_) | trispec::Error::DegenerateTriangle { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Compute(other),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Outcome {
    pub text: String,
    pub verdict: Option<Verdict>,
}

/// One check of one report, flattened for CSV.
#[derive(Serialize)]
struct CheckRow<'a> {
    claim: &'a str,
    name: &'a str,
    lhs: f64,
    rhs: f64,
    margin: f64,
    verdict: Verdict,
}

fn check_rows<'a>(reports: &[&'a Report]) -> Vec<CheckRow<'a>> {
    reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(move |c: &'a Check| CheckRow {
                claim: &r.claim,
                name: &c.name,
                lhs: c.lhs,
                rhs: c.rhs,
                margin: c.margin,
                verdict: c.verdict,
            })
        })
        .collect()
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let fmt = |table: bool| cli.format.unwrap_or(if table { Format::Csv } else { Format::Json });
    match &cli.command {
        Command::Spectrum(a) => spectrum(a, fmt(true)),
        Command::Lattice(a) => lattice(a, fmt(true)),
        Command::Verify(v) => verify(v, fmt(false)),
        Command::Fem(a) => fem_solve(a, fmt(false)),
        Command::Certify(a) => certify_cmd(a, fmt(false)),
        Command::Sweep(a) => sweep(a, fmt(true)),
        Command::Rectangle => rectangle(fmt(false)),
        Command::Gamma(a) => gamma(a, fmt(false)),
        Command::Geometry(a) => geometry_cmd(a, fmt(false)),
    }
}

fn class(c: ClassArg) -> SpectrumClass {
    match c {
        ClassArg::Full => SpectrumClass::Full,
        ClassArg::Antisym => SpectrumClass::Antisym,
        ClassArg::Sym => SpectrumClass::Sym,
    }
}

#[derive(Serialize)]
struct ClassRow {
    j: usize,
    m: u64,
    n: u64,
    q: u64,
    lambda: f64,
}

#[derive(Serialize)]
struct PairRow {
    j: usize,
    m: u64,
    n: u64,
    q: u64,
    am: u64,
    an: u64,
    aq: u64,
}

#[derive(Serialize)]
struct SpectrumPair {
    full: equilateral::SpectrumTable,
    antisym: equilateral::SpectrumTable,
}

fn spectrum(a: &SpectrumArgs, format: Format) -> Result<Outcome> {
    let text = match a.class {
        Some(c) => {
            let t = equilateral::enumerate(a.n, class(c), a.side)?;
            let rows: Vec<ClassRow> = t
                .rows
                .iter()
                .map(|r| ClassRow {
                    j: r.j,
                    m: r.mode.m,
                    n: r.mode.n,
                    q: r.q,
                    lambda: r.lambda,
                })
                .collect();
            render(format, "spectrum", None, &t, &rows)?
        }
        None => {
            let full = equilateral::enumerate(a.n, SpectrumClass::Full, a.side)?;
            let antisym = equilateral::enumerate(a.n, SpectrumClass::Antisym, a.side)?;
            let rows: Vec<PairRow> = full
                .rows
                .iter()
                .zip(&antisym.rows)
                .map(|(f, s)| PairRow {
                    j: f.j,
                    m: f.mode.m,
                    n: f.mode.n,
                    q: f.q,
                    am: s.mode.m,
                    an: s.mode.n,
                    aq: s.q,
                })
                .collect();
            render(format, "spectrum", None, &SpectrumPair { full, antisym }, &rows)?
        }
    };
    Ok(Outcome { text, verdict: None })
}

fn lattice(a: &LatticeArgs, format: Format) -> Result<Outcome> {
    let rows = equilateral::counting_sandwich(a.points, a.lambda_max)?;
    let verdict = Verdict::from_bool(rows.iter().all(|r| r.holds));
    let text = render(format, "lattice", Some(verdict), &rows, &rows)?;
    Ok(Outcome {
        text,
        verdict: Some(verdict),
    })
}

fn verify(v: &Verify, format: Format) -> Result<Outcome> {
    match v {
        Verify::LemmaExplicit => {
            let r = equilateral::verify_lemma_explicit();
            let verdict = Verdict::from_bool(r.pass);
            let text = render(format, "verify lemma-explicit", Some(verdict), &r, &r.entries)?;
            Ok(Outcome {
                text,
                verdict: Some(verdict),
            })
        }
        Verify::Compequilateral { n } => {
            let r = equilateral::verify_compequilateral(*n)?;
            let verdict = Verdict::from_bool(r.pass);
            let text = render(format, "verify compequilateral", Some(verdict), &r, &r.ratio_grid)?;
            Ok(Outcome {
                text,
                verdict: Some(verdict),
            })
        }
        Verify::Theorem1(a) => theorem1(a, format),
        Verify::Theorem2(a) => theorem2(a, format),
        Verify::Condch(a) => {
            let grid = transplant::open_grid(3f64.sqrt(), a.h, a.points);
            let r = transplant::condch_verify(a.h, &grid)?;
            report_outcome(format, "verify condch", &r, &[&r])
        }
        Verify::Monotonicity(a) => {
            let t = sweep_table(a)?;
            let result = MonotonicityResult {
                monotonicity: isosceles::verify_monotonicity(&t),
                mirror: isosceles::mirror_identity(&t, 10),
                corner: isosceles::corner_check(&t),
            };
            let reports = [&result.monotonicity, &result.mirror, &result.corner];
            report_outcome(format, "verify monotonicity", &result, &reports)
        }
        Verify::Observation(a) => {
            let t = sweep_table(a)?;
            let r = isosceles::observation_crossing(&t);
            report_outcome(format, "verify observation", &r, &[&r.report])
        }
        Verify::Figures(a) => {
            if !(a.tol > 0.0) {
                return Err(CliError::Usage(format!("--tol must be positive, got {}", a.tol)));
            }
            let t = sweep_table(&a.sweep)?;
            let r = isosceles::verify_figure_values(&t, a.tol);
            report_outcome(format, "verify figures", &r, &[&r])
        }
        Verify::RightFamily(a) => {
            let r = isosceles::verify_right_family(a.level)?;
            let verdict = r.report.verdict;
            let text = render(format, "verify right-family", Some(verdict), &r, &r.rows)?;
            Ok(Outcome {
                text,
                verdict: Some(verdict),
            })
        }
    }
}

#[derive(Serialize)]
struct MonotonicityResult {
    monotonicity: Report,
    mirror: Report,
    corner: Report,
}

fn report_outcome<T: Serialize>(format: Format, command: &str, result: &T, reports: &[&Report]) -> Result<Outcome> {
    let verdict = Verdict::all(reports.iter().map(|r| r.verdict));
    let text = render(format, command, Some(verdict), result, &check_rows(reports))?;
    Ok(Outcome {
        text,
        verdict: Some(verdict),
    })
}

#[derive(Serialize)]
struct Theorem1Row {
    a: f64,
    b: f64,
    n: usize,
    sum_d2: f64,
    sum_d2_error: f64,
    equilateral_target: f64,
    margin: f64,
    branch: Option<String>,
    verdict: Verdict,
}

fn theorem1(a: &Theorem1Args, format: Format) -> Result<Outcome> {
    let mut all = Vec::new();
    let mut rows = Vec::new();
    for &b in &a.b {
        let f = FanTriangle::new(a.a, b)?;
        for r in transplant::theorem1_sweep(&f, a.n, a.level)? {
            rows.push(Theorem1Row {
                a: a.a,
                b,
                n: r.n,
                sum_d2: r.sum_d2,
                sum_d2_error: r.sum_d2_error,
                equilateral_target: r.equilateral_target,
                margin: r.sum_d2 - r.equilateral_target,
                branch: r.report.branch.clone(),
                verdict: r.report.verdict,
            });
            all.push(r);
        }
    }
    let verdict = Verdict::all(all.iter().map(|r| r.report.verdict));
    let text = render(format, "verify theorem1", Some(verdict), &all, &rows)?;
    Ok(Outcome {
        text,
        verdict: Some(verdict),
    })
}

#[derive(Serialize)]
struct Theorem2Row {
    b: f64,
    lambda2_d2: f64,
    lambda2_d2_error: f64,
    target: f64,
    branch: Option<String>,
    verdict: Verdict,
}

fn theorem2(a: &Theorem2Args, format: Format) -> Result<Outcome> {
    let all = a
        .b
        .iter()
        .map(|&b| transplant::theorem2_verify(b, a.level))
        .collect::<trispec::Result<Vec<_>>>()?;
    let rows: Vec<Theorem2Row> = all
        .iter()
        .map(|r| Theorem2Row {
            b: r.b,
            lambda2_d2: r.lambda2_d2,
            lambda2_d2_error: r.lambda2_d2_error,
            target: transplant::SECOND_EIGENVALUE_TARGET,
            branch: r.report.branch.clone(),
            verdict: r.report.verdict,
        })
        .collect();
    let verdict = Verdict::all(all.iter().map(|r| r.report.verdict));
    let text = render(format, "verify theorem2", Some(verdict), &all, &rows)?;
    Ok(Outcome {
        text,
        verdict: Some(verdict),
    })
}

fn scaling(s: &str) -> Result<Scaling> {
    s.parse().map_err(|e: trispec::Error| CliError::Usage(e.to_string()))
}

fn sweep_table(a: &SweepArgs) -> Result<isosceles::SweepTable> {
    if !(a.alpha_min < a.alpha_max) || a.alpha_steps < 2 {
        return Err(CliError::Usage(
            "need --alpha-min < --alpha-max and --alpha-steps >= 2".into(),
        ));
    }
    let grid = isosceles::uniform_grid(a.alpha_min, a.alpha_max, a.alpha_steps);
    let s = scaling(&a.scaling)?;
    Ok(if a.no_refine {
        isosceles::sweep(&grid, s, a.level)?
    } else {
        isosceles::refined_sweep(&grid, s, a.level)?
    })
}

fn sweep(a: &SweepArgs, format: Format) -> Result<Outcome> {
    let t = sweep_table(a)?;
    let text = render(format, "sweep", None, &t, &t.rows)?;
    Ok(Outcome { text, verdict: None })
}

fn triangle(a: &TriangleArgs) -> Result<Triangle> {
    if let Some(v) = &a.vertices {
        if v.len() != 6 {
            return Err(CliError::Usage(format!("--vertices takes 6 coordinates, got {}", v.len())));
        }
        return Ok(Triangle::new([v[0], v[1]], [v[2], v[3]], [v[4], v[5]])?);
    }
    if let Some(alpha) = a.alpha {
        return Ok(IsoscelesAperture::new(alpha, 1.0)?.triangle());
    }
    Ok(FanTriangle::new(a.a.unwrap_or(0.0), a.b.unwrap_or(3f64.sqrt()))?.triangle())
}

#[derive(Serialize)]
struct FemResult {
    triangle: Triangle,
    boundary: BoundaryConditions,
    level: u32,
    values: Vec<f64>,
    errors: Vec<f64>,
    fine: Vec<f64>,
    coarse: Vec<f64>,
    residuals: Vec<f64>,
    iterations: usize,
}

#[derive(Serialize)]
struct FemRow {
    k: usize,
    value: f64,
    error: f64,
    fine: f64,
    coarse: f64,
}

fn fem_solve(a: &FemArgs, format: Format) -> Result<Outcome> {
    let t = triangle(&a.triangle)?;
    let bc = match a.bc {
        BcArg::Dirichlet => BoundaryConditions::dirichlet(),
        BcArg::NeumannFirst => BoundaryConditions::neumann_first(),
    };
    if a.k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let ex = fem::solve_extrapolated(&t, &bc, a.k, a.level)?;
    if let Some(path) = &a.mesh_out {
        output::write(Some(path), &fem::mesh_triangle(&t, a.level)?.to_text())?;
    }
    let rows: Vec<FemRow> = (0..a.k)
        .map(|i| FemRow {
            k: i + 1,
            value: ex.values[i],
            error: ex.errors[i],
            fine: ex.fine.values[i],
            coarse: ex.coarse.values[i],
        })
        .collect();
    let result = FemResult {
        triangle: t,
        boundary: bc,
        level: a.level,
        values: ex.values.clone(),
        errors: ex.errors.clone(),
        fine: ex.fine.values.clone(),
        coarse: ex.coarse.values.clone(),
        residuals: ex.fine.residuals.clone(),
        iterations: ex.fine.iterations,
    };
    let text = render(format, "fem", None, &result, &rows)?;
    Ok(Outcome { text, verdict: None })
}

fn certify_cmd(a: &CertifyArgs, format: Format) -> Result<Outcome> {
    let level = (a.level > 0).then_some(a.level);
    let r = certify::lemma62_verify(level)?;
    report_outcome(format, "certify", &r, &[&r.report])
}

#[derive(Serialize)]
struct RectangleResult {
    second_minimizer: f64,
    second_minimum: f64,
    sum_minimizer: f64,
    sum_minimum: f64,
    square_second: f64,
    square_sum: f64,
    report: Report,
}

/// The rectangle `[0, cos phi] x [0, sin phi]` has diameter 1; the square is
/// `phi = pi/4`.
fn rectangle(format: Format) -> Result<Outcome> {
    let quarter = std::f64::consts::FRAC_PI_4;
    let (p2, v2) = geometry::rectangle_minimizer(RectangleObjective::Second)?;
    let (ps, vs) = geometry::rectangle_minimizer(RectangleObjective::FirstPlusSecond)?;
    let sq2 = RectangleObjective::Second.eval(quarter)?;
    let sqs = RectangleObjective::FirstPlusSecond.eval(quarter)?;
    let report = Report::new(
        "the square does not minimize lambda_2 D^2 or (lambda_1 + lambda_2) D^2 among rectangles",
        vec![
            Check::less("argmin of lambda_2 D^2 below pi/4", p2, quarter),
            Check::less("argmin of (lambda_1 + lambda_2) D^2 below pi/4", ps, quarter),
            Check::less("minimum of lambda_2 D^2 below the square", v2, sq2),
            Check::less("minimum of (lambda_1 + lambda_2) D^2 below the square", vs, sqs),
        ],
    );
    let result = RectangleResult {
        second_minimizer: p2,
        second_minimum: v2,
        sum_minimizer: ps,
        sum_minimum: vs,
        square_second: sq2,
        square_sum: sqs,
        report,
    };
    report_outcome(format, "rectangle", &result, &[&result.report])
}

fn gamma(a: &GammaArgs, format: Format) -> Result<Outcome> {
    let f = FanTriangle::new(a.a, a.b)?;
    let r = fem::rayleigh_data(&f, a.n, a.level)?;
    let text = render(format, "gamma", None, &r, &[r])?;
    Ok(Outcome { text, verdict: None })
}

#[derive(Serialize)]
struct GeometryResult {
    triangle: Triangle,
    area: f64,
    perimeter: f64,
    diameter: f64,
    side_lengths: [f64; 3],
    angles: [f64; 3],
    polya_upper: f64,
    classical_lower: geometry::ClassicalLower,
    hull: geometry::HullPlacement,
}

#[derive(Serialize)]
struct GeometryRow {
    area: f64,
    perimeter: f64,
    diameter: f64,
    polya_upper: f64,
    polya_szego_lower: f64,
    makai_lower: f64,
    hull_b: f64,
}

fn geometry_cmd(a: &TriangleArgs, format: Format) -> Result<Outcome> {
    let t = triangle(a)?;
    let result = GeometryResult {
        triangle: t,
        area: t.area(),
        perimeter: t.perimeter(),
        diameter: t.diameter(),
        side_lengths: t.side_lengths(),
        angles: t.angles(),
        polya_upper: geometry::polya_upper(&t),
        classical_lower: geometry::classical_lower(&t),
        hull: geometry::hull_placement(&t),
    };
    let row = GeometryRow {
        area: result.area,
        perimeter: result.perimeter,
        diameter: result.diameter,
        polya_upper: result.polya_upper,
        polya_szego_lower: result.classical_lower.polya_szego,
        makai_lower: result.classical_lower.makai,
        hull_b: result.hull.hull.b,
    };
    let text = render(format, "geometry", None, &result, &[row])?;
    Ok(Outcome { text, verdict: None })
}
