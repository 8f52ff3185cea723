//! Conforming P1 finite elements for the Dirichlet Laplacian on a triangle.
//!
//! Discrete eigenvalues are upper bounds for the exact ones and decrease
//! under refinement. Values from two consecutive levels are combined by
//! Richardson extrapolation for an `O(h^2)` rate; the size of the correction
//! serves as the error estimate.

pub mod assemble;
pub mod eigen;
pub mod mesh;
pub mod sparse;

use nalgebra::DMatrix;
use serde::Serialize;

pub use assemble::{assemble, gradient_forms, GradientForms, Pencil};
pub use mesh::{mesh_triangle, Boundary, BoundaryConditions, Mesh};

use crate::equilateral::Symmetry;
use crate::error::{Error, Result};
use crate::geometry::{FanTriangle, IsoscelesAperture, Triangle};

/// Relative gap below which two discrete eigenvalues count as one cluster.
pub const CLUSTER_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct EigenResult {
    pub level: u32,
    pub values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
    /// `M`-orthonormal eigenvectors over all mesh vertices (zero on
    /// Dirichlet sides), one per column.
    #[serde(skip)]
    pub vectors: DMatrix<f64>,
}

fn solve_with_start(mesh: &Mesh, bc: &BoundaryConditions, k: usize, start: Option<&DMatrix<f64>>) -> Result<EigenResult> {
    let pencil = assemble(mesh, bc);
    let restricted = start.map(|s| {
        DMatrix::from_fn(pencil.dim(), s.ncols(), |r, c| s[(pencil.dofs[r], c)])
    });
    let pairs = eigen::lowest(&pencil, k, restricted.as_ref())?;
    let nv = mesh.vertices.len();
    let mut vectors = DMatrix::zeros(nv, k);
    for j in 0..k {
        let full = pencil.expand(pairs.vectors.column(j).as_slice(), nv);
        vectors.column_mut(j).copy_from_slice(&full);
    }
    Ok(EigenResult {
        level: mesh.level,
        values: pairs.values,
        residuals: pairs.residuals,
        iterations: pairs.iterations,
        vectors,
    })
}

/// Smallest `k` eigenpairs on `mesh` with the given side conditions.
pub fn solve_lowest(mesh: &Mesh, bc: &BoundaryConditions, k: usize) -> Result<EigenResult> {
    solve_with_start(mesh, bc, k, None)
}

/// `lambda* = lambda_fine + (lambda_fine - lambda_coarse) / 3`.
pub fn extrapolate(coarse: &EigenResult, fine: &EigenResult) -> Result<Vec<f64>> {
    if fine.level != coarse.level + 1 {
        return Err(Error::InvalidArgument(format!(
            "extrapolation needs consecutive levels, got {} and {}",
            coarse.level, fine.level
        )));
    }
    Ok(richardson(&coarse.values, &fine.values))
}

fn richardson(coarse: &[f64], fine: &[f64]) -> Vec<f64> {
    coarse.iter().zip(fine).map(|(c, f)| f + (f - c) / 3.0).collect()
}

/// Eigenvalues from two consecutive levels with their extrapolation.
#[derive(Debug, Clone, Serialize)]
pub struct Extrapolated {
    pub coarse: EigenResult,
    pub fine: EigenResult,
    pub values: Vec<f64>,
    /// `|lambda* - lambda_fine|` per eigenvalue.
    pub errors: Vec<f64>,
}

impl Extrapolated {
    /// Extrapolated `lambda_1 + ... + lambda_n` and its error estimate.
    pub fn sum(&self, n: usize) -> (f64, f64) {
        let c: f64 = self.coarse.values[..n].iter().sum();
        let f: f64 = self.fine.values[..n].iter().sum();
        let v = f + (f - c) / 3.0;
        (v, (v - f).abs())
    }
}

/// Solves at `level - 1` and `level` (warm-started from the coarse
/// eigenvectors) and extrapolates.
pub fn solve_extrapolated(t: &Triangle, bc: &BoundaryConditions, k: usize, level: u32) -> Result<Extrapolated> {
    if level == 0 {
        return Err(Error::domain("level", 0.0, "level >= 1"));
    }
    let coarse_mesh = mesh_triangle(t, level - 1)?;
    let fine_mesh = mesh_triangle(t, level)?;
    let coarse = solve_lowest(&coarse_mesh, bc, k)?;
    let mut start = DMatrix::zeros(fine_mesh.vertices.len(), k);
    for j in 0..k {
        let p = fine_mesh.prolong(coarse.vectors.column(j).as_slice())?;
        start.column_mut(j).copy_from_slice(&p);
    }
    let fine = solve_with_start(&fine_mesh, bc, k, Some(&start))?;
    let values = extrapolate(&coarse, &fine)?;
    let errors = values.iter().zip(&fine.values).map(|(v, f)| (v - f).abs()).collect();
    Ok(Extrapolated {
        coarse,
        fine,
        values,
        errors,
    })
}

/// Dirichlet eigenvalues of `t`, extrapolated from `level - 1` and `level`.
pub fn dirichlet_eigenvalues(t: &Triangle, k: usize, level: u32) -> Result<Extrapolated> {
    solve_extrapolated(t, &BoundaryConditions::dirichlet(), k, level)
}

/// Energy fractions of the first `n` eigenfunctions:
/// `gamma = sum int u_y^2 / sum int |grad u|^2` and
/// `delta = sum int u_x u_y / sum int |grad u|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayleighData {
    pub n: usize,
    pub gamma: f64,
    pub delta: f64,
    pub gamma_error: f64,
    pub delta_error: f64,
    pub level: u32,
}

fn check_cluster(values: &[f64], n: usize) -> Result<()> {
    let gap = (values[n] - values[n - 1]) / values[n - 1];
    if gap < CLUSTER_GAP {
        Err(Error::SplitCluster { n, gap })
    } else {
        Ok(())
    }
}

fn energy_fractions(mesh: &Mesh, r: &EigenResult, n: usize) -> (f64, f64) {
    let total = (0..n)
        .map(|j| gradient_forms(mesh, r.vectors.column(j).as_slice()))
        .fold(GradientForms::default(), |a, b| a + b);
    (total.yy / total.energy(), total.xy / total.energy())
}

pub fn rayleigh_data(f: &FanTriangle, n: usize, level: u32) -> Result<RayleighData> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let t = f.triangle();
    let ex = dirichlet_eigenvalues(&t, n + 1, level)?;
    rayleigh_data_from(&t, &ex, n)
}

/// Rayleigh data from an existing two-level solve of `t` with at least
/// `n + 1` eigenpairs.
pub fn rayleigh_data_from(t: &Triangle, ex: &Extrapolated, n: usize) -> Result<RayleighData> {
    if n == 0 || n >= ex.fine.values.len() {
        return Err(Error::InvalidArgument(format!(
            "n = {n} needs between 1 and {} computed eigenpairs",
            ex.fine.values.len().saturating_sub(1)
        )));
    }
    check_cluster(&ex.coarse.values, n)?;
    check_cluster(&ex.fine.values, n)?;
    let level = ex.fine.level;
    let (gc, dc) = energy_fractions(&mesh_triangle(t, level - 1)?, &ex.coarse, n);
    let (gf, df) = energy_fractions(&mesh_triangle(t, level)?, &ex.fine, n);
    let gamma = gf + (gf - gc) / 3.0;
    let delta = df + (df - dc) / 3.0;
    Ok(RayleighData {
        n,
        gamma,
        delta,
        gamma_error: (gamma - gf).abs(),
        delta_error: (delta - df).abs(),
        level,
    })
}

/// Tones of an isosceles triangle split by symmetry, computed on the half
/// triangle: `lambda_a` with a Dirichlet condition on the symmetry line,
/// `lambda_1` and `lambda_s` with a Neumann condition there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryTones {
    pub lambda1: f64,
    pub lambda_a: f64,
    pub lambda_s: f64,
    pub lambda1_error: f64,
    pub lambda_a_error: f64,
    pub lambda_s_error: f64,
}

pub fn symmetry_tones(t: &IsoscelesAperture, level: u32) -> Result<SymmetryTones> {
    let half = t.half_triangle();
    let anti = solve_extrapolated(&half, &BoundaryConditions::dirichlet(), 1, level)?;
    let sym = solve_extrapolated(&half, &BoundaryConditions::neumann_first(), 2, level)?;
    Ok(SymmetryTones {
        lambda1: sym.values[0],
        lambda_a: anti.values[0],
        lambda_s: sym.values[1],
        lambda1_error: sym.errors[0],
        lambda_a_error: anti.errors[0],
        lambda_s_error: sym.errors[1],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondMode {
    pub class: Symmetry,
    pub tones: SymmetryTones,
}

/// Symmetry class of the second Dirichlet eigenfunction of `t`.
pub fn classify_second_mode(t: &IsoscelesAperture, level: u32) -> Result<SecondMode> {
    if (t.alpha - std::f64::consts::FRAC_PI_3).abs() < 1e-6 {
        return Err(Error::InvalidArgument(
            "aperture pi/3: the second eigenvalue of the equilateral triangle is double".into(),
        ));
    }
    let tones = symmetry_tones(t, level)?;
    let class = if tones.lambda_s < tones.lambda_a {
        Symmetry::Symmetric
    } else {
        Symmetry::Antisymmetric
    };
    Ok(SecondMode { class, tones })
}
