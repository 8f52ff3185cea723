//! Smallest eigenpairs of a sparse symmetric definite pencil `K u = lambda M u`.
//!
//! Block inverse iteration at shift zero: each sweep applies `K^{-1} M` to a
//! block of `p > k` vectors and performs a Rayleigh-Ritz projection on the
//! result. A pair is accepted when `||u - lambda K^{-1} M u||_M <= tol`
//! for an `M`-normalized `u`. Small problems are solved densely.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::assemble::Pencil;
use super::sparse::SkylineCholesky;
use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 500;
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
const DENSE_LIMIT: usize = 250;
const SEED: u64 = 0x7269_7370_6563;

#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    /// `M`-orthonormal columns on the free vertices.
    pub vectors: DMatrix<f64>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

fn sorted_eigen(a: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let sym = (&a + a.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(a.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Fixes the sign of each column so that its largest entry is positive.
fn normalize_signs(v: &mut DMatrix<f64>) {
    for j in 0..v.ncols() {
        let mut col = v.column_mut(j);
        let (mut best, mut idx) = (0.0, 0);
        for (i, x) in col.iter().enumerate() {
            if x.abs() > best + 1e-12 * best {
                best = x.abs();
                idx = i;
            }
        }
        if col[idx] < 0.0 {
            col.neg_mut();
        }
    }
}

fn m_norms(pencil: &Pencil, v: &DMatrix<f64>) -> Vec<f64> {
    (0..v.ncols())
        .map(|j| pencil.mass.quad_form(v.column(j).as_slice()).max(0.0).sqrt())
        .collect()
}

/// Rayleigh-Ritz on the span of `y`: returns `M`-orthonormal Ritz vectors
/// and ascending Ritz values.
fn rayleigh_ritz(pencil: &Pencil, y: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let mut y = y.clone();
    for (j, s) in m_norms(pencil, &y).into_iter().enumerate() {
        if s > 0.0 {
            y.column_mut(j).scale_mut(1.0 / s);
        }
    }
    let gram = y.transpose() * pencil.mass.mul_mat(&y);
    let (d, v) = sorted_eigen(gram);
    let dmax = d.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..d.len()).filter(|&i| d[i] > 1e-12 * dmax).collect();
    let basis = DMatrix::from_fn(v.nrows(), keep.len(), |r, c| v[(r, keep[c])] / d[keep[c]].sqrt());
    let w = &y * basis;
    let h = w.transpose() * pencil.stiffness.mul_mat(&w);
    let (theta, z) = sorted_eigen(h);
    (theta, w * z)
}

fn residuals(pencil: &Pencil, x: &DMatrix<f64>, y: &DMatrix<f64>, theta: &[f64], k: usize) -> Vec<f64> {
    (0..k)
        .map(|i| {
            let r = x.column(i) - y.column(i) * theta[i];
            pencil.mass.quad_form(r.as_slice()).max(0.0).sqrt()
        })
        .collect()
}

fn dense(pencil: &Pencil, k: usize) -> Result<Eigenpairs> {
    let kd = pencil.stiffness.to_dense();
    let md = pencil.mass.to_dense();
    let chol = md
        .clone()
        .cholesky()
        .ok_or_else(|| Error::InvalidArgument("mass matrix is not positive definite".into()))?;
    let l = chol.l();
    let linv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidArgument("singular mass factor".into()))?;
    let c = &linv * &kd * linv.transpose();
    let (values, z) = sorted_eigen(c);
    let mut vectors = linv.transpose() * z.columns(0, k);
    normalize_signs(&mut vectors);
    let kinv = kd
        .clone()
        .cholesky()
        .ok_or_else(|| Error::InvalidArgument("stiffness matrix is not positive definite".into()))?;
    let y = kinv.solve(&(&md * &vectors));
    let values: Vec<f64> = values[..k].to_vec();
    let residuals = residuals(pencil, &vectors, &y, &values, k);
    Ok(Eigenpairs {
        values,
        vectors,
        residuals,
        iterations: 0,
    })
}

/// Lowest `k` eigenpairs. `start` columns, if given, seed the iteration
/// block; the rest of the block is filled with seeded random vectors.
pub fn lowest(pencil: &Pencil, k: usize, start: Option<&DMatrix<f64>>) -> Result<Eigenpairs> {
    let n = pencil.dim();
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "requested {k} eigenpairs from a problem with {n} free vertices (need 1 <= k < {n})"
        )));
    }
    let p = (k + k.max(8)).min(n);
    if n <= DENSE_LIMIT || 2 * p >= n {
        return dense(pencil, k);
    }
    let factor = SkylineCholesky::factor(&pencil.stiffness)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut x0 = DMatrix::from_fn(n, p, |_, _| rng.random::<f64>() - 0.5);
    if let Some(s) = start {
        let cols = s.ncols().min(p);
        x0.columns_mut(0, cols).copy_from(&s.columns(0, cols));
    }
    let (mut theta, mut x) = rayleigh_ritz(pencil, &x0);
    let mut worst = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let y = factor.solve_mat(&pencil.mass.mul_mat(&x));
        let res = residuals(pencil, &x, &y, &theta, k);
        worst = res.iter().cloned().fold(0.0, f64::max);
        if worst <= RESIDUAL_TOLERANCE {
            let mut vectors = x.columns(0, k).into_owned();
            normalize_signs(&mut vectors);
            return Ok(Eigenpairs {
                values: theta[..k].to_vec(),
                vectors,
                residuals: res,
                iterations: it,
            });
        }
        let (t, xn) = rayleigh_ritz(pencil, &y);
        if t.len() < k {
            return Err(Error::NoConvergence {
                iterations: it,
                residual: worst,
            });
        }
        theta = t;
        x = xn;
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        residual: worst,
    })
}
