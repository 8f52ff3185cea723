//! Compressed sparse rows and a profile (skyline) Cholesky factorization.
//!
//! Meshes are numbered row by row on a triangular lattice, so the bandwidth
//! is about one lattice row and a profile factorization has no fill outside
//! the band.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Symmetric matrix stored with both triangles in CSR form.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds the matrix from `(row, col, value)` triplets; duplicates are
    /// summed in input order.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Self {
        let mut counts = vec![0usize; n + 1];
        for &(r, _, _) in triplets {
            counts[r + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut cursor = counts.clone();
        let mut cols = vec![0usize; triplets.len()];
        let mut vals = vec![0f64; triplets.len()];
        for &(r, c, v) in triplets {
            cols[cursor[r]] = c;
            vals[cursor[r]] = v;
            cursor[r] += 1;
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        let mut row: Vec<(usize, f64)> = Vec::new();
        for i in 0..n {
            row.clear();
            row.extend((counts[i]..counts[i + 1]).map(|p| (cols[p], vals[p])));
            // stable sort keeps summation order deterministic
            row.sort_by_key(|&(c, _)| c);
            for &(c, v) in &row {
                if col_idx.len() > row_ptr[i] && *col_idx.last().unwrap() == c {
                    *values.last_mut().unwrap() += v;
                } else {
                    col_idx.push(c);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        CsrMatrix {
            n,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |p| (self.col_idx[p], self.values[p]))
    }

    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate().take(self.n) {
            *yi = self.row(i).map(|(c, v)| v * x[c]).sum();
        }
    }

    pub fn mul_mat(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let mut y = DMatrix::zeros(self.n, x.ncols());
        for j in 0..x.ncols() {
            let xc = x.column(j);
            let mut yc = y.column_mut(j);
            self.mul_vec(xc.as_slice(), yc.as_mut_slice());
        }
        y
    }

    pub fn quad_form(&self, x: &[f64]) -> f64 {
        (0..self.n)
            .map(|i| x[i] * self.row(i).map(|(c, v)| v * x[c]).sum::<f64>())
            .sum()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for (c, v) in self.row(i) {
                d[(i, c)] = v;
            }
        }
        d
    }
}

/// `A = L L^T` with `L` stored row by row from the first structurally
/// nonzero column to the diagonal.
#[derive(Debug, Clone)]
pub struct SkylineCholesky {
    first: Vec<usize>,
    start: Vec<usize>,
    data: Vec<f64>,
}

impl SkylineCholesky {
    pub fn factor(a: &CsrMatrix) -> Result<Self> {
        let n = a.dim();
        let first: Vec<usize> = (0..n)
            .map(|i| a.row(i).map(|(c, _)| c).min().unwrap_or(i).min(i))
            .collect();
        let mut start = Vec::with_capacity(n + 1);
        start.push(0);
        for i in 0..n {
            start.push(start[i] + (i - first[i] + 1));
        }
        let mut data = vec![0.0; start[n]];
        for i in 0..n {
            for (c, v) in a.row(i) {
                if c <= i {
                    data[start[i] + c - first[i]] = v;
                }
            }
        }
        for i in 0..n {
            let fi = first[i];
            for j in fi..=i {
                let fj = first[j];
                let lo = fi.max(fj);
                let (head, tail) = data.split_at_mut(start[i]);
                let row_i = &mut tail[..i - fi + 1];
                let dot: f64 = if j == i {
                    row_i[lo - fi..j - fi].iter().map(|x| x * x).sum()
                } else {
                    let row_j = &head[start[j]..start[j] + (j - fj + 1)];
                    row_i[lo - fi..j - fi]
                        .iter()
                        .zip(&row_j[lo - fj..j - fj])
                        .map(|(x, y)| x * y)
                        .sum()
                };
                let aij = row_i[j - fi] - dot;
                if j == i {
                    if !(aij > 0.0) {
                        return Err(Error::InvalidArgument(format!(
                            "matrix is not positive definite (pivot {aij:e} at row {i})"
                        )));
                    }
                    row_i[j - fi] = aij.sqrt();
                } else {
                    let djj = head[start[j] + (j - fj)];
                    row_i[j - fi] = aij / djj;
                }
            }
        }
        Ok(SkylineCholesky { first, start, data })
    }

    pub fn dim(&self) -> usize {
        self.first.len()
    }

    /// Number of stored entries of `L`.
    pub fn profile(&self) -> usize {
        self.data.len()
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[self.start[i]..self.start[i + 1]]
    }

    /// Overwrites `b` with `A^{-1} b`.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.dim();
        for i in 0..n {
            let row = self.row(i);
            let fi = self.first[i];
            let s: f64 = row[..i - fi].iter().zip(&b[fi..i]).map(|(l, y)| l * y).sum();
            b[i] = (b[i] - s) / row[i - fi];
        }
        for i in (0..n).rev() {
            let row = self.row(i);
            let fi = self.first[i];
            b[i] /= row[i - fi];
            let xi = b[i];
            for (bk, l) in b[fi..i].iter_mut().zip(&row[..i - fi]) {
                *bk -= l * xi;
            }
        }
    }

    pub fn solve_mat(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        let mut x = b.clone();
        for j in 0..x.ncols() {
            let mut col = x.column_mut(j);
            self.solve_in_place(col.as_mut_slice());
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn laplacian_1d(n: usize) -> CsrMatrix {
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 2.0));
            if i > 0 {
                t.push((i, i - 1, -1.0));
                t.push((i - 1, i, -1.0));
            }
        }
        CsrMatrix::from_triplets(n, &t)
    }

    #[test]
    fn triplets_are_summed() {
        let a = CsrMatrix::from_triplets(2, &[(0, 0, 1.0), (0, 0, 2.0), (1, 0, 4.0), (0, 1, 4.0), (1, 1, 5.0)]);
        assert_eq!(a.nnz(), 4);
        assert_eq!(a.to_dense(), DMatrix::from_row_slice(2, 2, &[3.0, 4.0, 4.0, 5.0]));
    }

    #[test]
    fn skyline_matches_dense_solve() {
        let a = laplacian_1d(30);
        let f = SkylineCholesky::factor(&a).unwrap();
        assert_eq!(f.profile(), 30 + 29);
        let b: Vec<f64> = (0..30).map(|i| (i as f64).sin()).collect();
        let mut x = b.clone();
        f.solve_in_place(&mut x);
        let dense = a.to_dense().lu().solve(&nalgebra::DVector::from_vec(b)).unwrap();
        for i in 0..30 {
            assert_relative_eq!(x[i], dense[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn skyline_general_profile() {
        // arrow matrix with a dense last row
        let n = 12;
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 20.0 + i as f64));
            if i + 1 < n {
                t.push((n - 1, i, 1.0 + i as f64 / 7.0));
                t.push((i, n - 1, 1.0 + i as f64 / 7.0));
            }
        }
        let a = CsrMatrix::from_triplets(n, &t);
        let f = SkylineCholesky::factor(&a).unwrap();
        let x0: Vec<f64> = (0..n).map(|i| 1.0 / (1.0 + i as f64)).collect();
        let mut b = vec![0.0; n];
        a.mul_vec(&x0, &mut b);
        f.solve_in_place(&mut b);
        for i in 0..n {
            assert_relative_eq!(b[i], x0[i], epsilon = 1e-13);
        }
    }

    #[test]
    fn indefinite_is_rejected() {
        let a = CsrMatrix::from_triplets(2, &[(0, 0, 1.0), (0, 1, 2.0), (1, 0, 2.0), (1, 1, 1.0)]);
        assert!(SkylineCholesky::factor(&a).is_err());
    }
}
