//! Uniform triangular lattice meshes.
//!
//! Level `l` divides every side into `N = 2^l` segments. The vertex with
//! lattice coordinates `(i, j)`, `i + j <= N`, sits at
//! `v1 + (i/N)(v2 - v1) + (j/N)(v3 - v1)`. This is the mesh obtained by
//! applying midpoint (4-way) subdivision `l` times.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Triangle};

pub const MAX_LEVEL: u32 = 10;

/// Condition imposed on one side of the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Dirichlet,
    Neumann,
}

/// Conditions on the sides `v1v2`, `v2v3`, `v3v1`, in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryConditions(pub [Boundary; 3]);

impl BoundaryConditions {
    pub fn dirichlet() -> Self {
        BoundaryConditions([Boundary::Dirichlet; 3])
    }

    /// Neumann on `v1v2`, Dirichlet on the other two sides.
    pub fn neumann_first() -> Self {
        BoundaryConditions([Boundary::Neumann, Boundary::Dirichlet, Boundary::Dirichlet])
    }

    fn dirichlet_mask(&self) -> u8 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, b)| **b == Boundary::Dirichlet)
            .fold(0, |m, (k, _)| m | (1 << k))
    }
}

impl Default for BoundaryConditions {
    fn default() -> Self {
        Self::dirichlet()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub triangle: Triangle,
    pub level: u32,
    pub vertices: Vec<Point>,
    /// Counter-clockwise vertex triples.
    pub elements: Vec<[usize; 3]>,
    /// Bit `k` set when the vertex lies on side `k` (`v1v2`, `v2v3`, `v3v1`).
    pub sides: Vec<u8>,
}

pub fn divisions(level: u32) -> usize {
    1usize << level
}

pub(crate) fn lattice_index(n: usize, i: usize, j: usize) -> usize {
    j * (n + 1) - j * j.saturating_sub(1) / 2 + i
}

pub fn mesh_triangle(t: &Triangle, level: u32) -> Result<Mesh> {
    if level > MAX_LEVEL {
        return Err(Error::domain("level", level as f64, "level <= 10"));
    }
    let n = divisions(level);
    let [v1, v2, v3] = t.vertices();
    let e1 = [v2[0] - v1[0], v2[1] - v1[1]];
    let e2 = [v3[0] - v1[0], v3[1] - v1[1]];
    let nf = n as f64;
    let mut vertices = Vec::with_capacity((n + 1) * (n + 2) / 2);
    let mut sides = Vec::with_capacity(vertices.capacity());
    for j in 0..=n {
        for i in 0..=n - j {
            let (s, r) = (i as f64 / nf, j as f64 / nf);
            vertices.push([v1[0] + s * e1[0] + r * e2[0], v1[1] + s * e1[1] + r * e2[1]]);
            let mut mask = 0u8;
            if j == 0 {
                mask |= 1;
            }
            if i + j == n {
                mask |= 2;
            }
            if i == 0 {
                mask |= 4;
            }
            sides.push(mask);
        }
    }
    let flip = t.signed_area() < 0.0;
    let orient = |a: usize, b: usize, c: usize| if flip { [a, c, b] } else { [a, b, c] };
    let mut elements = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n - j {
            let p = lattice_index(n, i, j);
            let right = lattice_index(n, i + 1, j);
            let up = lattice_index(n, i, j + 1);
            elements.push(orient(p, right, up));
            if i + j + 2 <= n {
                let diag = lattice_index(n, i + 1, j + 1);
                elements.push(orient(right, diag, up));
            }
        }
    }
    Ok(Mesh {
        triangle: *t,
        level,
        vertices,
        elements,
        sides,
    })
}

impl Mesh {
    pub fn divisions(&self) -> usize {
        divisions(self.level)
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.sides[v] != 0
    }

    /// Vertices carrying a Dirichlet condition.
    pub fn constrained(&self, bc: &BoundaryConditions) -> Vec<bool> {
        let mask = bc.dirichlet_mask();
        self.sides.iter().map(|s| s & mask != 0).collect()
    }

    pub fn element_area(&self, e: usize) -> f64 {
        let [a, b, c] = self.elements[e].map(|k| self.vertices[k]);
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
    }

    /// Piecewise-linear interpolation of a nodal vector from `level - 1`.
    pub fn prolong(&self, coarse: &[f64]) -> Result<Vec<f64>> {
        if self.level == 0 {
            return Err(Error::InvalidArgument("level 0 mesh has no coarser level".into()));
        }
        let n = self.divisions();
        let nc = n / 2;
        if coarse.len() != (nc + 1) * (nc + 2) / 2 {
            return Err(Error::InvalidArgument(format!(
                "coarse vector has length {}, expected {}",
                coarse.len(),
                (nc + 1) * (nc + 2) / 2
            )));
        }
        let at = |i: usize, j: usize| coarse[lattice_index(nc, i, j)];
        let mut out = Vec::with_capacity(self.vertices.len());
        for j in 0..=n {
            for i in 0..=n - j {
                let v = match (i % 2, j % 2) {
                    (0, 0) => at(i / 2, j / 2),
                    (1, 0) => 0.5 * (at(i / 2, j / 2) + at(i / 2 + 1, j / 2)),
                    (0, 1) => 0.5 * (at(i / 2, j / 2) + at(i / 2, j / 2 + 1)),
                    _ => 0.5 * (at(i / 2, j / 2 + 1) + at(i / 2 + 1, j / 2)),
                };
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Indexed text format: a header line, one `v x y sides` line per vertex
    /// and one `t a b c` line per element, zero-based.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# level {} vertices {} elements {}", self.level, self.vertices.len(), self.elements.len());
        for (p, m) in self.vertices.iter().zip(&self.sides) {
            let _ = writeln!(s, "v {:.17e} {:.17e} {}", p[0], p[1], m);
        }
        for e in &self.elements {
            let _ = writeln!(s, "t {} {} {}", e[0], e[1], e[2]);
        }
        s
    }
}
