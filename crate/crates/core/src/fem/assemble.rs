//! P1 stiffness and mass matrices restricted to the free vertices.

use super::mesh::{BoundaryConditions, Mesh};
use super::sparse::CsrMatrix;

/// The pencil `(K, M)` on the unconstrained vertices.
#[derive(Debug, Clone)]
pub struct Pencil {
    pub stiffness: CsrMatrix,
    pub mass: CsrMatrix,
    /// Mesh vertex of each degree of freedom.
    pub dofs: Vec<usize>,
    /// Degree of freedom of each mesh vertex, if free.
    pub index: Vec<Option<usize>>,
}

/// Gradients of the three barycentric hat functions and the element area.
pub(crate) fn element_gradients(mesh: &Mesh, e: usize) -> ([[f64; 2]; 3], f64) {
    let p = mesh.elements[e].map(|k| mesh.vertices[k]);
    let area = mesh.element_area(e);
    let mut g = [[0.0; 2]; 3];
    for i in 0..3 {
        let a = p[(i + 1) % 3];
        let b = p[(i + 2) % 3];
        g[i] = [(a[1] - b[1]) / (2.0 * area), (b[0] - a[0]) / (2.0 * area)];
    }
    (g, area)
}

pub fn assemble(mesh: &Mesh, bc: &BoundaryConditions) -> Pencil {
    let constrained = mesh.constrained(bc);
    let mut index = vec![None; mesh.vertices.len()];
    let mut dofs = Vec::new();
    for (v, c) in constrained.iter().enumerate() {
        if !c {
            index[v] = Some(dofs.len());
            dofs.push(v);
        }
    }
    let mut kt = Vec::with_capacity(9 * mesh.elements.len());
    let mut mt = Vec::with_capacity(9 * mesh.elements.len());
    for e in 0..mesh.elements.len() {
        let (g, area) = element_gradients(mesh, e);
        let verts = mesh.elements[e];
        for a in 0..3 {
            let Some(ra) = index[verts[a]] else { continue };
            for b in 0..3 {
                let Some(rb) = index[verts[b]] else { continue };
                let k = area * (g[a][0] * g[b][0] + g[a][1] * g[b][1]);
                let m = area / 12.0 * if a == b { 2.0 } else { 1.0 };
                kt.push((ra, rb, k));
                mt.push((ra, rb, m));
            }
        }
    }
    let n = dofs.len();
    Pencil {
        stiffness: CsrMatrix::from_triplets(n, &kt),
        mass: CsrMatrix::from_triplets(n, &mt),
        dofs,
        index,
    }
}

impl Pencil {
    pub fn dim(&self) -> usize {
        self.dofs.len()
    }

    /// Expands a vector on the free vertices to all mesh vertices.
    pub fn expand(&self, u: &[f64], n_vertices: usize) -> Vec<f64> {
        let mut out = vec![0.0; n_vertices];
        for (k, &v) in self.dofs.iter().enumerate() {
            out[v] = u[k];
        }
        out
    }

    pub fn restrict(&self, full: &[f64]) -> Vec<f64> {
        self.dofs.iter().map(|&v| full[v]).collect()
    }
}

/// `int u_x^2`, `int u_y^2` and `int u_x u_y` of a nodal vector.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GradientForms {
    pub xx: f64,
    pub yy: f64,
    pub xy: f64,
}

impl GradientForms {
    pub fn energy(&self) -> f64 {
        self.xx + self.yy
    }
}

impl std::ops::Add for GradientForms {
    type Output = GradientForms;

    fn add(self, o: GradientForms) -> GradientForms {
        GradientForms {
            xx: self.xx + o.xx,
            yy: self.yy + o.yy,
            xy: self.xy + o.xy,
        }
    }
}

pub fn gradient_forms(mesh: &Mesh, u: &[f64]) -> GradientForms {
    let mut f = GradientForms::default();
    for e in 0..mesh.elements.len() {
        let (g, area) = element_gradients(mesh, e);
        let verts = mesh.elements[e];
        let mut grad = [0.0; 2];
        for a in 0..3 {
            grad[0] += u[verts[a]] * g[a][0];
            grad[1] += u[verts[a]] * g[a][1];
        }
        f.xx += area * grad[0] * grad[0];
        f.yy += area * grad[1] * grad[1];
        f.xy += area * grad[0] * grad[1];
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::mesh::mesh_triangle;
    use crate::geometry::Triangle;
    use approx::assert_relative_eq;

    #[test]
    fn neumann_mass_integrates_constants() {
        // all-Neumann is not offered, but the mass of the free block with one
        // Neumann side still integrates 1 x 1 over the free hats
        let t = Triangle::unit_equilateral();
        let mesh = mesh_triangle(&t, 3).unwrap();
        let p = assemble(&mesh, &BoundaryConditions::neumann_first());
        let n = mesh.divisions();
        assert_eq!(p.dim(), (n + 1) * (n + 2) / 2 - (2 * n + 1));
        let ones = vec![1.0; p.dim()];
        let total = p.mass.quad_form(&ones);
        assert!(total > 0.0 && total < t.area());
    }

    #[test]
    fn stiffness_and_gradient_forms_agree() {
        let t = Triangle::new([0.0, 0.0], [1.5, 0.2], [0.4, 1.0]).unwrap();
        let mesh = mesh_triangle(&t, 3).unwrap();
        let p = assemble(&mesh, &BoundaryConditions::dirichlet());
        let u: Vec<f64> = (0..p.dim()).map(|k| ((k * 7 % 11) as f64).cos()).collect();
        let full = p.expand(&u, mesh.vertices.len());
        let g = gradient_forms(&mesh, &full);
        assert_relative_eq!(g.energy(), p.stiffness.quad_form(&u), max_relative = 1e-12);
        assert!(g.xy.abs() <= 0.5 * g.energy() + 1e-14);
        assert_eq!(p.restrict(&full), u);
    }

    #[test]
    fn linear_function_gradient() {
        let t = Triangle::new([0.0, 0.0], [2.0, 0.0], [0.0, 1.0]).unwrap();
        let mesh = mesh_triangle(&t, 2).unwrap();
        let u: Vec<f64> = mesh.vertices.iter().map(|p| 3.0 * p[0] - p[1]).collect();
        let g = gradient_forms(&mesh, &u);
        assert_relative_eq!(g.xx, 9.0 * t.area(), max_relative = 1e-13);
        assert_relative_eq!(g.yy, t.area(), max_relative = 1e-13);
        assert_relative_eq!(g.xy, -3.0 * t.area(), max_relative = 1e-13);
    }
}
