//! Triangles, their scale functionals, and the classical closed-form
//! eigenvalue bounds.
//!
//! Angles are radians throughout.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [f64; 2];

/// Relative threshold on `|signed area| / diameter^2` below which a triangle
/// is rejected as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-14;

fn dist(p: Point, q: Point) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// A non-degenerate planar triangle.
///
/// Serializes as a JSON array of three `[x, y]` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Point; 3]", into = "[Point; 3]")]
pub struct Triangle {
    vertices: [Point; 3],
}

impl TryFrom<[Point; 3]> for Triangle {
    type Error = Error;

    fn try_from(v: [Point; 3]) -> Result<Self> {
        Triangle::new(v[0], v[1], v[2])
    }
}

impl From<Triangle> for [Point; 3] {
    fn from(t: Triangle) -> Self {
        t.vertices
    }
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        if a.iter().chain(&b).chain(&c).any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "triangle vertices must be finite".into(),
            ));
        }
        let t = Triangle {
            vertices: [a, b, c],
        };
        let threshold = DEGENERACY_THRESHOLD * t.diameter().powi(2);
        let area = t.signed_area();
        if area.abs() < threshold || area.abs() == 0.0 {
            return Err(Error::DegenerateTriangle { area, threshold });
        }
        Ok(t)
    }

    /// Equilateral triangle with unit sides, base on the x-axis.
    pub fn unit_equilateral() -> Self {
        Triangle {
            vertices: [[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]],
        }
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    /// Positive when the vertices are listed counterclockwise.
    pub fn signed_area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    /// Side `i` is the side opposite vertex `i`.
    pub fn side_lengths(&self) -> [f64; 3] {
        let [a, b, c] = self.vertices;
        [dist(b, c), dist(c, a), dist(a, b)]
    }

    pub fn perimeter(&self) -> f64 {
        self.side_lengths().iter().sum()
    }

    /// Maximal pairwise vertex distance, i.e. the longest side.
    pub fn diameter(&self) -> f64 {
        let [a, b, c] = self.side_lengths();
        a.max(b).max(c)
    }

    /// Interior angle at vertex `i`.
    pub fn angles(&self) -> [f64; 3] {
        let v = self.vertices;
        let mut out = [0.0; 3];
        for (i, angle) in out.iter_mut().enumerate() {
            let p = v[i];
            let q = v[(i + 1) % 3];
            let r = v[(i + 2) % 3];
            let u = [q[0] - p[0], q[1] - p[1]];
            let w = [r[0] - p[0], r[1] - p[1]];
            let cross = u[0] * w[1] - u[1] * w[0];
            let dot = u[0] * w[0] + u[1] * w[1];
            *angle = cross.abs().atan2(dot);
        }
        out
    }

    /// Image under `p -> s * p`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        let v = self.vertices.map(|p| [s * p[0], s * p[1]]);
        Triangle::new(v[0], v[1], v[2])
    }

    /// Image under a rotation by `angle` followed by a translation.
    pub fn moved(&self, angle: f64, shift: Point) -> Self {
        let (s, c) = angle.sin_cos();
        let vertices = self
            .vertices
            .map(|p| [c * p[0] - s * p[1] + shift[0], s * p[0] + c * p[1] + shift[1]]);
        Triangle { vertices }
    }

    /// Barycentric coordinates of `p`.
    pub fn barycentric(&self, p: Point) -> [f64; 3] {
        let [a, b, c] = self.vertices;
        let det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
        let l1 = ((p[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (p[1] - a[1])) / det;
        let l2 = ((b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1])) / det;
        [1.0 - l1 - l2, l1, l2]
    }

    /// Closed-triangle membership with a relative tolerance on the
    /// barycentric coordinates.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.barycentric(p).iter().all(|&l| l >= -tol)
    }
}

/// The triangle `T(a, b)` with vertices `(-1, 0)`, `(1, 0)`, `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanTriangle {
    pub a: f64,
    pub b: f64,
}

impl FanTriangle {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::domain("a", a, "finite reals"));
        }
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::domain("b", b, "b > 0"));
        }
        Ok(FanTriangle { a, b })
    }

    /// `E = T(0, sqrt 3)`, equilateral with diameter 2.
    pub fn equilateral() -> Self {
        FanTriangle {
            a: 0.0,
            b: 3f64.sqrt(),
        }
    }

    /// `F± = T(±1, 2 sqrt 3)`, the 30-60-90 right triangles of diameter 4.
    pub fn right(sign: f64) -> Self {
        FanTriangle {
            a: sign.signum(),
            b: 2.0 * 3f64.sqrt(),
        }
    }

    /// Isosceles `T(0, b)`.
    pub fn isosceles(b: f64) -> Result<Self> {
        FanTriangle::new(0.0, b)
    }

    pub fn apex(&self) -> Point {
        [self.a, self.b]
    }

    pub fn triangle(&self) -> Triangle {
        Triangle {
            vertices: [[-1.0, 0.0], [1.0, 0.0], [self.a, self.b]],
        }
    }

    pub fn is_subequilateral(&self) -> bool {
        self.a == 0.0 && self.b > 3f64.sqrt()
    }

    pub fn diameter(&self) -> f64 {
        self.triangle().diameter()
    }
}

/// Isosceles triangle by aperture (angle between the equal sides) and equal
/// side length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsoscelesAperture {
    pub alpha: f64,
    pub l: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleFunctionals {
    pub area: f64,
    pub perimeter: f64,
    pub diameter: f64,
}

impl IsoscelesAperture {
    pub fn new(alpha: f64, l: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < PI) {
            return Err(Error::domain("alpha", alpha, "(0, pi)"));
        }
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::domain("l", l, "l > 0"));
        }
        Ok(IsoscelesAperture { alpha, l })
    }

    pub fn scale_functionals(&self) -> ScaleFunctionals {
        let (alpha, l) = (self.alpha, self.l);
        let half = (alpha / 2.0).sin();
        ScaleFunctionals {
            area: 0.5 * l * l * alpha.sin(),
            perimeter: 2.0 * l * (1.0 + half),
            diameter: if alpha <= PI / 3.0 { l } else { 2.0 * l * half },
        }
    }

    /// Apex at the origin, symmetric about the positive x-axis.
    pub fn triangle(&self) -> Triangle {
        let (s, c) = (self.alpha / 2.0).sin_cos();
        let l = self.l;
        Triangle {
            vertices: [[0.0, 0.0], [l * c, -l * s], [l * c, l * s]],
        }
    }

    /// Upper half `{y > 0}` of [`Self::triangle`]: vertices apex, base
    /// midpoint, upper base corner. Its first edge (vertex 0 to vertex 1)
    /// lies on the symmetry line.
    pub fn half_triangle(&self) -> Triangle {
        let (s, c) = (self.alpha / 2.0).sin_cos();
        let l = self.l;
        Triangle {
            vertices: [[0.0, 0.0], [l * c, 0.0], [l * c, l * s]],
        }
    }
}

/// The linear map fixing `(-1, 0)` and `(1, 0)` that sends `(c, d)` to
/// `(a, b)`, hence `T(c, d)` onto `T(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl TauMap {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if !(d > 0.0) {
            return Err(Error::domain("d", d, "d > 0"));
        }
        if !(b > 0.0) {
            return Err(Error::domain("b", b, "b > 0"));
        }
        Ok(TauMap { a, b, c, d })
    }

    pub fn apply(&self, p: Point) -> Point {
        let (x, y) = (p[0], p[1]);
        [x + (self.a - self.c) / self.d * y, self.b / self.d * y]
    }

    /// The map sending `T(a, b)` back to `T(c, d)`.
    pub fn inverse(&self) -> TauMap {
        TauMap {
            a: self.c,
            b: self.d,
            c: self.a,
            d: self.b,
        }
    }

    /// Row-major Jacobian `[[1, (a-c)/d], [0, b/d]]`.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[1.0, (self.a - self.c) / self.d], [0.0, self.b / self.d]]
    }
}

pub fn tau_map(a: f64, b: f64, c: f64, d: f64) -> Result<TauMap> {
    TauMap::new(a, b, c, d)
}

/// A subequilateral `T(0, b)` hull together with a congruent copy of the
/// input placed inside the hull rescaled to the input's diameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HullPlacement {
    pub hull: FanTriangle,
    /// Factor taking `T(0, b)` to the input's diameter.
    pub scale: f64,
    /// Congruent image of the input vertices, in input order.
    pub image: [Point; 3],
}

impl HullPlacement {
    pub fn scaled_hull(&self) -> Triangle {
        let t = self.hull.triangle();
        Triangle {
            vertices: t.vertices.map(|p| [self.scale * p[0], self.scale * p[1]]),
        }
    }
}

/// Smallest-angle construction: the angle `beta` between the longest and
/// second-longest sides becomes the aperture of the hull, `b = cot(beta/2)`.
pub fn hull_placement(t: &Triangle) -> HullPlacement {
    let sides = t.side_lengths();
    // Vertex opposite the shortest side joins the two longest sides.
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| sides[i].total_cmp(&sides[j]));
    let apex = order[0];
    let v = t.vertices();
    let others = [(apex + 1) % 3, (apex + 2) % 3];
    let (far, near) = if dist(v[apex], v[others[0]]) >= dist(v[apex], v[others[1]]) {
        (others[0], others[1])
    } else {
        (others[1], others[0])
    };
    let beta = t.angles()[apex];
    let b = 1.0 / (beta / 2.0).tan();
    let hull = FanTriangle { a: 0.0, b };
    let diameter = dist(v[apex], v[far]);
    let scale = diameter / (1.0 + b * b).sqrt();

    let top = [0.0, scale * b];
    let right = [scale, 0.0];
    let frac = dist(v[apex], v[near]) / diameter;
    let mut image = [[0.0; 2]; 3];
    image[apex] = top;
    image[far] = [-scale, 0.0];
    image[near] = [
        top[0] + frac * (right[0] - top[0]),
        top[1] + frac * (right[1] - top[1]),
    ];
    HullPlacement { hull, scale, image }
}

pub fn subequilateral_hull(t: &Triangle) -> FanTriangle {
    hull_placement(t).hull
}

/// Pólya's upper bound `lambda_1 <= pi^2/3 (l1^2 + l2^2 + l3^2) / A^2`.
pub fn polya_upper(t: &Triangle) -> f64 {
    let s: f64 = t.side_lengths().iter().map(|l| l * l).sum();
    PI * PI / 3.0 * s / t.area().powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalLower {
    /// From `lambda_1 A >= 4 pi^2 / sqrt 3`.
    pub polya_szego: f64,
    /// From `lambda_1 A^2 / L^2 >= pi^2 / 16`.
    pub makai: f64,
}

pub fn classical_lower(t: &Triangle) -> ClassicalLower {
    let area = t.area();
    let perimeter = t.perimeter();
    ClassicalLower {
        polya_szego: 4.0 * PI * PI / (3f64.sqrt() * area),
        makai: PI * PI / 16.0 * perimeter * perimeter / (area * area),
    }
}

/// Eigenvalue `pi^2 (p^2 sec^2 phi + q^2 csc^2 phi)` of the rectangle with
/// sides `cos phi`, `sin phi` (diameter 1).
pub fn rectangle_eigen(phi: f64, p: u32, q: u32) -> Result<f64> {
    if !(phi > 0.0 && phi <= PI / 4.0) {
        return Err(Error::domain("phi", phi, "(0, pi/4]"));
    }
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument(
            "rectangle mode numbers must be positive".into(),
        ));
    }
    let (s, c) = phi.sin_cos();
    let (p, q) = (p as f64, q as f64);
    Ok(PI * PI * (p * p / (c * c) + q * q / (s * s)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RectangleObjective {
    Second,
    FirstPlusSecond,
}

impl RectangleObjective {
    pub fn eval(self, phi: f64) -> Result<f64> {
        let second = rectangle_eigen(phi, 2, 1)?;
        Ok(match self {
            RectangleObjective::Second => second,
            RectangleObjective::FirstPlusSecond => second + rectangle_eigen(phi, 1, 1)?,
        })
    }
}

/// Golden-section minimization of the objective over `phi` in `(0, pi/4]`.
pub fn rectangle_minimizer(objective: RectangleObjective) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (1e-3, PI / 4.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = objective.eval(x1)?;
    let mut f2 = objective.eval(x2)?;
    while hi - lo > 1e-12 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective.eval(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective.eval(x2)?;
        }
    }
    let phi = 0.5 * (lo + hi);
    Ok((phi, objective.eval(phi)?))
}
