//! A posteriori eigenvalue enclosures for the isosceles triangle `T(0, h)`.
//!
//! If `-Δu = λ̄ u` in a domain `Ω` of area `A` and `u` is small on the
//! boundary, some Dirichlet eigenvalue lies in `[λ̄/(1+ε), λ̄/(1-ε)]` with
//! `ε = sqrt(A) ||u||_{L∞(∂Ω)} / ||u||_{L²(Ω)}`. Here `u` is a combination
//! of sector eigenfunctions `J_{kν}(κr) cos(kνθ)`, so it solves the
//! Helmholtz equation exactly and vanishes on the two equal sides; only its
//! size on the third side has to be estimated.

pub mod bessel;

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::Serialize;

pub use bessel::{bessel_j, bessel_zero};

use crate::error::{Error, Result};
use crate::fem;
use crate::geometry::{classical_lower, FanTriangle, Triangle};
use crate::report::{Check, Report};
use crate::transplant::c_funcs;

/// Height of the certified triangle `T(0, 5/2)`.
pub const CERTIFIED_HEIGHT: f64 = 2.5;
/// Frequency of the trial function.
pub const KAPPA: f64 = 334.0 / 75.0;

/// Circular sector of the given radius and aperture, symmetric about the
/// positive `x` axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorSpec {
    pub radius: f64,
    pub aperture: f64,
    pub order: f64,
}

impl SectorSpec {
    pub fn new(radius: f64, aperture: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::domain("radius", radius, "radius > 0"));
        }
        if !(aperture > 0.0 && aperture < PI) {
            return Err(Error::domain("aperture", aperture, "0 < aperture < pi"));
        }
        Ok(SectorSpec {
            radius,
            aperture,
            order: PI / aperture,
        })
    }

    /// Sector at the apex of `T(0, b)`: aperture `2 arctan(1/b)`.
    pub fn at_apex(b: f64, radius: f64) -> Result<Self> {
        SectorSpec::new(radius, 2.0 * (1.0 / b).atan())
    }
}

/// `(j_{kν, j} / radius)^2`.
pub fn sector_eigenvalue(s: &SectorSpec, k: usize, j: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("k", 0.0, "k >= 1"));
    }
    let z = bessel_zero(k as f64 * s.order, j)?;
    Ok((z / s.radius).powi(2))
}

/// The `count` smallest Dirichlet eigenvalues of the sector, ascending.
pub fn sector_spectrum(s: &SectorSpec, count: usize) -> Result<Vec<f64>> {
    let mut all = Vec::new();
    for k in 1..=count {
        if k as f64 * s.order > bessel::MAX_ORDER {
            break;
        }
        for j in 1..=count {
            all.push(sector_eigenvalue(s, k, j)?);
        }
    }
    all.sort_by(f64::total_cmp);
    all.truncate(count);
    Ok(all)
}

/// Second zero of `J_nu` for the sector at the apex of `T(0, h)`: the
/// second eigenvalue of the sector of radius `h` is `(j_{nu,2} / h)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorConstants {
    pub h: f64,
    pub order: f64,
    pub second_zero: f64,
    pub second_zero_squared: f64,
    /// `j_{nu,2} / h`
    pub frequency: f64,
}

pub fn sector_constants(h: f64) -> Result<SectorConstants> {
    let s = SectorSpec::at_apex(h, h)?;
    let z = bessel_zero(s.order, 2)?;
    Ok(SectorConstants {
        h,
        order: s.order,
        second_zero: z,
        second_zero_squared: z * z,
        frequency: z / h,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialTerm {
    pub coefficient: f64,
    /// Odd multiple `k` of the base order.
    pub multiple: u32,
}

/// `u(r, θ) = Σ c_k J_{kν}(κ r) cos(kνθ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialFunction {
    pub terms: Vec<TrialTerm>,
    pub order: f64,
    pub kappa: f64,
}

impl TrialFunction {
    pub fn new(terms: Vec<TrialTerm>, order: f64, kappa: f64) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("trial function needs at least one term".into()));
        }
        if let Some(t) = terms.iter().find(|t| t.multiple % 2 == 0) {
            return Err(Error::InvalidArgument(format!(
                "order multiple {} is even; only odd multiples vanish on both sector sides",
                t.multiple
            )));
        }
        if !(kappa > 0.0) {
            return Err(Error::domain("kappa", kappa, "kappa > 0"));
        }
        Ok(TrialFunction { terms, order, kappa })
    }

    /// Three-term function for `T(0, h)` with frequency `kappa`.
    pub fn three_term(h: f64, kappa: f64) -> Result<Self> {
        let s = SectorSpec::at_apex(h, h)?;
        TrialFunction::new(
            vec![
                TrialTerm {
                    coefficient: 1.0,
                    multiple: 1,
                },
                TrialTerm {
                    coefficient: 5.0 / 22.0,
                    multiple: 3,
                },
                TrialTerm {
                    coefficient: -2225.0 / 53.0,
                    multiple: 5,
                },
            ],
            s.order,
            kappa,
        )
    }

    pub fn lambda_bar(&self) -> f64 {
        self.kappa * self.kappa
    }

    pub fn eval(&self, r: f64, theta: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::domain("r", r, "r >= 0"));
        }
        let mut sum = 0.0;
        for t in &self.terms {
            let nu = t.multiple as f64 * self.order;
            sum += t.coefficient * bessel_j(nu, self.kappa * r)? * (nu * theta).cos();
        }
        Ok(sum)
    }
}

/// Evaluates `tf` at polar coordinates `(r, θ)`.
pub fn trial_eval(tf: &TrialFunction, r: f64, theta: f64) -> Result<f64> {
    tf.eval(r, theta)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct L2Estimate {
    /// `||u||_{L²(sector)}` at the higher quadrature order.
    pub value: f64,
    /// Difference between the two quadrature orders.
    pub error: f64,
    pub order: usize,
    pub radial_panels: usize,
}

impl L2Estimate {
    pub fn lower(&self) -> f64 {
        self.value - self.error
    }
}

const L2_PANELS: usize = 8;
const L2_ORDER: usize = 24;
const L2_TOLERANCE: f64 = 1e-8;

fn sector_square_integral(tf: &TrialFunction, s: &SectorSpec, order: usize) -> Result<f64> {
    let rule = GaussLegendre::new(NonZeroUsize::new(order).expect("order > 0"));
    let half = 0.5 * s.aperture;
    let width = s.radius / L2_PANELS as f64;
    let mut failure = None;
    let mut total = 0.0;
    for p in 0..L2_PANELS {
        let a = p as f64 * width;
        total += rule.integrate(a, a + width, |r| {
            r * rule.integrate(-half, half, |theta| match tf.eval(r, theta) {
                Ok(v) => v * v,
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            })
        });
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// `||u||_{L²}` over the sector by tensor Gauss-Legendre quadrature in
/// `(r, θ)`, with the change under doubling of the order as error estimate.
pub fn l2_lower(tf: &TrialFunction, s: &SectorSpec) -> Result<L2Estimate> {
    let coarse = sector_square_integral(tf, s, L2_ORDER)?.sqrt();
    let fine = sector_square_integral(tf, s, 2 * L2_ORDER)?.sqrt();
    let error = (fine - coarse).abs();
    if error > L2_TOLERANCE * fine {
        return Err(Error::Quadrature {
            estimate: error,
            tolerance: L2_TOLERANCE * fine,
        });
    }
    Ok(L2Estimate {
        value: fine,
        error,
        order: 2 * L2_ORDER,
        radial_panels: L2_PANELS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySup {
    /// Safeguarded bound: sampled maximum plus spacing times 1.5 times the
    /// largest sampled difference quotient.
    pub value: f64,
    pub sampled_max: f64,
    pub derivative_bound: f64,
    pub samples: usize,
    /// Sampling is not a proof.
    pub heuristic: bool,
}

pub const SUP_SAMPLES: usize = 100_001;

/// Estimate of `max |u(h / cos θ, θ)|` over `|θ| <= α/2`, the third side of
/// the triangle.
pub fn boundary_sup(tf: &TrialFunction, h: f64) -> Result<BoundarySup> {
    boundary_sup_sampled(tf, h, SUP_SAMPLES)
}

pub fn boundary_sup_sampled(tf: &TrialFunction, h: f64, samples: usize) -> Result<BoundarySup> {
    if !(h > 0.0) {
        return Err(Error::domain("h", h, "h > 0"));
    }
    if samples < 2 {
        return Err(Error::domain("samples", samples as f64, "samples >= 2"));
    }
    let half = PI / (2.0 * tf.order);
    let spacing = 2.0 * half / (samples - 1) as f64;
    let mut prev: Option<f64> = None;
    let mut sampled_max: f64 = 0.0;
    let mut slope: f64 = 0.0;
    for i in 0..samples {
        let theta = -half + i as f64 * spacing;
        let v = tf.eval(h / theta.cos(), theta)?;
        sampled_max = sampled_max.max(v.abs());
        if let Some(p) = prev {
            slope = slope.max(((v - p) / spacing).abs());
        }
        prev = Some(v);
    }
    let derivative_bound = 1.5 * slope;
    Ok(BoundarySup {
        value: sampled_max + spacing * derivative_bound,
        sampled_max,
        derivative_bound,
        samples,
        heuristic: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertifiedInterval {
    pub lambda_bar: f64,
    pub epsilon: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Enclosure `λ̄/(1+ε) <= λ <= λ̄/(1-ε)` of some Dirichlet eigenvalue.
pub fn moler_payne(lambda_bar: f64, sup_bound: f64, l2_bound: f64, area: f64) -> Result<CertifiedInterval> {
    if !(l2_bound > 0.0) {
        return Err(Error::domain("l2_bound", l2_bound, "l2_bound > 0"));
    }
    if !(area > 0.0) {
        return Err(Error::domain("area", area, "area > 0"));
    }
    let epsilon = area.sqrt() * sup_bound / l2_bound;
    if !(epsilon < 1.0) {
        return Err(Error::CertificationFailed { epsilon });
    }
    Ok(CertifiedInterval {
        lambda_bar,
        epsilon,
        lower: lambda_bar / (1.0 + epsilon),
        upper: lambda_bar / (1.0 - epsilon),
    })
}

/// `T(0, h)` moved so that the apex is at the origin and the triangle is
/// symmetric about the positive `x` axis.
pub fn apex_frame(h: f64) -> Result<Triangle> {
    let t = FanTriangle::isosceles(h)?.triangle();
    Ok(t.moved(0.0, [0.0, -h]).moved(0.5 * PI, [0.0, 0.0]))
}

/// A certified interval together with the bounds it was built from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub h: f64,
    pub kappa: f64,
    pub interval: CertifiedInterval,
    pub area: f64,
    pub sup: BoundarySup,
    pub l2: L2Estimate,
}

/// Certifies the three-term trial function with frequency `kappa` on
/// `T(0, h)`.
pub fn certify_triangle(h: f64, kappa: f64) -> Result<Certificate> {
    let tf = TrialFunction::three_term(h, kappa)?;
    let omega = apex_frame(h)?;
    let sector = SectorSpec::at_apex(h, h)?;
    let l2 = l2_lower(&tf, &sector)?;
    let sup = boundary_sup(&tf, h)?;
    let interval = moler_payne(tf.lambda_bar(), sup.value, l2.lower(), omega.area())?;
    Ok(Certificate {
        h,
        kappa,
        interval,
        area: omega.area(),
        sup,
        l2,
    })
}

/// `C̃(h) Λ₂(0,√3) - 4π²/(√3 h)`, the lower bound on `λ₂(0, h)` that
/// the certificate must beat.
pub fn second_eigenvalue_target(h: f64) -> f64 {
    let (_, c_tilde) = c_funcs(h).expect("h > 0");
    c_tilde * 40.0 * PI * PI / 9.0 - 4.0 * PI * PI / (3f64.sqrt() * h)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FemCrossCheck {
    pub level: u32,
    pub lambda2: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma62Report {
    pub certificate: Certificate,
    pub target: f64,
    /// Third Dirichlet eigenvalue of the sector of radius `sqrt(1+h²)`
    /// containing `T(0, h)`.
    pub sector_third: f64,
    /// `j_{2ν,1}² / (1 + h²)`.
    pub sector_exclusion: f64,
    pub lambda1_lower: f64,
    pub sector: SectorConstants,
    pub fem: Option<FemCrossCheck>,
    pub report: Report,
}

/// The chain `Λ₂(0, 5/2) > C̃(5/2) Λ₂(0, √3)`; an optional FEM level adds
/// the check that the FEM `λ₂` lies in the certified interval.
pub fn lemma62_verify(fem_level: Option<u32>) -> Result<Lemma62Report> {
    let h = CERTIFIED_HEIGHT;
    let certificate = certify_triangle(h, KAPPA)?;
    let iv = certificate.interval;
    let target = second_eigenvalue_target(h);
    let outer = SectorSpec::at_apex(h, (1.0 + h * h).sqrt())?;
    let sector_third = sector_spectrum(&outer, 3)?[2];
    let sector_exclusion = sector_eigenvalue(&outer, 2, 1)?;
    let triangle = FanTriangle::isosceles(h)?.triangle();
    let lambda1_lower = classical_lower(&triangle).polya_szego;
    let (_, c_tilde_h) = c_funcs(h)?;
    let mut checks = vec![
        Check::less("epsilon < 0.009", iv.epsilon, 0.009),
        Check::greater("lower > 19.65", iv.lower, 19.65),
        Check::less("upper < 20.03", iv.upper, 20.03),
        Check::greater("lower > second eigenvalue target", iv.lower, target),
        Check::less("upper < third sector eigenvalue", iv.upper, sector_third),
        Check::close("third sector eigenvalue is j_{2nu,1}^2/D^2", sector_third, sector_exclusion, 1e-12 * sector_exclusion),
        Check::greater(
            "lambda1 lower + lambda2 lower > C~(h) Lambda2(0,sqrt3)",
            lambda1_lower + iv.lower,
            c_tilde_h * 40.0 * PI * PI / 9.0,
        ),
    ];
    let fem = match fem_level {
        Some(level) => {
            let ex = fem::dirichlet_eigenvalues(&triangle, 2, level)?;
            let (lambda2, error) = (ex.values[1], ex.errors[1]);
            checks.push(Check::greater_numerical("FEM lambda2 > certified lower", lambda2, iv.lower, error));
            checks.push(Check::greater_numerical("certified upper > FEM lambda2", iv.upper, lambda2, error));
            Some(FemCrossCheck { level, lambda2, error })
        }
        None => None,
    };
    Ok(Lemma62Report {
        certificate,
        target,
        sector_third,
        sector_exclusion,
        lambda1_lower,
        sector: sector_constants(h)?,
        fem,
        report: Report::new("Lambda_2(0, 5/2) > C~(5/2) Lambda_2(0, sqrt 3)", checks),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sector_scaling() {
        let s = SectorSpec::at_apex(2.5, 1.0).unwrap();
        let d = SectorSpec::at_apex(2.5, 2.0).unwrap();
        assert_relative_eq!(
            sector_eigenvalue(&s, 1, 2).unwrap(),
            4.0 * sector_eigenvalue(&d, 1, 2).unwrap(),
            max_relative = 1e-13
        );
        assert!(SectorSpec::new(1.0, PI).is_err());
        assert!(SectorSpec::new(0.0, 1.0).is_err());
    }

    #[test]
    fn trial_function_vanishes_on_equal_sides() {
        let tf = TrialFunction::three_term(2.5, KAPPA).unwrap();
        let half = PI / (2.0 * tf.order);
        for r in [0.3, 1.0, 2.0, 2.6] {
            assert!(tf.eval(r, half).unwrap().abs() < 1e-15);
            assert!(tf.eval(r, -half).unwrap().abs() < 1e-15);
        }
        assert_relative_eq!(tf.lambda_bar(), 19.832, epsilon = 5e-4);
    }

    #[test]
    fn sector_constants_at_certified_height() {
        let c = sector_constants(CERTIFIED_HEIGHT).unwrap();
        assert_relative_eq!(c.order, PI / (2.0 * 0.4f64.atan()), max_relative = 1e-15);
        assert!((c.second_zero_squared - 126.0).abs() < 1.0);
        assert!((c.frequency - 4.49).abs() < 0.01);
    }

    #[test]
    fn even_multiple_rejected() {
        let t = TrialTerm {
            coefficient: 1.0,
            multiple: 2,
        };
        assert!(TrialFunction::new(vec![t], 3.0, 1.0).is_err());
    }

    #[test]
    fn moler_payne_endpoints() {
        let iv = moler_payne(20.0, 0.001, 0.3, 2.0).unwrap();
        assert_relative_eq!(iv.lower * (1.0 + iv.epsilon), 20.0, max_relative = 1e-15);
        assert_relative_eq!(iv.upper * (1.0 - iv.epsilon), 20.0, max_relative = 1e-15);
        assert!(matches!(moler_payne(20.0, 1.0, 0.5, 1.0), Err(Error::CertificationFailed { .. })));
    }

    #[test]
    fn apex_frame_geometry() {
        let t = apex_frame(2.5).unwrap();
        let mut v = t.vertices();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(v[0][0].abs() < 1e-15 && v[0][1].abs() < 1e-15);
        assert_relative_eq!(v[1][0], 2.5, epsilon = 1e-15);
        assert_relative_eq!(v[1][1], -1.0, epsilon = 1e-15);
        assert_relative_eq!(v[2][1], 1.0, epsilon = 1e-15);
        assert_relative_eq!(t.area(), 2.5, max_relative = 1e-15);
    }
}
