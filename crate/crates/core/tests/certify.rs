use std::f64::consts::PI;

use proptest::prelude::*;
use trispec::certify::{
    bessel::{bessel_j, bessel_zero},
    certify_triangle, lemma62_verify, sector_constants, sector_eigenvalue, SectorSpec, TrialFunction, CERTIFIED_HEIGHT,
    KAPPA,
};
use trispec::Verdict;

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Schläfli's integral for `J_nu(x)`, `x > 0`.
fn bessel_oracle(nu: f64, x: f64) -> f64 {
    let first = simpson(|t| (nu * t - x * t.sin()).cos(), 0.0, PI, 20_000) / PI;
    let second = simpson(|t| (-x * t.sinh() - nu * t).exp(), 0.0, 25.0, 200_000);
    first - (nu * PI).sin() / PI * second
}

#[test]
fn half_integer_orders_in_closed_form() {
    for x in [0.1, 0.7, 2.0, 9.5, 31.0, 77.7] {
        let c = (2.0 / (PI * x)).sqrt();
        let j_half = c * x.sin();
        let j_three_halves = c * (x.sin() / x - x.cos());
        assert!((bessel_j(0.5, x).unwrap() - j_half).abs() < 1e-12, "x {x}");
        assert!((bessel_j(1.5, x).unwrap() - j_three_halves).abs() < 1e-12, "x {x}");
    }
    for k in 1..=8 {
        assert!((bessel_zero(0.5, k).unwrap() - k as f64 * PI).abs() < 1e-10);
    }
}

#[test]
fn small_argument_limit() {
    assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
    assert_eq!(bessel_j(2.3, 0.0).unwrap(), 0.0);
    // J_nu(x) ~ (x/2)^nu / Gamma(nu + 1)
    let x: f64 = 1e-6;
    let nu = 4.128;
    let lead = (x / 2.0).powf(nu) / gamma_oracle(nu + 1.0);
    assert!((bessel_j(nu, x).unwrap() / lead - 1.0).abs() < 1e-9, "{} {}", bessel_j(nu, x).unwrap(), lead);
}

// Stirling series after shifting the argument above 40; truncation error below 1e-11.
fn gamma_oracle(z: f64) -> f64 {
    let mut shift = 1.0;
    let mut z = z;
    while z < 40.0 {
        shift *= z;
        z += 1.0;
    }
    let series = 1.0 + 1.0 / (12.0 * z) + 1.0 / (288.0 * z * z) - 139.0 / (51840.0 * z.powi(3))
        - 571.0 / (2_488_320.0 * z.powi(4));
    (2.0 * PI / z).sqrt() * (z / std::f64::consts::E).powf(z) * series / shift
}

#[test]
fn known_zeros() {
    // j_{0,1}, j_{1,1}, j_{0,2}
    assert!((bessel_zero(0.0, 1).unwrap() - 2.404_825_557_695_773).abs() < 1e-10);
    assert!((bessel_zero(1.0, 1).unwrap() - 3.831_705_970_207_512).abs() < 1e-10);
    assert!((bessel_zero(0.0, 2).unwrap() - 5.520_078_110_286_311).abs() < 1e-10);
}

#[test]
fn sector_constants_at_certified_height() {
    let c = sector_constants(CERTIFIED_HEIGHT).unwrap();
    let nu = PI / (2.0 * (1.0 / CERTIFIED_HEIGHT).atan());
    assert!((c.order - nu).abs() < 1e-14);
    assert!((c.second_zero_squared - 126.0).abs() <= 1.0);
    assert!((c.frequency - 4.49).abs() <= 0.01);
    assert!(bessel_j(nu, c.second_zero).unwrap().abs() < 1e-12);
}

#[test]
fn sector_eigenvalues_of_a_quarter_disk() {
    // aperture pi/2, radius 2: lambda = (j_{2k,j} / 2)^2
    let s = SectorSpec::new(2.0, PI / 2.0).unwrap();
    let want = (5.135_622_301_840_683f64 / 2.0).powi(2);
    assert!((sector_eigenvalue(&s, 1, 1).unwrap() - want).abs() < 1e-9);
}

#[test]
fn trial_function_solves_the_helmholtz_equation() {
    let tf = TrialFunction::three_term(CERTIFIED_HEIGHT, KAPPA).unwrap();
    let lambda = tf.lambda_bar();
    let u = |r: f64, t: f64| tf.eval(r, t).unwrap();
    let h = 1e-3;
    let half = (1.0 / CERTIFIED_HEIGHT).atan();
    for &(r, t) in &[(0.5, 0.0), (1.0, 0.2 * half), (1.7, -0.6 * half), (2.2, 0.9 * half)] {
        let u0 = u(r, t);
        let urr = (u(r + h, t) - 2.0 * u0 + u(r - h, t)) / (h * h);
        let ur = (u(r + h, t) - u(r - h, t)) / (2.0 * h);
        let utt = (u(r, t + h) - 2.0 * u0 + u(r, t - h)) / (h * h);
        let laplacian = urr + ur / r + utt / (r * r);
        let scale = lambda * u0.abs().max(1e-3);
        assert!((laplacian + lambda * u0).abs() < 1e-4 * scale, "r {r} theta {t}");
    }
    // vanishes on both straight sides
    for r in [0.3, 1.0, 2.0] {
        assert!(u(r, half).abs() < 1e-12);
        assert!(u(r, -half).abs() < 1e-12);
    }
}

#[test]
fn enclosure_contains_the_fem_value() {
    let cert = certify_triangle(CERTIFIED_HEIGHT, KAPPA).unwrap();
    let iv = cert.interval;
    assert!(iv.lower < KAPPA * KAPPA && KAPPA * KAPPA < iv.upper);
    let report = lemma62_verify(Some(6)).unwrap();
    let fem = report.fem.unwrap();
    assert!(report.certificate.interval.lower < fem.lambda2);
    assert!(fem.lambda2 < report.certificate.interval.upper);
    assert_eq!(report.report.verdict, Verdict::Pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bessel_matches_integral_representation(nu in 0.0f64..12.0, x in 0.2f64..30.0) {
        let got = bessel_j(nu, x).unwrap();
        let want = bessel_oracle(nu, x);
        prop_assert!((got - want).abs() < 1e-9, "nu {} x {}: {} vs {}", nu, x, got, want);
    }

    #[test]
    fn zeros_are_roots_in_increasing_order(nu in 0.0f64..20.0) {
        let mut previous = 0.0;
        for k in 1..=4 {
            let z = bessel_zero(nu, k).unwrap();
            prop_assert!(z > previous);
            prop_assert!(bessel_j(nu, z).unwrap().abs() < 1e-10);
            previous = z;
        }
    }
}
