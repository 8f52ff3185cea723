use proptest::prelude::*;
use trispec::equilateral::{equilateral_sum_target, right_sum_target};
use trispec::fem::{dirichlet_eigenvalues, gradient_forms, mesh_triangle};
use trispec::geometry::tau_map;
use trispec::transplant::{
    c_funcs, condch_rhs, condch_verify, lemtrace_lhs, open_grid, prop_unknown_branch, theorem1_verify,
    theorem2_verify, Branch, TransplantCondition,
};
use trispec::{FanTriangle, Verdict};

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[test]
fn comparison_constants_are_one_at_the_equilateral_height() {
    let (c, ct) = c_funcs(SQRT3).unwrap();
    assert!((c - 1.0).abs() < 1e-14);
    assert!((ct - 1.0).abs() < 1e-14);
    assert!((condch_rhs(2.5, SQRT3) - c_funcs(2.5).unwrap().1).abs() < 1e-12);
}

#[test]
fn reduced_inequality_on_the_sector_interval() {
    let r = condch_verify(2.5, &open_grid(SQRT3, 2.5, 1000)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(condch_verify(2.5, &[1.7]).is_err());
}

#[test]
fn branch_selection() {
    assert_eq!(prop_unknown_branch(2.0, 0.5).unwrap().branch, Branch::Equilateral);
    let right = prop_unknown_branch(2.0, 0.8).unwrap();
    assert_eq!(right.branch, Branch::Right);
    assert!((right.lhs - (4.0 + 50.0 / (11.0 - 6.4))).abs() < 1e-12);
    assert!(prop_unknown_branch(1.5, 0.5).is_err());
    assert!(prop_unknown_branch(2.0, 1.5).is_err());
}

#[test]
fn sum_targets_agree_with_fem() {
    let eq = dirichlet_eigenvalues(&FanTriangle::equilateral().triangle(), 6, 7).unwrap();
    let right = dirichlet_eigenvalues(&FanTriangle::right(1.0).triangle(), 6, 7).unwrap();
    let d_eq = FanTriangle::equilateral().diameter();
    let d_right = FanTriangle::right(1.0).diameter();
    for n in 1..=6 {
        let (s, e) = eq.sum(n);
        let want = equilateral_sum_target(n).unwrap();
        assert!((s * d_eq * d_eq - want).abs() < 2.0 * e * d_eq * d_eq + 1e-9, "equilateral n {n}");
        let (s, e) = right.sum(n);
        let want = right_sum_target(n).unwrap();
        assert!((s * d_right * d_right - want).abs() < 2.0 * e * d_right * d_right + 1e-9, "right n {n}");
    }
}

#[test]
fn small_pipelines_pass() {
    let f = FanTriangle::isosceles(2.0).unwrap();
    assert_eq!(theorem1_verify(&f, 2, 6).unwrap().report.verdict, Verdict::Pass);
    assert_eq!(theorem1_verify(&FanTriangle::equilateral(), 3, 6).unwrap().report.verdict, Verdict::Pass);
    // every triangle reduces to a subequilateral hull first; others are rejected
    assert!(theorem1_verify(&FanTriangle::new(0.4, 1.2).unwrap(), 3, 6).is_err());
    assert_eq!(theorem2_verify(2.0, 6).unwrap().report.verdict, Verdict::Pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The Dirichlet energy of `u ∘ tau` on `T(c, d)` equals `lhs` times the
    /// energy of `u` on `T(a, b)`, up to the Jacobian `d / b`, for any
    /// piecewise-linear `u`.
    #[test]
    fn transplant_energy_identity(
        a in -1.5f64..1.5, b in 0.3f64..4.0, c in -1.5f64..1.5, d in 0.3f64..4.0,
        seed in proptest::collection::vec(-1.0f64..1.0, 45),
    ) {
        let source = FanTriangle::new(a, b).unwrap();
        let mesh = mesh_triangle(&source.triangle(), 3).unwrap();
        let u: Vec<f64> = (0..mesh.vertices.len()).map(|i| seed[i % seed.len()] * (1.0 + (i % 7) as f64)).collect();
        let forms = gradient_forms(&mesh, &u);
        let energy = forms.energy();
        prop_assume!(energy > 1e-8);

        let back = tau_map(a, b, c, d).unwrap().inverse();
        let mut image = mesh.clone();
        for p in &mut image.vertices {
            *p = back.apply(*p);
        }
        let moved = gradient_forms(&image, &u).energy();

        let cond = TransplantCondition::new(a, b, c, d, 1.0, forms.yy / energy, forms.xy / energy).unwrap();
        let want = lemtrace_lhs(&cond) * energy * d / b;
        prop_assert!((moved - want).abs() <= 1e-10 * want.abs().max(1.0), "{} vs {}", moved, want);
    }

    #[test]
    fn tau_maps_the_fan_triangle(a in -2.0f64..2.0, b in 0.2f64..5.0, c in -2.0f64..2.0, d in 0.2f64..5.0) {
        let t = tau_map(a, b, c, d).unwrap();
        let from = FanTriangle::new(c, d).unwrap().triangle().vertices();
        let to = FanTriangle::new(a, b).unwrap().triangle().vertices();
        for (p, q) in from.iter().zip(&to) {
            let m = t.apply(*p);
            prop_assert!((m[0] - q[0]).abs() < 1e-12 && (m[1] - q[1]).abs() < 1e-12);
        }
        let back = t.inverse().apply(t.apply([0.3, 0.2]));
        prop_assert!((back[0] - 0.3).abs() < 1e-12 && (back[1] - 0.2).abs() < 1e-12);
    }
}
