use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use proptest::prelude::*;
use trispec::equilateral::{
    antisym_bounds, counting_bounds, counting_exact, counting_sandwich, eigenvalue_bounds, enumerate, tail_ratio,
    SpectrumClass, Symmetry, SIGMA_UNIT,
};

/// All (m, n) with q below `q_max`, by brute force.
fn lattice(q_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for m in 1..=q_max {
        for n in 1..=q_max {
            if m * m + m * n + n * n <= q_max {
                out.push((m, n));
            }
        }
    }
    out
}

fn q(m: u64, n: u64) -> u64 {
    m * m + m * n + n * n
}

fn oracle_q(count: usize, keep: impl Fn(u64, u64) -> bool) -> Vec<u64> {
    let mut qs: Vec<u64> = lattice(40 * count as u64 + 50)
        .into_iter()
        .filter(|&(m, n)| keep(m, n))
        .map(|(m, n)| q(m, n))
        .collect();
    qs.sort_unstable();
    qs.truncate(count);
    qs
}

#[test]
fn q_sequences_match_brute_force() {
    let full = enumerate(500, SpectrumClass::Full, 1.0).unwrap();
    assert_eq!(full.q_values(), oracle_q(500, |_, _| true));
    let anti = enumerate(500, SpectrumClass::Antisym, 1.0).unwrap();
    assert_eq!(anti.q_values(), oracle_q(500, |m, n| m < n));
    let sym = enumerate(500, SpectrumClass::Sym, 1.0).unwrap();
    assert_eq!(sym.q_values(), oracle_q(500, |m, n| m >= n));
}

#[test]
fn first_110_match_reference_clusters() {
    let text = include_str!("fixtures/first_110_modes.csv");
    let mut full: BTreeMap<u64, BTreeSet<(u64, u64)>> = BTreeMap::new();
    let mut anti: BTreeMap<u64, BTreeSet<(u64, u64)>> = BTreeMap::new();
    for line in text.lines().skip(1) {
        let v: Vec<u64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        full.entry(q(v[1], v[2])).or_default().insert((v[1], v[2]));
        anti.entry(q(v[3], v[4])).or_default().insert((v[3], v[4]));
    }
    let cluster = |class| {
        let mut out: BTreeMap<u64, BTreeSet<(u64, u64)>> = BTreeMap::new();
        for r in enumerate(110, class, 1.0).unwrap().rows {
            out.entry(r.q).or_default().insert((r.mode.m, r.mode.n));
        }
        out
    };
    assert_eq!(cluster(SpectrumClass::Full), full);
    assert_eq!(cluster(SpectrumClass::Antisym), anti);
}

#[test]
fn small_cases() {
    let full = enumerate(3, SpectrumClass::Full, 1.0).unwrap();
    assert_eq!(full.q_values(), vec![3, 7, 7]);
    assert!((full.rows[0].lambda - 16.0 * PI * PI / 3.0).abs() < 1e-12);
    let anti = enumerate(2, SpectrumClass::Antisym, 1.0).unwrap();
    assert_eq!(anti.q_values(), vec![7, 13]);
    assert!(anti.rows.iter().all(|r| r.mode.symmetry() == Symmetry::Antisymmetric));
    // half of the side-4 equilateral is T(1, 2 sqrt 3); its fundamental is 7 pi^2 / 9
    let side4 = enumerate(1, SpectrumClass::Antisym, 4.0).unwrap();
    assert!((side4.rows[0].lambda - 7.0 * PI * PI / 9.0).abs() < 1e-12);
}

fn brute_count(lambda: f64, keep: impl Fn(u64, u64) -> bool) -> u64 {
    let q_max = (lambda / SIGMA_UNIT).ceil() as u64 + 1;
    lattice(q_max)
        .into_iter()
        .filter(|&(m, n)| keep(m, n) && SIGMA_UNIT * (q(m, n) as f64) < lambda * (1.0 - 1e-13))
        .count() as u64
}

#[test]
fn counting_sandwich_against_brute_force() {
    let rows = counting_sandwich(60, 2e5).unwrap();
    assert_eq!(rows.len(), 60);
    assert_eq!(rows.last().unwrap().lambda, 2e5);
    for r in &rows {
        assert!(r.lambda > 48.0 * PI * PI);
        assert_eq!(r.exact, brute_count(r.lambda, |_, _| true), "lambda {}", r.lambda);
        assert_eq!(r.antisym_exact, brute_count(r.lambda, |m, n| m < n));
        assert!(r.lower < r.exact as f64 && (r.exact as f64) < r.upper);
        assert!((r.antisym_exact as f64) < r.antisym_upper);
        assert!(r.holds);
    }
}

#[test]
fn counting_excludes_the_eigenvalue_itself() {
    let l3 = SIGMA_UNIT * 3.0;
    assert_eq!(counting_exact(l3, SpectrumClass::Full), 0);
    assert_eq!(counting_exact(l3 * 1.001, SpectrumClass::Full), 1);
    assert_eq!(counting_exact(SIGMA_UNIT * 7.0 * 1.001, SpectrumClass::Full), 3);
}

#[test]
fn counting_bounds_reject_small_lambda() {
    assert!(counting_bounds(48.0 * PI * PI).is_err());
    assert!(counting_bounds(f64::NAN).is_err());
}

#[test]
fn eigenvalue_bounds_bracket_exact_values() {
    let full = enumerate(3000, SpectrumClass::Full, 1.0).unwrap();
    let anti = enumerate(3000, SpectrumClass::Antisym, 1.0).unwrap();
    for j in 17..=3000u64 {
        let exact = full.rows[j as usize - 1].lambda;
        let b = eigenvalue_bounds(j).unwrap();
        assert!(b.lower <= exact && exact <= b.upper_closed && b.upper_closed <= b.upper, "j {j}");
    }
    for j in 9..=3000u64 {
        let exact = anti.rows[j as usize - 1].lambda;
        let b = antisym_bounds(j).unwrap();
        assert!(b.lower <= b.lower_closed && b.lower_closed <= exact, "j {j}");
    }
}

#[test]
fn tail_ratio_crosses_eleven_sixths_at_110() {
    assert!(tail_ratio(110) > 11.0 / 6.0);
    assert!(tail_ratio(109) < 11.0 / 6.0);
    assert!((tail_ratio(1_000_000_000) - 58.0 / 29.03).abs() < 1e-3);
}

proptest! {
    #[test]
    fn classes_partition_the_full_spectrum(lambda in (480.0f64..5e4)) {
        let full = counting_exact(lambda, SpectrumClass::Full);
        let anti = counting_exact(lambda, SpectrumClass::Antisym);
        let sym = counting_exact(lambda, SpectrumClass::Sym);
        let diagonal = brute_count(lambda, |m, n| m == n);
        prop_assert_eq!(full, anti + sym);
        prop_assert_eq!(full, 2 * anti + diagonal);
    }

    #[test]
    fn eigenvalues_scale_inversely_with_side_squared(s in 0.1f64..10.0, n in 1usize..80) {
        let unit = enumerate(n, SpectrumClass::Full, 1.0).unwrap();
        let scaled = enumerate(n, SpectrumClass::Full, s).unwrap();
        for (a, b) in unit.rows.iter().zip(&scaled.rows) {
            prop_assert!((a.lambda - b.lambda * s * s).abs() <= 1e-12 * a.lambda);
        }
    }

    #[test]
    fn counting_is_monotone(a in 1.0f64..1e5, b in 1.0f64..1e5) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(counting_exact(lo, SpectrumClass::Full) <= counting_exact(hi, SpectrumClass::Full));
    }
}
