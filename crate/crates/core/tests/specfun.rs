use phonon_trap::specfun::{
    erf, erf_inv, erfc, hermite, integrate_1d, QuadratureSpec,
};
use proptest::prelude::*;

fn tight() -> QuadratureSpec {
    QuadratureSpec::new(1e-300, 1e-16, 40).unwrap()
}

/// erf by direct quadrature of (2/sqrt(pi)) exp(-t^2) on [0, x].
fn erf_by_quadrature(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let (a, b) = if x > 0.0 { (0.0, x) } else { (x, 0.0) };
    let v = integrate_1d(
        |t| std::f64::consts::FRAC_2_SQRT_PI * (-t * t).exp(),
        a,
        b,
        &tight(),
    )
    .unwrap_or_else(|e| match e {
        phonon_trap::Error::NonConvergence { estimate, .. } => estimate,
        other => panic!("{other}"),
    });
    v.copysign(x)
}

#[test]
fn erf_matches_quadrature_to_1e14_relative() {
    let mut worst: f64 = 0.0;
    for i in -600..=600 {
        let x = f64::from(i) * 0.01;
        if x == 0.0 {
            continue;
        }
        let reference = erf_by_quadrature(x);
        let rel = (erf(x).unwrap() - reference).abs() / reference.abs();
        worst = worst.max(rel);
    }
    assert!(worst <= 1e-14, "worst relative error {worst:e}");
}

#[test]
fn erfc_tail_matches_quadrature() {
    // Tail integral on [x, x + 12]; beyond that exp(-t^2) is far below f64 resolution.
    for &x in &[2.0, 3.5, 5.0, 8.0] {
        let tail = integrate_1d(
            |t| std::f64::consts::FRAC_2_SQRT_PI * (-t * t).exp(),
            x,
            x + 12.0,
            &QuadratureSpec::new(1e-300, 1e-15, 40).unwrap(),
        )
        .unwrap();
        let rel = (erfc(x).unwrap() - tail).abs() / tail;
        assert!(rel < 1e-13, "x = {x}: rel {rel:e}");
    }
}

#[test]
fn erf_inv_round_trip_grid() {
    let mut y = -0.9999;
    while y <= 0.9999 {
        let x = erf_inv(y).unwrap();
        assert!((erf(x).unwrap() - y).abs() <= 1e-12, "y = {y}");
        let back = erf_inv(erf(x).unwrap()).unwrap();
        assert!((back - x).abs() <= 1e-10, "y = {y}");
        y += 0.0001;
    }
}

#[test]
fn erf_inv_three_over_sqrt2_by_bisection() {
    // Independent root solve of erf(x) = y by bisection.
    let y = 0.997_300_203_9;
    let (mut lo, mut hi) = (0.0f64, 5.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if erf_by_quadrature(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = erf_inv(y).unwrap();
    assert!((x - 0.5 * (lo + hi)).abs() < 1e-9);
    assert!((x - 3.0 / std::f64::consts::SQRT_2).abs() < 1e-6);
}

#[test]
fn polynomials_up_to_degree_five_are_exact() {
    let s = QuadratureSpec::default();
    let p = |x: f64| 3.0 - 2.0 * x + 0.5 * x.powi(2) + 7.0 * x.powi(3) - x.powi(4) + 0.25 * x.powi(5);
    let antiderivative = |x: f64| {
        3.0 * x - x.powi(2) + x.powi(3) / 6.0 + 1.75 * x.powi(4) - x.powi(5) / 5.0 + x.powi(6) / 24.0
    };
    for &(a, b) in &[(0.0, 1.0), (-2.0, 3.0), (-0.3, 0.4)] {
        let exact = antiderivative(b) - antiderivative(a);
        let v = integrate_1d(p, a, b, &s).unwrap();
        assert!((v - exact).abs() <= 1e-13 * exact.abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn erf_is_odd(x in -6.0f64..6.0) {
        prop_assert_eq!(erf(-x).unwrap(), -erf(x).unwrap());
        let v = erf(x).unwrap();
        prop_assert!((-1.0..=1.0).contains(&v));
    }

    #[test]
    fn erf_is_monotone(x in -6.0f64..6.0, dx in 1e-6f64..1.0) {
        prop_assert!(erf(x + dx).unwrap() >= erf(x).unwrap());
    }

    #[test]
    fn hermite_parity(k in 0i64..=12, x in -4.0f64..4.0) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let a = hermite(k, -x).unwrap();
        let b = sign * hermite(k, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
    }

    #[test]
    fn hermite_recurrence(k in 1i64..=20, x in -3.0f64..3.0) {
        let next = hermite(k + 1, x).unwrap();
        let expect = 2.0 * x * hermite(k, x).unwrap() - 2.0 * k as f64 * hermite(k - 1, x).unwrap();
        prop_assert!((next - expect).abs() <= 1e-12 * next.abs().max(1.0));
    }
}
