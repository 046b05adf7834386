use phonon_trap::cavity::CavityGeometry;
use phonon_trap::material::MaterialParams;
use phonon_trap::oracle::{eigen_checks, eigen_pass, run_suite, trap_eigensolve, EigenSolveConfig, SuiteConfig};

#[test]
fn suite_passes_and_is_reproducible() {
    let cfg = SuiteConfig {
        sets: 6,
        eigen_overtones: [0, 0],
        ..Default::default()
    };
    let a = run_suite(&cfg).unwrap();
    let b = run_suite(&cfg).unwrap();
    assert!(a.all_pass());
    assert_eq!(a.cases.len(), b.cases.len());
    for (x, y) in a.cases.iter().zip(&b.cases) {
        assert_eq!(x, y);
    }
}

#[test]
fn different_seeds_sample_different_points() {
    let base = SuiteConfig {
        sets: 3,
        eigen_overtones: [0, 0],
        ..Default::default()
    };
    let a = run_suite(&base).unwrap();
    let b = run_suite(&SuiteConfig { seed: base.seed + 1, ..base }).unwrap();
    assert_ne!(a.cases, b.cases);
}

#[test]
fn eigenvalues_follow_odd_ladder() {
    let mat = MaterialParams::quartz_example();
    let geo = CavityGeometry::quartz_example();
    let cfg = EigenSolveConfig {
        num_eigenpairs: 4,
        ..Default::default()
    };
    let s = trap_eigensolve(&mat, &geo, 3, &cfg).unwrap();
    for (j, p) in s.pairs.iter().enumerate() {
        let want = s.exact_lambda(j);
        assert!((p.lambda / want - 1.0).abs() < 1e-4, "level {j}: {} vs {want}", p.lambda);
        assert!(p.residual < 1e-9);
    }
}

#[test]
fn eigen_checks_pass_at_fundamental() {
    let mat = MaterialParams::quartz_example();
    let geo = CavityGeometry::quartz_example();
    let c = eigen_checks(&mat, &geo, 1, &EigenSolveConfig::default()).unwrap();
    assert!(eigen_pass(&c));
    assert!(c.refinement_ratios.iter().all(|r| (r - 4.0).abs() < 0.05));
}

#[test]
fn eigen_config_is_validated() {
    let mat = MaterialParams::quartz_example();
    let geo = CavityGeometry::quartz_example();
    let even = EigenSolveConfig {
        grid_points: 2000,
        ..Default::default()
    };
    assert!(trap_eigensolve(&mat, &geo, 1, &even).is_err());
    let narrow = EigenSolveConfig {
        domain_sigmas: 4.0,
        ..Default::default()
    };
    assert!(trap_eigensolve(&mat, &geo, 1, &narrow).is_err());
}
