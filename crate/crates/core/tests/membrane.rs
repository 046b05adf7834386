use phonon_trap::cavity::{characterize, CavityGeometry, CharacterizeOptions, ModeIndex};
use phonon_trap::constants::HBAR;
use phonon_trap::material::MaterialParams;
use phonon_trap::membrane::{compare, membrane_effective_mass, membrane_frequency, membrane_zpf, MembraneSpec};
use proptest::prelude::*;

#[test]
fn thick_membranes_are_rejected() {
    assert!(MembraneSpec::new(0.03, 0.03, 0.002, 1e9, 1000.0, 1, 1).is_err());
    assert!(MembraneSpec::quartz_like().with_mode(0, 1).is_err());
}

#[test]
fn comparison_table_has_both_columns() {
    let mat = MaterialParams::quartz_example();
    let geo = CavityGeometry::quartz_example();
    let c = characterize(&mat, &geo, ModeIndex::new(227, 0, 0).unwrap(), 0.02, CharacterizeOptions::default()).unwrap();
    let cmp = compare(&c, &MembraneSpec::quartz_like(), 0.02).unwrap();
    let table = cmp.to_table();
    assert!(table.contains("cavity (227, 0, 0)") && table.contains("membrane (1,1)"));
    assert!(cmp.cavity.n_thermal < 1.0 && cmp.membrane.n_thermal > 1000.0);
}

fn spec() -> impl Strategy<Value = MembraneSpec> {
    (0.005f64..0.1, 0.005f64..0.1, 0.001f64..0.04, 1e6f64..1e11, 500.0f64..8000.0, 1u32..8, 1u32..8).prop_map(
        |(a, b, hf, tau, rho, m, n)| MembraneSpec::new(a, b, hf * a.min(b), tau, rho, m, n).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn variance_is_twice_canonical(s in spec()) {
        let z = membrane_zpf(&s);
        let (m, n) = (f64::from(s.mode_m), f64::from(s.mode_n));
        let skew = ((m * s.b).powi(2) + (n * s.a).powi(2)).sqrt() / ((m * s.a).powi(2) + (n * s.b).powi(2)).sqrt();
        prop_assert!(((z.x_zpf / z.x_zpf_canonical).powi(2) / (2.0 * skew) - 1.0).abs() < 1e-12);
        let sq = membrane_zpf(&MembraneSpec { b: s.a, ..s });
        prop_assert!(((sq.x_zpf / sq.x_zpf_canonical).powi(2) - 2.0).abs() < 1e-12);
        let canonical = HBAR / (2.0 * membrane_frequency(&s) * membrane_effective_mass(&s));
        prop_assert!((z.x_zpf_canonical.powi(2) / canonical - 1.0).abs() < 1e-12);
    }

    #[test]
    fn higher_modes_move_less(s in spec()) {
        let up = s.with_mode(s.mode_m + 1, s.mode_n).unwrap();
        prop_assert!(membrane_frequency(&up) > membrane_frequency(&s));
        prop_assert!(membrane_zpf(&up).x_zpf < membrane_zpf(&s).x_zpf);
        prop_assert_eq!(membrane_effective_mass(&up), membrane_effective_mass(&s));
    }

    #[test]
    fn square_membrane_is_symmetric(s in spec()) {
        let sq = MembraneSpec { b: s.a, ..s };
        let swapped = sq.with_mode(sq.mode_n, sq.mode_m).unwrap();
        prop_assert!((membrane_frequency(&sq) / membrane_frequency(&swapped) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn separable_frequencies(s in spec(), p in 1u32..8, q in 1u32..8) {
        let sq = MembraneSpec { b: s.a, ..s };
        let w2 = |m, n| membrane_frequency(&sq.with_mode(m, n).unwrap()).powi(2);
        let (m, n) = (s.mode_m, s.mode_n);
        let lhs = w2(m, n) + w2(p, q);
        prop_assert!((lhs / (w2(m, q) + w2(p, n)) - 1.0).abs() < 1e-13);
    }
}
