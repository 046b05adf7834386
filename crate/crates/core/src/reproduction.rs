//! Reference-value reproduction: every reference figure for the quartz
//! example, recomputed and judged against its tolerance.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cavity::{
    geometric_factor, mode_frequency, thermal_occupancy, zpf, CavityGeometry, FrequencyModel, ModeIndex,
    Trapping,
};
use crate::constants::HBAR;
use crate::detection::{optimal_electrode, overlap_factor, shunt_impedance, MU_OPT_3SIGMA};
use crate::error::Result;
use crate::material::MaterialParams;
use crate::membrane::{membrane_frequency, membrane_zpf, MembraneSpec};
use crate::oracle::{eigen_pass, run_suite, SuiteConfig};

pub const SCHEMA_VERSION: u32 = 1;

/// Everything the reproduction needs; [`Default`] is the bundled quartz example.
#[derive(Debug, Clone, PartialEq)]
pub struct ReproductionInputs {
    pub material: MaterialParams,
    /// Piezoelectric variant used for the electrode figures.
    pub piezo_material: MaterialParams,
    pub geometry: CavityGeometry,
    pub membrane: MembraneSpec,
    pub temperature_k: f64,
    pub eta: f64,
    pub suite: SuiteConfig,
    /// Seed for the randomized property checks.
    pub property_seed: u64,
    pub property_samples: usize,
}

impl Default for ReproductionInputs {
    fn default() -> Self {
        Self {
            material: MaterialParams::quartz_example(),
            piezo_material: MaterialParams::quartz_piezo_example(),
            geometry: CavityGeometry::quartz_example(),
            membrane: MembraneSpec::quartz_like(),
            temperature_k: 0.02,
            eta: 10.7,
            suite: SuiteConfig::default(),
            property_seed: 20_160_921,
            property_samples: 64,
        }
    }
}

/// One measured quantity against its reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub reference: f64,
    pub tolerance: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Criterion {
    fn new(id: u32, title: &str, checks: Vec<Check>) -> Self {
        Self {
            id,
            title: title.to_string(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{:>2}] {}", self.id, self.title)?;
        for c in &self.checks {
            let mark = if c.pass { "ok" } else { "!!" };
            write!(
                f,
                "\n      {mark} {}: measured {:.6e}, reference {:.6e}, tolerance {}",
                c.name, c.measured, c.reference, c.tolerance
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub schema_version: u32,
    pub all_pass: bool,
    pub criteria: Vec<Criterion>,
}

impl ReproductionReport {
    pub fn criterion(&self, id: u32) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for ReproductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.criteria {
            writeln!(f, "{c}")?;
        }
        let passed = self.criteria.iter().filter(|c| c.pass).count();
        write!(f, "{passed}/{} criteria passed", self.criteria.len())
    }
}

fn rel_check(name: &str, measured: f64, reference: f64, rel: f64) -> Check {
    Check {
        name: name.to_string(),
        measured,
        reference,
        tolerance: format!("+-{}%", rel * 100.0),
        pass: (measured / reference - 1.0).abs() <= rel,
    }
}

fn abs_check(name: &str, measured: f64, reference: f64, abs: f64) -> Check {
    Check {
        name: name.to_string(),
        measured,
        reference,
        tolerance: format!("+-{abs}"),
        pass: (measured - reference).abs() <= abs,
    }
}

fn factor_check(name: &str, measured: f64, reference: f64, factor: f64) -> Check {
    let r = measured / reference;
    Check {
        name: name.to_string(),
        measured,
        reference,
        tolerance: format!("within x{factor}"),
        pass: r <= factor && r >= 1.0 / factor,
    }
}

fn range_check(name: &str, measured: f64, lo: f64, hi: f64) -> Check {
    Check {
        name: name.to_string(),
        measured,
        reference: 0.5 * (lo + hi),
        tolerance: format!("in [{lo:e}, {hi:e}]"),
        pass: (lo..=hi).contains(&measured),
    }
}

/// A count of failures out of a number of trials, reported as a check on zero.
fn count_check(name: &str, failures: usize, trials: usize, what: &str) -> Check {
    Check {
        name: format!("{name} ({trials} trials)"),
        measured: failures as f64,
        reference: 0.0,
        tolerance: what.to_string(),
        pass: failures == 0,
    }
}

pub fn reproduce(inputs: &ReproductionInputs) -> Result<ReproductionReport> {
    let criteria = vec![
        flat_zpf(inputs, 1)?,
        flat_zpf(inputs, 2)?,
        geometric_factors(inputs)?,
        occupancy(inputs)?,
        overtone_frequencies(inputs)?,
        membrane(inputs)?,
        electrode(inputs)?,
        oracle_equivalence(inputs)?,
        eigensolver(inputs)?,
        properties(inputs)?,
    ];
    Ok(ReproductionReport {
        schema_version: SCHEMA_VERSION,
        all_pass: criteria.iter().all(|c| c.pass),
        criteria,
    })
}

fn flat_zpf(inputs: &ReproductionInputs, id: u32) -> Result<Criterion> {
    let mode = ModeIndex::new(1, 0, 0)?;
    let z = zpf(
        &inputs.material,
        &inputs.geometry,
        mode,
        inputs.eta,
        inputs.eta,
        FrequencyModel::LeadingOrder,
    )?;
    Ok(if id == 1 {
        Criterion::new(
            1,
            "flat-plate displacement ZPF, fundamental",
            vec![rel_check("x_zpf_flat(1) [m]", z.x_zpf_flat, 4.7e-20, 0.03)],
        )
    } else {
        Criterion::new(
            2,
            "flat-plate momentum ZPF, fundamental",
            vec![factor_check("p_zpf_flat(1) [kg m/s]", z.p_zpf_flat, 1e-15, 1.5)],
        )
    })
}

fn geometric_factors(inputs: &ReproductionInputs) -> Result<Criterion> {
    let mut checks = Vec::new();
    for (n, reference) in [(7u32, 1e3), (37, 5e3), (227, 3.3e4)] {
        let xi = geometric_factor(ModeIndex::new(n, 0, 0)?, inputs.eta, inputs.eta)?;
        checks.push(rel_check(&format!("xi(n={n}, eta={})", inputs.eta), xi, reference, 0.10));
    }
    Ok(Criterion::new(3, "geometric factors at fixed trapping", checks))
}

fn occupancy(inputs: &ReproductionInputs) -> Result<Criterion> {
    let t = inputs.temperature_k;
    let n1 = thermal_occupancy(2.0 * PI * 3.138e6, t)?;
    let n227 = thermal_occupancy(2.0 * PI * 712.5e6, t)?;
    Ok(Criterion::new(
        4,
        "thermal occupancy",
        vec![
            abs_check("n_thermal(3.138 MHz)", n1, 132.0, 2.0),
            abs_check("n_thermal(712.5 MHz)", n227, 0.22, 0.01),
        ],
    ))
}

fn overtone_frequencies(inputs: &ReproductionInputs) -> Result<Criterion> {
    let f = |n: u32| -> Result<f64> {
        Ok(mode_frequency(
            &inputs.material,
            &inputs.geometry,
            ModeIndex::new(n, 0, 0)?,
            FrequencyModel::LeadingOrder,
        )? / (2.0 * PI))
    };
    let f1 = f(1)?;
    let ratio = f(227)? / f1;
    let exact = Check {
        name: "f(227) / f(1)".into(),
        measured: ratio,
        reference: 227.0,
        tolerance: "exact (1e-12 relative)".into(),
        pass: (ratio / 227.0 - 1.0).abs() <= 1e-12,
    };
    Ok(Criterion::new(
        5,
        "overtone frequencies",
        vec![exact, range_check("f(1) [Hz]", f1, 3.10e6, 3.20e6)],
    ))
}

fn membrane(inputs: &ReproductionInputs) -> Result<Criterion> {
    let s = inputs.membrane.with_mode(1, 1)?;
    let omega = membrane_frequency(&s);
    let n = thermal_occupancy(omega, inputs.temperature_k)?;
    Ok(Criterion::new(
        6,
        "membrane baseline, mode (1,1)",
        vec![
            rel_check("f(1,1) [Hz]", omega / (2.0 * PI), 149e3, 0.01),
            rel_check("x_zpf(1,1) [m]", membrane_zpf(&s).x_zpf, 6.2e-19, 0.03),
            rel_check("n_thermal(1,1)", n, 3230.0, 0.20),
        ],
    ))
}

fn electrode(inputs: &ReproductionInputs) -> Result<Criterion> {
    let geo = &inputs.geometry;
    let mut checks = Vec::new();
    for n in [1u32, 7, 37, 227] {
        let (c0, z_closed, _) = shunt_impedance(&inputs.piezo_material, geo, inputs.eta, n, MU_OPT_3SIGMA)?;
        checks.push(factor_check(&format!("C0(n={n}) [F]"), c0, 0.5e-12 / f64::from(n), 6.0));
        if n == 1 {
            checks.push(factor_check("Z_shunt [Ohm]", z_closed, 312e3, 3.0));
        }
    }
    // Exact overtone independence, where the stiffened constant itself does not vary with n.
    let z = |n: u32| -> Result<f64> {
        Ok(shunt_impedance(&inputs.material, geo, inputs.eta, n, MU_OPT_3SIGMA)?.2)
    };
    let z7 = z(7)?;
    let worst = [1u32, 37, 227]
        .iter()
        .map(|n| z(*n).map(|v| (v / z7 - 1.0).abs()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    checks.push(Check {
        name: "max |Z_derived(n)/Z_derived(7) - 1|, n in {1, 37, 227}".into(),
        measured: worst,
        reference: 0.0,
        tolerance: "<= 1e-12".into(),
        pass: worst <= 1e-12,
    });
    Ok(Criterion::new(7, "electrode capacitance and shunt impedance", checks))
}

fn oracle_equivalence(inputs: &ReproductionInputs) -> Result<Criterion> {
    let suite = SuiteConfig {
        eigen_overtones: [0, 0],
        ..inputs.suite
    };
    let report = run_suite(&suite)?;
    let mut checks = Vec::new();
    for (name, label) in [
        ("escape_n00", "escape (n,0,0)"),
        ("escape_n22", "escape (n,2,2)"),
        ("mass_n00", "mass (n,0,0)"),
        ("mass_n22", "mass (n,2,2)"),
        ("overlap_n00", "overlap (n,0,0)"),
    ] {
        let count = report.cases.iter().filter(|c| c.check == name).count();
        let worst = report.worst(name).unwrap_or(f64::INFINITY);
        checks.push(Check {
            name: format!("worst relative error, {label}, {count} sets"),
            measured: worst,
            reference: 0.0,
            tolerance: format!("<= {:e}", suite.tolerance),
            pass: worst <= suite.tolerance && count >= suite.sets,
        });
    }
    Ok(Criterion::new(8, "closed forms against quadrature oracles", checks))
}

fn eigensolver(inputs: &ReproductionInputs) -> Result<Criterion> {
    let c = crate::oracle::eigen_checks(
        &inputs.material,
        &inputs.geometry,
        1,
        &crate::oracle::EigenSolveConfig::default(),
    )?;
    let refinement = c.refinement_ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let checks = vec![
        abs_check("ladder spacing ratio", c.spacing_ratio, 1.0, 1e-4),
        rel_check("ground-state curvature [1/m^2]", c.curvature_fit, c.curvature_closed, 1e-3),
        rel_check("omega^2 ratio, orders 2 and 0", c.bracket_ratio_numeric, c.bracket_ratio_closed, 1e-3),
        Check {
            name: "error reduction per grid halving".into(),
            measured: refinement,
            reference: 4.0,
            tolerance: ">= 3.5".into(),
            pass: refinement >= 3.5 && eigen_pass(&c),
        },
    ];
    Ok(Criterion::new(9, "finite-difference trap eigensolver", checks))
}

fn properties(inputs: &ReproductionInputs) -> Result<Criterion> {
    let mut rng = ChaCha8Rng::seed_from_u64(inputs.property_seed);
    let samples = inputs.property_samples.max(1);
    let mat = &inputs.material;
    let geo = &inputs.geometry;
    let odd = |rng: &mut ChaCha8Rng| 2 * rng.gen_range(0..=150u32) + 1;

    let mut uncertainty = 0;
    let mut monotone = 0;
    let mut ordering = 0;
    let mut n_free = 0;
    let mut round_trip = 0;
    for _ in 0..samples {
        let n = odd(&mut rng);
        let eta = rng.gen_range(0.05..12.0);
        let m00 = ModeIndex::new(n, 0, 0)?;
        let m22 = ModeIndex::new(n, 2, 2)?;

        let z = zpf(mat, geo, m00, eta, eta, FrequencyModel::LeadingOrder)?;
        let product = (z.x_zpf * z.p_zpf).powi(2);
        if (product / (HBAR * HBAR / 4.0) - 1.0).abs() > 1e-12 {
            uncertainty += 1;
        }

        let xi = geometric_factor(m00, eta, eta)?;
        let xi_eta = geometric_factor(m00, eta * 1.01, eta * 1.01)?;
        let xi_n = geometric_factor(ModeIndex::new(n + 2, 0, 0)?, eta, eta)?;
        if !(xi_eta > xi && xi_n > xi) {
            monotone += 1;
        }
        if !(xi > geometric_factor(m22, eta, eta)?) {
            ordering += 1;
        }

        // Saturated trapping: erf(sqrt(n) eta) = 1 to double precision.
        let sat = rng.gen_range(6.0..15.0);
        let n2 = odd(&mut rng);
        let x1 = zpf(mat, geo, m00, sat, sat, FrequencyModel::LeadingOrder)?.x_zpf;
        let x2 = zpf(mat, geo, ModeIndex::new(n2, 0, 0)?, sat, sat, FrequencyModel::LeadingOrder)?.x_zpf;
        if (x2 / x1 - 1.0).abs() > 1e-6 {
            n_free += 1;
        }

        let mu_opt = rng.gen_range(0.05..0.999);
        let lt = optimal_electrode(geo, eta, n, mu_opt)?;
        let t = Trapping::from_eta(eta, eta, geo.l())?;
        if (overlap_factor(m00, t, lt)? - mu_opt).abs() > 1e-10 {
            round_trip += 1;
        }
    }
    Ok(Criterion::new(
        10,
        "randomized physical invariants",
        vec![
            count_check("x_zpf^2 p_zpf^2 = hbar^2/4", uncertainty, samples, "1e-12 relative, no failures"),
            count_check("xi increasing in eta and n", monotone, samples, "no failures"),
            count_check("xi(n,0,0) > xi(n,2,2)", ordering, samples, "no failures"),
            count_check("x_zpf independent of n when saturated", n_free, samples, "1e-6 relative, no failures"),
            count_check("overlap at optimal electrode = target", round_trip, samples, "1e-10 absolute, no failures"),
        ],
    ))
}
