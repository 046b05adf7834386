//! Rectangular stressed membrane, used as a baseline for the curved cavity.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cavity::{thermal_occupancy, ModeCharacterization};
use crate::constants::HBAR;
use crate::error::{Error, Result};

/// Membrane of sides `a x b`, thickness `h`, in-plane stress `tau`, vibrating
/// in mode `(mode_m, mode_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembraneSpec {
    pub a: f64,
    pub b: f64,
    pub h: f64,
    pub tau: f64,
    pub rho: f64,
    pub mode_m: u32,
    pub mode_n: u32,
}

impl MembraneSpec {
    pub fn new(a: f64, b: f64, h: f64, tau: f64, rho: f64, mode_m: u32, mode_n: u32) -> Result<Self> {
        Self {
            a,
            b,
            h,
            tau,
            rho,
            mode_m,
            mode_n,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        for (field, v) in [("a", self.a), ("b", self.b), ("h", self.h), ("tau", self.tau), ("rho", self.rho)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(field, format!("must be > 0, got {v}")));
            }
        }
        if self.mode_m == 0 || self.mode_n == 0 {
            return Err(Error::invalid("mode", "membrane mode numbers start at 1"));
        }
        let limit = self.a.min(self.b) / 20.0;
        if !(self.h < limit) {
            return Err(Error::invalid(
                "h",
                format!("membrane must be thin: h = {} is not below min(a, b)/20 = {limit}", self.h),
            ));
        }
        Ok(self)
    }

    /// Same footprint and density as the quartz cavity: `a = b = 30 mm`,
    /// `h = 0.5 mm`, `tau = 105 GPa`, `rho = 2643`.
    pub fn quartz_like() -> Self {
        Self::new(0.03, 0.03, 5e-4, 105e9, 2643.0, 1, 1).expect("default membrane is valid")
    }

    pub fn with_mode(mut self, mode_m: u32, mode_n: u32) -> Result<Self> {
        self.mode_m = mode_m;
        self.mode_n = mode_n;
        self.validated()
    }

    /// Transverse wave speed `sqrt(tau / rho)`.
    pub fn wave_speed(&self) -> f64 {
        (self.tau / self.rho).sqrt()
    }
}

/// `omega = pi c sqrt(m^2/a^2 + n^2/b^2)`.
pub fn membrane_frequency(spec: &MembraneSpec) -> f64 {
    let m = f64::from(spec.mode_m);
    let n = f64::from(spec.mode_n);
    PI * spec.wave_speed() * ((m / spec.a).powi(2) + (n / spec.b).powi(2)).sqrt()
}

/// `rho h a b / 4`, the same for every mode.
pub fn membrane_effective_mass(spec: &MembraneSpec) -> f64 {
    spec.rho * spec.h * spec.a * spec.b / 4.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembraneZpf {
    /// From `<x^2> = 4 hbar / (pi sqrt(tau rho) h sqrt(m^2 a^2 + n^2 b^2))` (m).
    pub x_zpf: f64,
    /// From `hbar / (2 omega m_eff)` (m); for a square membrane `x_zpf^2` is exactly twice its square.
    pub x_zpf_canonical: f64,
}

pub fn membrane_zpf(spec: &MembraneSpec) -> MembraneZpf {
    let m = f64::from(spec.mode_m);
    let n = f64::from(spec.mode_n);
    let span = ((m * spec.a).powi(2) + (n * spec.b).powi(2)).sqrt();
    let var = 4.0 * HBAR / (PI * (spec.tau * spec.rho).sqrt() * spec.h * span);
    let canonical = HBAR / (2.0 * membrane_frequency(spec) * membrane_effective_mass(spec));
    MembraneZpf {
        x_zpf: var.sqrt(),
        x_zpf_canonical: canonical.sqrt(),
    }
}

/// One column of the comparison table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonatorSummary {
    pub f_hz: f64,
    pub m_eff: f64,
    pub x_zpf: f64,
    pub n_thermal: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembraneComparison {
    pub temperature_k: f64,
    pub cavity_mode: String,
    pub membrane_mode: (u32, u32),
    pub cavity: ResonatorSummary,
    pub membrane: ResonatorSummary,
    pub membrane_x_zpf_canonical: f64,
    pub notes: Vec<String>,
}

impl MembraneComparison {
    /// Plain-text table, one quantity per row.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:<12} {:>16} {:>16}\n",
            "quantity",
            format!("cavity {}", self.cavity_mode),
            format!("membrane ({},{})", self.membrane_mode.0, self.membrane_mode.1)
        );
        let rows = [
            ("f [Hz]", self.cavity.f_hz, self.membrane.f_hz),
            ("m_eff [kg]", self.cavity.m_eff, self.membrane.m_eff),
            ("x_zpf [m]", self.cavity.x_zpf, self.membrane.x_zpf),
            ("n_thermal", self.cavity.n_thermal, self.membrane.n_thermal),
        ];
        for (name, c, m) in rows {
            out.push_str(&format!("{name:<12} {c:>16.6e} {m:>16.6e}\n"));
        }
        for note in &self.notes {
            out.push_str(note);
            out.push('\n');
        }
        out
    }
}

pub fn compare(
    cavity: &ModeCharacterization,
    spec: &MembraneSpec,
    temperature_k: f64,
) -> Result<MembraneComparison> {
    let omega_c = 2.0 * PI * cavity.f_hz;
    let omega_m = membrane_frequency(spec);
    let zpf = membrane_zpf(spec);
    Ok(MembraneComparison {
        temperature_k,
        cavity_mode: cavity.mode.to_string(),
        membrane_mode: (spec.mode_m, spec.mode_n),
        cavity: ResonatorSummary {
            f_hz: cavity.f_hz,
            m_eff: cavity.m_eff,
            x_zpf: cavity.x_zpf,
            n_thermal: thermal_occupancy(omega_c, temperature_k)?,
        },
        membrane: ResonatorSummary {
            f_hz: omega_m / (2.0 * PI),
            m_eff: membrane_effective_mass(spec),
            x_zpf: zpf.x_zpf,
            n_thermal: thermal_occupancy(omega_m, temperature_k)?,
        },
        membrane_x_zpf_canonical: zpf.x_zpf_canonical,
        notes: vec![
            "cavity: thermal occupancy falls as the overtone number grows while x_zpf stays put".into(),
            "membrane: x_zpf falls with the mode numbers while occupancy falls with frequency, so the two favour different modes".into(),
        ],
    })
}
