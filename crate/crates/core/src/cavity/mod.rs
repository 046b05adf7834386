//! Trapped modes of a curved (plano-convex or bi-convex) BAW plate.
//!
//! The curvature turns the in-plane part of the thickness-mode equation
//! into a harmonic trap. Its eigenmodes are Hermite-Gaussians with envelope
//! curvatures `alpha`, `beta`; everything else (escape probability, mass,
//! zero-point fluctuations) follows from the dimensionless trapping
//! parameters `eta = sqrt(pi alpha) L`.

mod geometry;
mod mode;
pub(crate) mod profile;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use geometry::CavityGeometry;
pub use mode::ModeIndex;

use crate::constants::{BOLTZMANN, HBAR};
use crate::error::{Error, Result};
use crate::material::MaterialParams;
use crate::specfun::{erf_finite, hermite_unchecked};

/// Envelope curvatures of the trapped field (1/m^2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trapping {
    pub alpha: f64,
    pub beta: f64,
}

impl Trapping {
    /// Curvatures that reproduce the given trapping parameters on a plate of half-width `l`.
    pub fn from_eta(eta_x: f64, eta_y: f64, l: f64) -> Result<Self> {
        for (field, v) in [("eta_x", eta_x), ("eta_y", eta_y)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(field, format!("must be > 0, got {v}")));
            }
        }
        let scale = PI * l * l;
        Ok(Self {
            alpha: eta_x * eta_x / scale,
            beta: eta_y * eta_y / scale,
        })
    }

    /// `(eta_x, eta_y) = (sqrt(pi alpha) L, sqrt(pi beta) L)`.
    pub fn etas(&self, l: f64) -> (f64, f64) {
        trapping_parameters(self.alpha, self.beta, l)
    }
}

/// Where the trapping parameters come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TrappingSource {
    /// Computed from the material constants and the radius of curvature.
    Material,
    /// A measured or quoted `eta`, applied to both axes.
    Eta(f64),
    /// Separate overrides per axis.
    EtaXY(f64, f64),
}

impl TrappingSource {
    pub fn resolve(&self, mat: &MaterialParams, geo: &CavityGeometry, n: u32) -> Result<Trapping> {
        match *self {
            TrappingSource::Material => envelope_curvatures(mat, geo, n),
            TrappingSource::Eta(eta) => Trapping::from_eta(eta, eta, geo.l()),
            TrappingSource::EtaXY(ex, ey) => Trapping::from_eta(ex, ey, geo.l()),
        }
    }
}

/// Which approximation of the mode frequency to use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrequencyModel {
    /// `omega = n pi sqrt(c_hat / rho) / (2 h0)`.
    #[default]
    LeadingOrder,
    /// Including the in-plane `(2m + 1)`, `(2p + 1)` corrections.
    WithBracket,
}

/// `alpha^2 = c_hat / (8 R h0^3 M_n)`, `beta^2 = c_hat / (8 R h0^3 P_n)`.
pub fn envelope_curvatures(mat: &MaterialParams, geo: &CavityGeometry, n: u32) -> Result<Trapping> {
    let c_hat = mat.c_hat_z(n)?;
    let (m_n, p_n) = mat.dispersion_parameters(n)?;
    let base = c_hat / (8.0 * geo.r() * geo.h0().powi(3));
    for (field, v) in [("M_n", m_n), ("P_n", p_n)] {
        if !(v > 0.0) {
            return Err(Error::invalid(field, format!("dispersion drives it to {v}")));
        }
    }
    Ok(Trapping {
        alpha: (base / m_n).sqrt(),
        beta: (base / p_n).sqrt(),
    })
}

pub fn trapping_parameters(alpha: f64, beta: f64, l: f64) -> (f64, f64) {
    ((PI * alpha).sqrt() * l, (PI * beta).sqrt() * l)
}

/// The Hermite-Gaussian field `u_nmp(x, y)`; equals 1 at the origin for `m = p = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeShape {
    mode: ModeIndex,
    kx: f64,
    ky: f64,
}

impl ModeShape {
    pub fn new(mode: ModeIndex, trapping: Trapping) -> Self {
        let n = f64::from(mode.n());
        Self {
            mode,
            kx: trapping.alpha * n * PI,
            ky: trapping.beta * n * PI,
        }
    }

    pub fn axis_x(&self, x: f64) -> f64 {
        axis(self.mode.m(), self.kx, x)
    }

    pub fn axis_y(&self, y: f64) -> f64 {
        axis(self.mode.p(), self.ky, y)
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.axis_x(x) * self.axis_y(y)
    }

    /// Standard deviation `1/sqrt(alpha n pi)` of the `x` envelope `exp(-alpha n pi x^2 / 2)`.
    pub fn sigma_x(&self) -> f64 {
        1.0 / self.kx.sqrt()
    }

    pub fn sigma_y(&self) -> f64 {
        1.0 / self.ky.sqrt()
    }
}

fn axis(order: u32, k: f64, x: f64) -> f64 {
    (-k * x * x / 2.0).exp() * hermite_unchecked(order, k.sqrt() * x)
}

pub fn mode_shape(mode: ModeIndex, trapping: Trapping) -> ModeShape {
    ModeShape::new(mode, trapping)
}

/// Fraction of the modal energy lying outside the finite plate.
///
/// Closed forms for in-plane orders 0 and 2, numerical integration otherwise.
/// Underflows to exactly 0 for strong trapping; see
/// [`log10_escape_probability`].
pub fn escape_probability(mode: ModeIndex, eta_x: f64, eta_y: f64) -> Result<f64> {
    let (ax, ay) = edge_arguments(mode, eta_x, eta_y)?;
    let tx = profile::tail_fraction(mode.m(), ax)?;
    let ty = profile::tail_fraction(mode.p(), ay)?;
    // 1 - (1 - tx)(1 - ty)
    Ok((tx + ty - tx * ty).clamp(0.0, 1.0))
}

/// `log10` of the escape probability, finite where the linear value underflows.
pub fn log10_escape_probability(mode: ModeIndex, eta_x: f64, eta_y: f64) -> Result<f64> {
    let (ax, ay) = edge_arguments(mode, eta_x, eta_y)?;
    let lx = profile::ln_tail_fraction(mode.m(), ax)?;
    let ly = profile::ln_tail_fraction(mode.p(), ay)?;
    // ln(tx + ty (1 - tx))
    let ly = ly + (-lx.exp()).ln_1p();
    let (hi, lo) = if lx >= ly { (lx, ly) } else { (ly, lx) };
    let ln = hi + (lo - hi).exp().ln_1p();
    Ok(ln.min(0.0) / std::f64::consts::LN_10)
}

fn edge_arguments(mode: ModeIndex, eta_x: f64, eta_y: f64) -> Result<(f64, f64)> {
    for (field, v) in [("eta_x", eta_x), ("eta_y", eta_y)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::invalid(field, format!("must be >= 0, got {v}")));
        }
    }
    let sn = f64::from(mode.n()).sqrt();
    Ok((sn * eta_x, sn * eta_y))
}

/// In-plane correction coefficients of the frequency bracket,
/// `chi_x = (1/pi) sqrt(2 h0 M_n / (R c_hat))` and likewise with `P_n`.
pub(crate) fn bracket_coefficients(
    mat: &MaterialParams,
    geo: &CavityGeometry,
    n: u32,
) -> Result<(f64, f64)> {
    let c_hat = mat.c_hat_z(n)?;
    let (m_n, p_n) = mat.dispersion_parameters(n)?;
    let k = 2.0 * geo.h0() / (geo.r() * c_hat);
    Ok(((k * m_n).sqrt() / PI, (k * p_n).sqrt() / PI))
}

/// Angular frequency of the `(n, m, p)` thickness mode (rad/s).
pub fn mode_frequency(
    mat: &MaterialParams,
    geo: &CavityGeometry,
    mode: ModeIndex,
    model: FrequencyModel,
) -> Result<f64> {
    let n = mode.n();
    let c_hat = mat.c_hat_z(n)?;
    let nf = f64::from(n);
    let leading_sq = nf * nf * PI * PI * c_hat / (4.0 * geo.h0() * geo.h0() * mat.rho);
    let bracket = match model {
        FrequencyModel::LeadingOrder => 1.0,
        FrequencyModel::WithBracket => {
            let (chi_x, chi_y) = bracket_coefficients(mat, geo, n)?;
            1.0 + chi_x / nf * f64::from(2 * mode.m() + 1) + chi_y / nf * f64::from(2 * mode.p() + 1)
        }
    };
    Ok((leading_sq * bracket).sqrt())
}

/// Flat-plate mass, effective mass and the geometric factor relating them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassFactors {
    /// `m_flat / xi` (kg).
    pub m_eff: f64,
    /// `4 rho h0 L^2` (kg).
    pub m_flat: f64,
    pub xi: f64,
}

/// Geometric factor `xi = 4 n eta_x eta_y / (J_m(sqrt(n) eta_x) J_p(sqrt(n) eta_y))`.
///
/// Reduces to `(4/pi) n eta_x eta_y / (Erf Erf)` for `(n, 0, 0)` and to
/// `n eta_x eta_y / (16 pi B_x B_y)` for `(n, 2, 2)`.
pub fn geometric_factor(mode: ModeIndex, eta_x: f64, eta_y: f64) -> Result<f64> {
    let (ax, ay) = edge_arguments(mode, eta_x, eta_y)?;
    if ax == 0.0 || ay == 0.0 {
        return Err(Error::invalid("eta", "geometric factor needs eta > 0"));
    }
    let n = f64::from(mode.n());
    let jx = profile::energy_integral(mode.m(), ax)?;
    let jy = profile::energy_integral(mode.p(), ay)?;
    Ok(4.0 * n * eta_x * eta_y / (jx * jy))
}

/// `(n, 0, 0)` geometric factor written out.
pub fn geometric_factor_n00(n: u32, eta_x: f64, eta_y: f64) -> f64 {
    let sn = f64::from(n).sqrt();
    4.0 / PI * eta_x * eta_y * f64::from(n) / (erf_finite(sn * eta_x) * erf_finite(sn * eta_y))
}

/// `(n, 2, 2)` geometric factor for `alpha = beta`.
pub fn geometric_factor_n22(n: u32, eta: f64) -> f64 {
    let nf = f64::from(n);
    let a = nf.sqrt() * eta;
    let bracket = erf_finite(a) - a / PI.sqrt() * (-a * a).exp() * (1.0 + 2.0 * nf * eta * eta);
    nf * eta * eta / (16.0 * PI) / (bracket * bracket)
}

pub fn effective_mass(
    mat: &MaterialParams,
    geo: &CavityGeometry,
    mode: ModeIndex,
    eta_x: f64,
    eta_y: f64,
) -> Result<MassFactors> {
    let m_flat = flat_plate_mass(mat, geo);
    let xi = geometric_factor(mode, eta_x, eta_y)?;
    Ok(MassFactors {
        m_eff: m_flat / xi,
        m_flat,
        xi,
    })
}

/// `4 rho h0 L^2`.
pub fn flat_plate_mass(mat: &MaterialParams, geo: &CavityGeometry) -> f64 {
    4.0 * mat.rho * geo.h0() * geo.l() * geo.l()
}

/// `pi rho h0 L^2`: the `eta -> 0` limit of the `(n, 0, 0)` mass formula's
/// prefactor, used as the flat reference mass for the quartz example.
pub fn flat_plate_mass_pi(mat: &MaterialParams, geo: &CavityGeometry) -> f64 {
    PI * mat.rho * geo.h0() * geo.l() * geo.l()
}

/// Root-mean-square zero-point fluctuations of both quadratures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Zpf {
    /// `sqrt(<x^2>)` (m).
    pub x_zpf: f64,
    /// `sqrt(<p^2>)` (kg m/s).
    pub p_zpf: f64,
    pub x_zpf_flat: f64,
    pub p_zpf_flat: f64,
}

/// `<x^2> = hbar / (2 omega m)` and `<p^2> = hbar omega m / 2` for the curved
/// mode (`m = m_eff`) and the flat reference (`m = m_flat`).
pub fn zpf(
    mat: &MaterialParams,
    geo: &CavityGeometry,
    mode: ModeIndex,
    eta_x: f64,
    eta_y: f64,
    model: FrequencyModel,
) -> Result<Zpf> {
    let omega = mode_frequency(mat, geo, mode, model)?;
    let mass = effective_mass(mat, geo, mode, eta_x, eta_y)?;
    Ok(zpf_from(omega, &mass))
}

pub(crate) fn zpf_from(omega: f64, mass: &MassFactors) -> Zpf {
    let x = |m: f64| (HBAR / (2.0 * omega * m)).sqrt();
    let p = |m: f64| (HBAR * omega * m / 2.0).sqrt();
    Zpf {
        x_zpf: x(mass.m_eff),
        p_zpf: p(mass.m_eff),
        x_zpf_flat: x(mass.m_flat),
        p_zpf_flat: p(mass.m_flat),
    }
}

/// `<x^2> = hbar eta^2 / (pi^2 L^2 sqrt(c_hat rho) Erf^2(sqrt(n) eta))`:
/// displacement variance of an `(n, 0, 0)` mode with `alpha = beta`, at
/// leading order in frequency.
pub fn displacement_variance_symmetric(
    mat: &MaterialParams,
    geo: &CavityGeometry,
    n: u32,
    eta: f64,
) -> Result<f64> {
    let c_hat = mat.c_hat_z(n)?;
    let e = erf_finite(f64::from(n).sqrt() * eta);
    let l = geo.l();
    Ok(HBAR * eta * eta / (PI * PI * l * l * (c_hat * mat.rho).sqrt() * e * e))
}

/// Bose-Einstein occupancy `1 / (exp(hbar omega / k_B T) - 1)`.
pub fn thermal_occupancy(omega: f64, temperature_k: f64) -> Result<f64> {
    if !(temperature_k > 0.0 && temperature_k.is_finite()) {
        return Err(Error::domain(
            "thermal_occupancy",
            format!("temperature must be > 0 K, got {temperature_k}"),
        ));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(
            "thermal_occupancy",
            format!("angular frequency must be > 0, got {omega}"),
        ));
    }
    Ok(1.0 / (HBAR * omega / (BOLTZMANN * temperature_k)).exp_m1())
}

/// Everything known about one mode at one temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeCharacterization {
    pub mode: ModeIndex,
    /// Angular frequency (rad/s).
    pub omega: f64,
    pub f_hz: f64,
    pub alpha: f64,
    pub beta: f64,
    pub eta_x: f64,
    pub eta_y: f64,
    pub chi_inv: f64,
    pub log10_chi_inv: f64,
    pub xi: f64,
    pub m_eff: f64,
    pub m_flat: f64,
    pub m_flat_pi: f64,
    pub x_zpf: f64,
    pub p_zpf: f64,
    pub x_zpf_flat: f64,
    pub p_zpf_flat: f64,
    pub temperature_k: f64,
    pub n_thermal: f64,
}

/// Options for [`characterize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacterizeOptions {
    pub trapping: TrappingSource,
    pub frequency: FrequencyModel,
}

impl Default for CharacterizeOptions {
    fn default() -> Self {
        Self {
            trapping: TrappingSource::Material,
            frequency: FrequencyModel::LeadingOrder,
        }
    }
}

pub fn characterize(
    mat: &MaterialParams,
    geo: &CavityGeometry,
    mode: ModeIndex,
    temperature_k: f64,
    options: CharacterizeOptions,
) -> Result<ModeCharacterization> {
    // Re-check: a relaxed index must not reach the physics.
    let mode = ModeIndex::new(mode.n(), mode.m(), mode.p())?;
    let trapping = options.trapping.resolve(mat, geo, mode.n())?;
    let (eta_x, eta_y) = trapping.etas(geo.l());
    let omega = mode_frequency(mat, geo, mode, options.frequency)?;
    let mass = effective_mass(mat, geo, mode, eta_x, eta_y)?;
    let z = zpf_from(omega, &mass);
    Ok(ModeCharacterization {
        mode,
        omega,
        f_hz: omega / (2.0 * PI),
        alpha: trapping.alpha,
        beta: trapping.beta,
        eta_x,
        eta_y,
        chi_inv: escape_probability(mode, eta_x, eta_y)?,
        log10_chi_inv: log10_escape_probability(mode, eta_x, eta_y)?,
        xi: mass.xi,
        m_eff: mass.m_eff,
        m_flat: mass.m_flat,
        m_flat_pi: flat_plate_mass_pi(mat, geo),
        x_zpf: z.x_zpf,
        p_zpf: z.p_zpf,
        x_zpf_flat: z.x_zpf_flat,
        p_zpf_flat: z.p_zpf_flat,
        temperature_k,
        n_thermal: thermal_occupancy(omega, temperature_k)?,
    })
}
