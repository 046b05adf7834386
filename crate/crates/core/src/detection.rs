//! Readout figures: optomechanical displacement, piezoelectric current,
//! electrode overlap and sizing, parasitic capacitance and shunt impedance.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::cavity::{
    effective_mass, mode_frequency, zpf_from, CavityGeometry, FrequencyModel, ModeCharacterization,
    ModeIndex, ModeShape, Trapping,
};
use crate::error::{Error, Result};
use crate::material::MaterialParams;
use crate::specfun::{erf_finite, erf_inv, integrate_1d, QuadratureSpec};

/// `erf(3/sqrt(2))^2`: three standard deviations of coverage on each axis.
pub const MU_OPT_3SIGMA: f64 = 0.994_607_696_772_262_8;

/// Motional impedance scale of the equivalent circuit at high overtones (Ohm).
pub const MOTIONAL_IMPEDANCE_OHM: f64 = 100.0;

/// A sized electrode and its electrical figures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElectrodeDesign {
    pub n: u32,
    /// Electrode half-width (m).
    pub l_tilde: f64,
    /// Overlap actually achieved at `l_tilde`.
    pub mu: f64,
    pub mu_opt: f64,
    /// Parallel-plate capacitance (F).
    pub c0: f64,
    /// Closed-form shunt impedance magnitude (Ohm).
    pub z_closed: f64,
    /// `1 / (omega_n C0)` (Ohm).
    pub z_derived: f64,
}

/// Overlap of the field with a centred square electrode of half-width `l_tilde`.
///
/// `mu = (n sqrt(alpha beta) / 2) int u dx dy` over the electrode, so that
/// `mu -> 1` for a `(n, 0, 0)` mode and an infinite electrode.
pub fn overlap_factor(mode: ModeIndex, trapping: Trapping, l_tilde: f64) -> Result<f64> {
    if !(l_tilde >= 0.0) {
        return Err(Error::invalid("L_tilde", format!("must be >= 0, got {l_tilde}")));
    }
    if l_tilde.is_infinite() && mode.m() == 0 && mode.p() == 0 {
        return Ok(1.0);
    }
    let n = f64::from(mode.n());
    if mode.m() == 0 && mode.p() == 0 {
        let half_n = (n / 2.0).sqrt();
        let nu_x = (PI * trapping.alpha).sqrt() * l_tilde;
        let nu_y = (PI * trapping.beta).sqrt() * l_tilde;
        return Ok(erf_finite(half_n * nu_x) * erf_finite(half_n * nu_y));
    }
    let shape = ModeShape::new(mode, trapping);
    let spec = QuadratureSpec::new(1e-300, 1e-13, 40)?;
    let lx = l_tilde.min(12.0 * shape.sigma_x());
    let ly = l_tilde.min(12.0 * shape.sigma_y());
    let ix = integrate_1d(|x| shape.axis_x(x), -lx, lx, &spec)?;
    let iy = integrate_1d(|y| shape.axis_y(y), -ly, ly, &spec)?;
    Ok(n * (trapping.alpha * trapping.beta).sqrt() / 2.0 * ix * iy)
}

/// Detectable displacement and its gain over a flat plate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisplacementReadout {
    /// `sqrt(<x^2>)` of the curved mode (m).
    pub x_detect: f64,
    pub x_flat: f64,
    /// `x_detect / x_flat = sqrt(xi)`.
    pub gain: f64,
}

pub fn optomech_displacement(c: &ModeCharacterization) -> DisplacementReadout {
    DisplacementReadout {
        x_detect: c.x_zpf,
        x_flat: c.x_zpf_flat,
        gain: c.x_zpf / c.x_zpf_flat,
    }
}

/// Zero-point current through the electrodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiezoCurrent {
    /// `sqrt(<I^2>)` (A).
    pub i_rms: f64,
    /// Same expression with `xi = 1`.
    pub i_rms_flat: f64,
    /// `sqrt(xi)`.
    pub gain: f64,
}

/// `sqrt(<I^2>) = e pi mu / (sqrt(alpha beta) h0 m_flat) sqrt(xi) sqrt(<p_flat^2>)`,
/// with the flat-plate momentum of the same overtone at leading order.
pub fn piezo_current_zpf(
    mat: &MaterialParams,
    geo: &CavityGeometry,
    mode: ModeIndex,
    trapping: Trapping,
    mu: f64,
) -> Result<PiezoCurrent> {
    if mat.e_z == 0.0 {
        return Err(Error::UnsupportedReadout(
            "piezoelectric current needs e_z != 0; this material has no piezoelectric coupling".into(),
        ));
    }
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::invalid("mu", format!("must be >= 0, got {mu}")));
    }
    let (eta_x, eta_y) = trapping.etas(geo.l());
    let mass = effective_mass(mat, geo, mode, eta_x, eta_y)?;
    let omega = mode_frequency(mat, geo, mode, FrequencyModel::LeadingOrder)?;
    let p_flat = zpf_from(omega, &mass).p_zpf_flat;
    let flat = mat.e_z.abs() * PI * mu / ((trapping.alpha * trapping.beta).sqrt() * geo.h0() * mass.m_flat)
        * p_flat;
    let gain = mass.xi.sqrt();
    Ok(PiezoCurrent {
        i_rms: flat * gain,
        i_rms_flat: flat,
        gain,
    })
}

/// `L_tilde_opt = (L / eta) sqrt(2/n) erfinv(sqrt(mu_opt))`, for `alpha = beta`.
pub fn optimal_electrode(geo: &CavityGeometry, eta: f64, n: u32, mu_opt: f64) -> Result<f64> {
    if !(mu_opt > 0.0 && mu_opt < 1.0) {
        return Err(Error::invalid("mu_opt", format!("must lie in (0, 1), got {mu_opt}")));
    }
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::invalid("eta", format!("must be > 0, got {eta}")));
    }
    if n == 0 {
        return Err(Error::invalid("n", "overtone must be >= 1"));
    }
    Ok(geo.l() / eta * (2.0 / f64::from(n)).sqrt() * erf_inv(mu_opt.sqrt())?)
}

/// `(C0, Z_closed, Z_derived)` for the optimal electrode.
///
/// `C0 = eps (2 L_tilde)^2 / (2 h0)`: square plates of side `2 L_tilde` across
/// the full thickness, no fringing. `Z_derived = 1 / (omega_n C0)`;
/// `Z_closed = 2 h0^2 / (eps L^2) sqrt(rho / c_hat) eta^2 erf^2(sqrt(mu_opt))`.
pub fn shunt_impedance(
    mat: &MaterialParams,
    geo: &CavityGeometry,
    eta: f64,
    n: u32,
    mu_opt: f64,
) -> Result<(f64, f64, f64)> {
    let mode = ModeIndex::fundamental_family(n)?;
    let l_tilde = optimal_electrode(geo, eta, n, mu_opt)?;
    let c0 = mat.eps_z * (2.0 * l_tilde).powi(2) / (2.0 * geo.h0());
    let omega = mode_frequency(mat, geo, mode, FrequencyModel::LeadingOrder)?;
    let c_hat = mat.c_hat_z(n)?;
    let z_closed = 2.0 * geo.h0().powi(2) / (mat.eps_z * geo.l().powi(2))
        * (mat.rho / c_hat).sqrt()
        * eta
        * eta
        * erf_finite(mu_opt.sqrt()).powi(2);
    Ok((c0, z_closed, 1.0 / (omega * c0)))
}

/// Sizes the electrode for `(n, 0, 0)` and evaluates everything about it.
pub fn electrode_design(
    mat: &MaterialParams,
    geo: &CavityGeometry,
    eta: f64,
    n: u32,
    mu_opt: f64,
) -> Result<ElectrodeDesign> {
    let mode = ModeIndex::fundamental_family(n)?;
    let l_tilde = optimal_electrode(geo, eta, n, mu_opt)?;
    if !(l_tilde < geo.l()) {
        return Err(Error::invalid(
            "L_tilde",
            format!("optimal electrode {l_tilde} m does not fit on a plate of half-width {}", geo.l()),
        ));
    }
    let trapping = Trapping::from_eta(eta, eta, geo.l())?;
    let mu = overlap_factor(mode, trapping, l_tilde)?;
    let (c0, z_closed, z_derived) = shunt_impedance(mat, geo, eta, n, mu_opt)?;
    Ok(ElectrodeDesign {
        n,
        l_tilde,
        mu,
        mu_opt,
        c0,
        z_closed,
        z_derived,
    })
}

/// Shunt impedance against the motional scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShuntComparison {
    pub z_shunt: f64,
    pub ratio: f64,
    pub negligible: bool,
}

impl ShuntComparison {
    pub fn verdict(&self) -> &'static str {
        if self.negligible {
            "parasitic impedance negligible"
        } else {
            "parasitic impedance not negligible"
        }
    }
}

pub fn shunt_vs_motional(z_shunt: f64) -> Result<ShuntComparison> {
    if !(z_shunt > 0.0 && z_shunt.is_finite()) {
        return Err(Error::domain(
            "shunt_vs_motional",
            format!("impedance must be > 0, got {z_shunt}"),
        ));
    }
    let ratio = z_shunt / MOTIONAL_IMPEDANCE_OHM;
    Ok(ShuntComparison {
        z_shunt,
        ratio,
        negligible: ratio > 100.0,
    })
}

/// Half-width covering `k` standard deviations of the `(n, 0, 0)` envelope.
pub fn sigma_electrode(geo: &CavityGeometry, eta: f64, n: u32, k: f64) -> f64 {
    k * geo.l() / (eta * f64::from(n).sqrt())
}

#[doc(hidden)]
pub fn mu_for_sigmas(k: f64) -> f64 {
    erf_finite(k / SQRT_2).powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn piezo() -> (MaterialParams, CavityGeometry) {
        (MaterialParams::quartz_piezo_example(), CavityGeometry::quartz_example())
    }

    #[test]
    fn three_sigma_constant() {
        assert!((mu_for_sigmas(3.0) - MU_OPT_3SIGMA).abs() < 1e-16);
    }

    #[test]
    fn overlap_three_sigma() {
        let geo = CavityGeometry::quartz_example();
        let t = Trapping::from_eta(10.7, 10.7, geo.l()).unwrap();
        let m = ModeIndex::new(227, 0, 0).unwrap();
        let lt = sigma_electrode(&geo, 10.7, 227, 3.0);
        assert!((overlap_factor(m, t, lt).unwrap() - MU_OPT_3SIGMA).abs() < 1e-15);
        assert_eq!(overlap_factor(m, t, 0.0).unwrap(), 0.0);
        let full = overlap_factor(ModeIndex::new(1, 0, 0).unwrap(), t, geo.l()).unwrap();
        assert!(1.0 - full < 1e-15);
    }

    #[test]
    fn overlap_of_m2_mode_is_signed() {
        let t = Trapping::from_eta(3.0, 3.0, 0.015).unwrap();
        let m = ModeIndex::new(1, 2, 0).unwrap();
        // int exp(-s^2/2) H2(s) ds = 2 sqrt(2 pi), twice the m = 0 value.
        let v = overlap_factor(m, t, 1.0).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        let small = overlap_factor(m, t, 1e-4).unwrap();
        assert!(small < 0.0);
    }

    #[test]
    fn optimal_electrode_values() {
        let geo = CavityGeometry::quartz_example();
        let lt = optimal_electrode(&geo, 10.7, 227, MU_OPT_3SIGMA).unwrap();
        assert!((lt / 2.791_359_721_682_125e-4 - 1.0).abs() < 1e-12);
        let r = optimal_electrode(&geo, 10.7, 1, MU_OPT_3SIGMA).unwrap()
            / optimal_electrode(&geo, 10.7, 9, MU_OPT_3SIGMA).unwrap();
        assert!((r - 3.0).abs() < 1e-12);
        assert!(optimal_electrode(&geo, 10.7, 1, 1.0).is_err());
        assert!(optimal_electrode(&geo, 10.7, 1, 0.0).is_err());
    }

    #[test]
    fn shunt_values() {
        let (mat, geo) = piezo();
        let (c0, zp, zd) = shunt_impedance(&mat, &geo, 10.7, 227, MU_OPT_3SIGMA).unwrap();
        assert!((c0 / 1.265_370_309_162_68e-14 - 1.0).abs() < 1e-12);
        assert!((zp / 704_158.984_068_240_7 - 1.0).abs() < 1e-12);
        assert!((zd / 17_581.688_054_757_76 - 1.0).abs() < 1e-12);
        let (c1, zp1, _) = shunt_impedance(&mat, &geo, 10.7, 1, MU_OPT_3SIGMA).unwrap();
        assert!((c1 / 2.872_390_601_799_284e-12 - 1.0).abs() < 1e-12);
        assert!((zp1 / 704_829.373_380_275_3 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shunt_derived_is_overtone_free_without_stiffening() {
        let mat = MaterialParams::quartz_example();
        let geo = CavityGeometry::quartz_example();
        let z7 = shunt_impedance(&mat, &geo, 10.7, 7, MU_OPT_3SIGMA).unwrap().2;
        let z227 = shunt_impedance(&mat, &geo, 10.7, 227, MU_OPT_3SIGMA).unwrap().2;
        assert!((z7 / z227 - 1.0).abs() < 1e-12);
        let z2 = shunt_impedance(&mat, &geo, 21.4, 7, MU_OPT_3SIGMA).unwrap().2;
        assert!((z2 / z7 - 4.0).abs() < 1e-12);
    }

    #[test]
    fn motional_comparison() {
        let c = shunt_vs_motional(312e3).unwrap();
        assert!((c.ratio - 3120.0).abs() < 1e-9);
        assert!(c.negligible);
        let c = shunt_vs_motional(100.0).unwrap();
        assert_eq!(c.ratio, 1.0);
        assert!(!c.negligible);
        assert!(shunt_vs_motional(0.0).is_err());
    }

    #[test]
    fn piezo_current_reference() {
        let (mat, geo) = piezo();
        for &(n, expect) in &[
            (1u32, 9.192_517_582_314_471e-14),
            (7, 6.434_762_307_615_69e-13),
            (227, 2.086_701_491_183_945e-11),
        ] {
            let t = crate::cavity::envelope_curvatures(&mat, &geo, n).unwrap();
            let m = ModeIndex::new(n, 0, 0).unwrap();
            let i = piezo_current_zpf(&mat, &geo, m, t, MU_OPT_3SIGMA).unwrap();
            assert!((i.i_rms / expect - 1.0).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn piezo_current_needs_coupling() {
        let mat = MaterialParams::quartz_example();
        let geo = CavityGeometry::quartz_example();
        let t = Trapping::from_eta(10.7, 10.7, geo.l()).unwrap();
        let r = piezo_current_zpf(&mat, &geo, ModeIndex::new(1, 0, 0).unwrap(), t, 0.9);
        assert!(matches!(r, Err(Error::UnsupportedReadout(_))));
    }

    #[test]
    fn piezo_current_linear_in_mu() {
        let (mat, geo) = piezo();
        let t = Trapping::from_eta(10.7, 10.7, geo.l()).unwrap();
        let m = ModeIndex::new(7, 0, 0).unwrap();
        let a = piezo_current_zpf(&mat, &geo, m, t, 0.3).unwrap().i_rms;
        let b = piezo_current_zpf(&mat, &geo, m, t, 0.6).unwrap().i_rms;
        assert!((b / a - 2.0).abs() < 1e-14);
    }

    #[test]
    fn design_round_trip() {
        let (mat, geo) = piezo();
        let d = electrode_design(&mat, &geo, 10.7, 37, 0.9).unwrap();
        assert!((d.mu - 0.9).abs() < 1e-12);
        assert!(electrode_design(&mat, &geo, 0.01, 1, 0.99).is_err());
    }
}
