//! Brute-force validators for the closed forms: two-dimensional quadrature of
//! the mode integrals, a finite-difference eigensolver for the in-plane trap,
//! and a seeded suite that runs both against the analytic results.

mod eigen;
mod suite;

pub use eigen::{eigen_checks, trap_eigensolve, EigenChecks, EigenPair, EigenSolution, EigenSolveConfig};
pub use suite::{eigen_pass, run_suite, OracleCase, OracleReport, SuiteConfig};

use crate::cavity::{ModeIndex, ModeShape, Trapping};
use crate::error::Result;
use crate::specfun::{integrate_2d, QuadratureSpec, Rect};

/// Half-width, in envelope standard deviations, of the "infinite" plate.
pub const TRUNCATION_SIGMAS: f64 = 10.0;

fn oracle_spec() -> Result<QuadratureSpec> {
    QuadratureSpec::new(1e-300, 1e-11, 48)
}

/// `rho h0 int u^2 dx dy` over the plate `[-L, L]^2`.
///
/// The thickness profile `sin(n pi z / 2 h0)` averages to one half over
/// `2 h0`, which leaves the factor `h0`.
pub fn mass_integral_oracle(
    mode: ModeIndex,
    trapping: Trapping,
    l: f64,
    rho: f64,
    h0: f64,
) -> Result<f64> {
    let u = ModeShape::new(mode, trapping);
    // Past 12 sigma, u^2 is below exp(-144) times a polynomial.
    let cx = l.min(12.0 * u.sigma_x());
    let cy = l.min(12.0 * u.sigma_y());
    let i = integrate_2d(
        |x, y| u.value(x, y).powi(2),
        Rect::new(-cx, cx, -cy, cy),
        &oracle_spec()?,
    )?;
    Ok(rho * h0 * i)
}

/// Energy outside the plate divided by the energy on a square of
/// half-width `TRUNCATION_SIGMAS` standard deviations per axis.
pub fn escape_integral_oracle(mode: ModeIndex, trapping: Trapping, l: f64) -> Result<f64> {
    let u = ModeShape::new(mode, trapping);
    let spec = oracle_spec()?;
    let wx = TRUNCATION_SIGMAS * u.sigma_x();
    let wy = TRUNCATION_SIGMAS * u.sigma_y();
    let f = |x: f64, y: f64| u.value(x, y).powi(2);
    let total = integrate_2d(f, Rect::new(-wx, wx, -wy, wy), &spec)?;
    let lx = l.min(wx);
    let ly = l.min(wy);
    let mut outside = 0.0;
    if ly < wy {
        outside += integrate_2d(f, Rect::new(-wx, wx, ly, wy), &spec)?;
        outside += integrate_2d(f, Rect::new(-wx, wx, -wy, -ly), &spec)?;
    }
    if lx < wx {
        outside += integrate_2d(f, Rect::new(lx, wx, -ly, ly), &spec)?;
        outside += integrate_2d(f, Rect::new(-wx, -lx, -ly, ly), &spec)?;
    }
    Ok(outside / total)
}

/// `(n sqrt(alpha beta) / 2) int u dx dy` over the electrode `[-L_tilde, L_tilde]^2`.
pub fn overlap_integral_oracle(mode: ModeIndex, trapping: Trapping, l_tilde: f64) -> Result<f64> {
    let u = ModeShape::new(mode, trapping);
    // u itself decays as exp(-s^2 / 2): allow a wider margin than for u^2.
    let cx = l_tilde.min(16.0 * u.sigma_x());
    let cy = l_tilde.min(16.0 * u.sigma_y());
    let i = integrate_2d(|x, y| u.value(x, y), Rect::new(-cx, cx, -cy, cy), &oracle_spec()?)?;
    Ok(f64::from(mode.n()) * (trapping.alpha * trapping.beta).sqrt() / 2.0 * i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cavity::{escape_probability, geometric_factor};
    use crate::detection::overlap_factor;

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn mass_matches_closed_form() {
        let (l, rho, h0) = (0.015, 2643.0, 5e-4);
        let m_flat = 4.0 * rho * h0 * l * l;
        for &(n, m, eta) in &[(1u32, 0u32, 2.0), (1, 2, 2.0), (5, 0, 0.7)] {
            let mode = ModeIndex::new(n, m, m).unwrap();
            let t = Trapping::from_eta(eta, eta, l).unwrap();
            let oracle = mass_integral_oracle(mode, t, l, rho, h0).unwrap();
            let closed = m_flat / geometric_factor(mode, eta, eta).unwrap();
            assert!(rel(oracle, closed) < 1e-9, "{mode}: {oracle} vs {closed}");
        }
    }

    #[test]
    fn mass_symmetric_under_axis_swap() {
        let mode = ModeIndex::new(3, 2, 0).unwrap();
        let a = mass_integral_oracle(mode, Trapping::from_eta(1.0, 2.0, 0.01).unwrap(), 0.01, 1.0, 1.0).unwrap();
        let swapped = ModeIndex::new(3, 0, 2).unwrap();
        let b = mass_integral_oracle(swapped, Trapping::from_eta(2.0, 1.0, 0.01).unwrap(), 0.01, 1.0, 1.0).unwrap();
        assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn escape_matches_closed_form() {
        for &(n, m, eta) in &[(1u32, 0u32, 1.0), (1, 2, 1.0), (3, 0, 2.5), (7, 2, 1.5)] {
            let mode = ModeIndex::new(n, m, m).unwrap();
            let t = Trapping::from_eta(eta, eta, 0.015).unwrap();
            let oracle = escape_integral_oracle(mode, t, 0.015).unwrap();
            let closed = escape_probability(mode, eta, eta).unwrap();
            assert!(rel(oracle, closed) < 1e-9, "{mode} eta {eta}: {oracle:e} vs {closed:e}");
        }
    }

    #[test]
    fn overlap_matches_closed_form() {
        let l = 0.015;
        let t = Trapping::from_eta(10.7, 10.7, l).unwrap();
        for &(n, lt) in &[(1u32, 1e-3), (227, 2.79e-4), (37, 1e-5)] {
            let mode = ModeIndex::new(n, 0, 0).unwrap();
            let oracle = overlap_integral_oracle(mode, t, lt).unwrap();
            let closed = overlap_factor(mode, t, lt).unwrap();
            assert!(rel(oracle, closed) < 1e-9);
        }
    }
}
