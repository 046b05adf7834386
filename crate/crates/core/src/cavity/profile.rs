//! One-axis integrals of the Hermite-Gaussian field in the scaled coordinate
//! `s = sqrt(alpha n pi) x`.
//!
//! With `a = sqrt(n) eta` the plate edge sits at `s = a`, and
//! `J_k(a) = int_{-a}^{a} exp(-s^2) H_k(s)^2 ds` carries every mass and escape
//! integral. `J_0` and `J_2` have closed forms; other orders are integrated.

use crate::constants::SQRT_PI;
use crate::error::Result;
use crate::specfun::{
    erf_finite, erfcx_nonneg, exp_neg_sq, hermite_unchecked, integrate_1d, QuadratureSpec,
};

/// Span past the edge over which the tail integrand is kept; beyond it the
/// scaled integrand is below `exp(-144)` times a polynomial.
const TAIL_SPAN: f64 = 12.0;

/// `J_k(inf) = 2^k k! sqrt(pi)`.
pub(crate) fn full_norm(k: u32) -> f64 {
    let mut v = SQRT_PI;
    for j in 1..=k {
        v *= 2.0 * f64::from(j);
    }
    v
}

/// `(a / sqrt(pi)) (1 + 2 a^2)`, the polynomial part of the `k = 2` bracket.
fn k2_poly(a: f64) -> f64 {
    a / SQRT_PI * (1.0 + 2.0 * a * a)
}

pub(crate) fn has_closed_form(k: u32) -> bool {
    k == 0 || k == 2
}

/// Fraction of the axis energy inside `|s| < a`, `J_k(a) / J_k(inf)`.
pub(crate) fn inside_fraction(k: u32, a: f64) -> Result<f64> {
    match k {
        0 => Ok(erf_finite(a)),
        2 => Ok(erf_finite(a) - k2_poly(a) * exp_neg_sq(a)),
        _ => Ok(1.0 - tail_fraction(k, a)?),
    }
}

/// `1 - J_k(a) / J_k(inf)`, computed without cancellation.
pub(crate) fn tail_fraction(k: u32, a: f64) -> Result<f64> {
    Ok(ln_tail_fraction(k, a)?.exp())
}

/// Natural log of the tail fraction, finite far past `exp` underflow.
pub(crate) fn ln_tail_fraction(k: u32, a: f64) -> Result<f64> {
    match k {
        0 => Ok(-a * a + erfcx_nonneg(a).ln()),
        2 => Ok(-a * a + (erfcx_nonneg(a) + k2_poly(a)).ln()),
        _ => {
            // 2 int_a^inf exp(-(s^2 - a^2)) H_k^2 ds / J_k(inf), then shift back by -a^2.
            let spec = QuadratureSpec::new(1e-300, 1e-13, 40)?;
            let scaled = integrate_1d(
                |s| (-(s - a) * (s + a)).exp() * hermite_unchecked(k, s).powi(2),
                a,
                a + TAIL_SPAN,
                &spec,
            )?;
            Ok(-a * a + (2.0 * scaled / full_norm(k)).ln())
        }
    }
}

/// `J_k(a)` itself.
pub(crate) fn energy_integral(k: u32, a: f64) -> Result<f64> {
    if has_closed_form(k) {
        return Ok(full_norm(k) * inside_fraction(k, a)?);
    }
    let spec = QuadratureSpec::new(1e-300, 1e-13, 40)?;
    integrate_1d(
        |s| exp_neg_sq(s) * hermite_unchecked(k, s).powi(2),
        -a,
        a,
        &spec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        assert!((full_norm(0) - SQRT_PI).abs() < 1e-15);
        assert!((full_norm(2) - 8.0 * SQRT_PI).abs() < 1e-14);
        assert!((full_norm(3) - 48.0 * SQRT_PI).abs() < 1e-13);
    }

    #[test]
    fn closed_and_numeric_tails_agree() {
        // Force the numeric branch by evaluating the k = 2 integrand directly.
        let spec = QuadratureSpec::new(1e-300, 1e-13, 40).unwrap();
        for &a in &[0.2, 1.0, 2.5, 4.0] {
            let numeric = 2.0
                * integrate_1d(
                    |s| exp_neg_sq(s) * hermite_unchecked(2, s).powi(2),
                    a,
                    a + 14.0,
                    &spec,
                )
                .unwrap()
                / full_norm(2);
            let closed = tail_fraction(2, a).unwrap();
            assert!((numeric / closed - 1.0).abs() < 1e-10, "a = {a}");
        }
    }

    #[test]
    fn inside_plus_tail_is_one() {
        for k in 0..6 {
            for &a in &[0.0, 0.5, 1.3, 3.0] {
                let s = inside_fraction(k, a).unwrap() + tail_fraction(k, a).unwrap();
                assert!((s - 1.0).abs() < 1e-12, "k = {k}, a = {a}");
            }
        }
    }

    #[test]
    fn log_tail_survives_strong_trapping() {
        // a = sqrt(227) * 10.7: exp(-a^2) is far below f64 range.
        let a = 227f64.sqrt() * 10.7;
        let l0 = ln_tail_fraction(0, a).unwrap();
        let l2 = ln_tail_fraction(2, a).unwrap();
        assert!(l0.is_finite() && l2.is_finite());
        assert!(l2 > l0);
        assert_eq!(tail_fraction(0, a).unwrap(), 0.0);
    }
}
