//! Globally adaptive Gauss-Kronrod (7/15) quadrature in one and two dimensions.
//!
//! The interval with the largest local error `|K15 - G7|` is bisected until
//! the summed error meets `max(abs_tol, rel_tol * |I|)`. An interval that has
//! been bisected `max_depth` times is frozen; if the tolerance is still unmet
//! once nothing can be refined, the best estimate is returned inside
//! [`Error::NonConvergence`].

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    abs_tol: f64,
    rel_tol: f64,
    max_depth: u32,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::invalid("abs_tol", format!("must be > 0, got {abs_tol}")));
        }
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::invalid("rel_tol", format!("must be > 0, got {rel_tol}")));
        }
        if max_depth < 1 {
            return Err(Error::invalid("max_depth", "must be >= 1"));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_depth,
        })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-10,
            max_depth: 30,
        }
    }
}

/// Axis-aligned integration rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self { x0, x1, y0, y1 }
    }

    /// The square `[-h, h]^2`.
    pub fn centered_square(half_width: f64) -> Self {
        Self::new(-half_width, half_width, -half_width, half_width)
    }
}

/// A quadrature result with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

// Gauss weights for the odd Kronrod abscissae XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 200_000;

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut finite = fc.is_finite();
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let sum = f(center - dx) + f(center + dx);
        finite &= sum.is_finite();
        kronrod += w * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    if !finite {
        return Err(Error::domain(
            "integrate",
            format!("integrand not finite on [{a}, {b}]"),
        ));
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs()))
}

/// Adaptive integration returning both the value and its error estimate.
pub fn integrate_1d_estimate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) || !(a < b) {
        return Err(Error::domain(
            "integrate_1d",
            format!("need finite a < b, got [{a}, {b}]"),
        ));
    }
    let (value, error) = gauss_kronrod(&f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Piece {
        a,
        b,
        value,
        error,
        depth: 0,
    });
    let mut total = value;
    let mut err = error;
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    let mut intervals = 1usize;
    loop {
        if err <= spec.target(total) {
            // Re-sum to shed drift from the running updates.
            let value = frozen_value + heap.iter().map(|p| p.value).sum::<f64>();
            let error = frozen_error + heap.iter().map(|p| p.error).sum::<f64>();
            return Ok(Estimate { value, error });
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                estimate: total,
                error_bound: err,
            });
        };
        if worst.depth >= spec.max_depth || intervals >= MAX_INTERVALS {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        total -= worst.value;
        err -= worst.error;
        let mid = 0.5 * (worst.a + worst.b);
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gauss_kronrod(&f, lo, hi)?;
            total += value;
            err += error;
            heap.push(Piece {
                a: lo,
                b: hi,
                value,
                error,
                depth: worst.depth + 1,
            });
        }
        err = err.max(0.0);
        intervals += 1;
    }
}

/// Integral of `f` over `[a, b]` to the tolerance in `spec`.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_1d_estimate(f, a, b, spec).map(|e| e.value)
}

/// Iterated integral over a rectangle, with the error estimate.
///
/// The inner integrals run at a tolerance 100x tighter than the outer one;
/// their worst error times the outer width is added to the reported bound.
pub fn integrate_2d_estimate<F: Fn(f64, f64) -> f64>(
    f: F,
    region: Rect,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if !(region.y0 < region.y1) {
        return Err(Error::domain(
            "integrate_2d",
            format!("need y0 < y1, got [{}, {}]", region.y0, region.y1),
        ));
    }
    let inner_spec = QuadratureSpec {
        abs_tol: spec.abs_tol / (100.0 * (region.x1 - region.x0).abs().max(1e-300)),
        rel_tol: spec.rel_tol / 100.0,
        max_depth: spec.max_depth,
    };
    let failure: Cell<Option<Error>> = Cell::new(None);
    let worst_inner = Cell::new(0.0f64);
    let outer = integrate_1d_estimate(
        |x| match integrate_1d_estimate(|y| f(x, y), region.y0, region.y1, &inner_spec) {
            Ok(e) => {
                worst_inner.set(worst_inner.get().max(e.error));
                e.value
            }
            Err(err) => {
                failure.set(Some(err));
                f64::NAN
            }
        },
        region.x0,
        region.x1,
        spec,
    );
    if let Some(err) = failure.take() {
        return Err(err);
    }
    let outer = outer?;
    Ok(Estimate {
        value: outer.value,
        error: outer.error + worst_inner.get() * (region.x1 - region.x0),
    })
}

/// Integral of `f(x, y)` over `region`.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(f: F, region: Rect, spec: &QuadratureSpec) -> Result<f64> {
    integrate_2d_estimate(f, region, spec).map(|e| e.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 1e-10, 30).is_err());
        assert!(QuadratureSpec::new(1e-14, -1.0, 30).is_err());
        assert!(QuadratureSpec::new(1e-14, 1e-10, 0).is_err());
        let d = QuadratureSpec::default();
        assert_eq!((d.abs_tol(), d.rel_tol(), d.max_depth()), (1e-14, 1e-10, 30));
    }

    #[test]
    fn simple_integrals() {
        let s = QuadratureSpec::default();
        assert!((integrate_1d(|x| x * x, 0.0, 1.0, &s).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let g = integrate_1d(|x| (-x * x).exp(), 0.0, 12.0, &s).unwrap();
        assert!((g - 0.886_226_925_452_758).abs() < 1e-12);
    }

    #[test]
    fn product_gaussian_2d() {
        let s = QuadratureSpec::default();
        let v = integrate_2d(|x, y| (-x * x - y * y).exp(), Rect::centered_square(1.0), &s).unwrap();
        // (sqrt(pi) erf(1))^2
        assert!((v - 2.230_985_141_404_134_6).abs() < 1e-10);
    }

    #[test]
    fn bad_interval() {
        let s = QuadratureSpec::default();
        assert!(integrate_1d(|x| x, 1.0, 1.0, &s).is_err());
        assert!(integrate_1d(|x| x, 2.0, 1.0, &s).is_err());
        assert!(integrate_1d(|x| x, 0.0, f64::INFINITY, &s).is_err());
    }

    #[test]
    fn non_finite_integrand_is_domain_error() {
        let s = QuadratureSpec::default();
        let r = integrate_1d(|x| (x - 0.5).sqrt(), 0.0, 1.0, &s);
        assert!(matches!(r, Err(Error::Domain { .. })));
    }

    #[test]
    fn depth_limit_reports_best_estimate() {
        let s = QuadratureSpec::new(1e-300, 1e-300, 2).unwrap();
        match integrate_1d(|x| (50.0 * x).sin().abs(), 0.0, 3.0, &s) {
            Err(Error::NonConvergence {
                estimate,
                error_bound,
                ..
            }) => {
                assert!(estimate.is_finite() && error_bound > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
