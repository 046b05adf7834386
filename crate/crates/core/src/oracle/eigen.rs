//! Finite-difference solve of the one-dimensional trap
//! `-M u'' + K x^2 u = lambda u`, `K = (pi^2 n^2 c_hat / 4 h0^2) / (2 R h0)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cavity::{bracket_coefficients, envelope_curvatures, CavityGeometry};
use crate::error::{Error, Result};
use crate::material::MaterialParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenSolveConfig {
    /// Grid points including both Dirichlet ends; odd so that `x = 0` is on the grid.
    pub grid_points: usize,
    /// Domain half-width in units of the ground-state `sigma = (M / K)^(1/4)`.
    pub domain_sigmas: f64,
    pub num_eigenpairs: usize,
    /// Relative residual `|A v - lambda v| / lambda` at which a pair is accepted.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for EigenSolveConfig {
    fn default() -> Self {
        Self {
            grid_points: 2001,
            domain_sigmas: 10.0,
            num_eigenpairs: 3,
            tolerance: 1e-10,
            max_iterations: 500,
        }
    }
}

impl EigenSolveConfig {
    pub fn validated(self) -> Result<Self> {
        if self.grid_points < 201 || self.grid_points.is_multiple_of(2) {
            return Err(Error::invalid(
                "grid_points",
                format!("need an odd count >= 201, got {}", self.grid_points),
            ));
        }
        if !(self.domain_sigmas >= 8.0 && self.domain_sigmas.is_finite()) {
            return Err(Error::invalid(
                "domain_sigmas",
                format!("half-width must be >= 8 sigma, got {}", self.domain_sigmas),
            ));
        }
        if self.num_eigenpairs == 0 || self.num_eigenpairs >= self.grid_points - 2 {
            return Err(Error::invalid("num_eigenpairs", "must be >= 1 and below the grid size"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::invalid("tolerance", "must be > 0"));
        }
        if self.max_iterations == 0 {
            return Err(Error::invalid("max_iterations", "must be >= 1"));
        }
        Ok(self)
    }

    /// Same domain, `(N - 1) * 2` intervals: half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            grid_points: 2 * self.grid_points - 1,
            ..*self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    /// Eigenvalue of the in-plane operator (Pa / m^2 scale, same units as `K x^2`).
    pub lambda: f64,
    /// `sqrt((C + lambda) / rho)` with the `y` contribution left out (rad/s).
    pub omega: f64,
    /// Unit-norm eigenvector on the full grid, ends included; sign fixed so the
    /// first nonzero lobe from the left is positive.
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSolution {
    pub grid: Vec<f64>,
    pub pairs: Vec<EigenPair>,
    /// `(M / K)^(1/4)` (m).
    pub sigma: f64,
    pub m_n: f64,
    pub k: f64,
    /// `pi^2 n^2 c_hat / (4 h0^2)`.
    pub thickness_term: f64,
}

impl EigenSolution {
    /// Continuum eigenvalue `sqrt(K M) (2j + 1)`.
    pub fn exact_lambda(&self, j: usize) -> f64 {
        (self.k * self.m_n).sqrt() * (2 * j + 1) as f64
    }
}

pub fn trap_eigensolve(
    mat: &MaterialParams,
    geo: &CavityGeometry,
    n: u32,
    config: &EigenSolveConfig,
) -> Result<EigenSolution> {
    let config = config.validated()?;
    let c_hat = mat.c_hat_z(n)?;
    let (m_n, _) = mat.dispersion_parameters(n)?;
    let nf = f64::from(n);
    let thickness_term = PI * PI * nf * nf * c_hat / (4.0 * geo.h0() * geo.h0());
    let k = thickness_term / (2.0 * geo.r() * geo.h0());
    let sigma = (m_n / k).powf(0.25);
    let half = config.domain_sigmas * sigma;
    let npts = config.grid_points;
    let h = 2.0 * half / (npts - 1) as f64;
    let grid: Vec<f64> = (0..npts).map(|i| -half + i as f64 * h).collect();

    // Interior operator scaled by h^2 / M: diag 2 + (K h^2 / M) x^2, off-diagonal -1.
    let q = k * h * h / m_n;
    let diag: Vec<f64> = grid[1..npts - 1].iter().map(|x| 2.0 + q * x * x).collect();
    let scale = m_n / (h * h);
    let op = Tridiagonal { diag, off: -1.0 };

    let mut found: Vec<Vec<f64>> = Vec::new();
    let mut pairs = Vec::new();
    for j in 0..config.num_eigenpairs {
        let (mu, v, residual, iterations) = op.inverse_iteration(&found, j, &config)?;
        let lambda = mu * scale;
        let mut full = Vec::with_capacity(npts);
        full.push(0.0);
        full.extend_from_slice(&v);
        full.push(0.0);
        found.push(v);
        pairs.push(EigenPair {
            lambda,
            omega: ((thickness_term + lambda) / mat.rho).sqrt(),
            vector: full,
            residual,
            iterations,
        });
    }
    Ok(EigenSolution {
        grid,
        pairs,
        sigma,
        m_n,
        k,
        thickness_term,
    })
}

/// Symmetric tridiagonal matrix with a constant off-diagonal.
struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

impl Tridiagonal {
    fn len(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, v: &[f64], out: &mut [f64]) {
        let n = self.len();
        for i in 0..n {
            let mut s = self.diag[i] * v[i];
            if i > 0 {
                s += self.off * v[i - 1];
            }
            if i + 1 < n {
                s += self.off * v[i + 1];
            }
            out[i] = s;
        }
    }

    fn norm_bound(&self) -> f64 {
        self.diag.iter().fold(0.0f64, |m, d| m.max(d.abs())) + 2.0 * self.off.abs()
    }

    /// Solves `(A - shift I) x = b` in place by Gaussian elimination with
    /// partial pivoting. Exact zero pivots are nudged, as usual for inverse
    /// iteration, since a shift sitting on an eigenvalue is the goal.
    fn shifted_solve(&self, shift: f64, b: &mut [f64]) {
        let n = self.len();
        let tiny = f64::EPSILON * self.norm_bound();
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - shift).collect();
        let mut du = vec![self.off; n.saturating_sub(1)];
        let dl = vec![self.off; n.saturating_sub(1)];
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                d[i + 1] -= fact * du[i];
                b[i + 1] -= fact * b[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                let temp = d[i + 1];
                d[i + 1] = du[i] - fact * temp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du2[i];
                }
                du[i] = temp;
                let bi = b[i];
                b[i] = b[i + 1];
                b[i + 1] = bi - fact * b[i + 1];
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        b[n - 1] /= d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
        }
    }

    /// Lowest eigenpair orthogonal to `found`: shift-free inverse iteration
    /// until the Rayleigh quotient settles, then Rayleigh-quotient shifts.
    fn inverse_iteration(
        &self,
        found: &[Vec<f64>],
        seed: usize,
        config: &EigenSolveConfig,
    ) -> Result<(f64, Vec<f64>, f64, usize)> {
        let n = self.len();
        let floor = 8.0 * f64::EPSILON * self.norm_bound();
        // Smooth, with both parities, so no low state starts out missing.
        let mut v: Vec<f64> = (0..n)
            .map(|i| {
                let s = 2.0 * (i as f64 + 1.0) / (n as f64 + 1.0) - 1.0;
                1.0 + s + 0.5 * s * s + 0.25 * s * s * s + 1e-3 * (seed as f64 + 1.0) * s.powi(4)
            })
            .collect();
        orthonormalize(&mut v, found);
        let mut av = vec![0.0; n];
        let mut shift = 0.0;
        let mut previous = f64::INFINITY;
        let mut rayleigh_shifts = false;
        let mut last = (f64::NAN, f64::INFINITY);
        for it in 1..=config.max_iterations {
            self.shifted_solve(shift, &mut v);
            orthonormalize(&mut v, found);
            self.apply(&v, &mut av);
            let rq = dot(&v, &av);
            let residual = av
                .iter()
                .zip(&v)
                .map(|(a, x)| (a - rq * x).powi(2))
                .sum::<f64>()
                .sqrt();
            last = (rq, residual);
            if residual <= config.tolerance * rq.abs() + floor {
                fix_sign(&mut v);
                return Ok((rq, v, residual / rq.abs(), it));
            }
            if !rayleigh_shifts && (rq - previous).abs() < 1e-8 * rq.abs() {
                rayleigh_shifts = true;
            }
            if rayleigh_shifts {
                shift = rq;
            }
            previous = rq;
        }
        Err(Error::NonConvergence {
            what: "trap eigensolve",
            estimate: last.0,
            error_bound: last.1,
        })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn orthonormalize(v: &mut [f64], basis: &[Vec<f64>]) {
    // Two passes of Gram-Schmidt keep the deflation clean.
    for _ in 0..2 {
        for b in basis {
            let c = dot(v, b);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
    }
    let norm = dot(v, v).sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
}

fn fix_sign(v: &mut [f64]) {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-3 * peak) {
        if *first < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

/// Comparison of the numerical trap against the Hermite-Gaussian closed forms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenChecks {
    pub n: u32,
    /// `(lambda_2 - lambda_1) / (lambda_1 - lambda_0)`.
    pub spacing_ratio: f64,
    /// Least-squares Gaussian curvature of the ground state (1/m^2).
    pub curvature_fit: f64,
    /// `alpha n pi` (1/m^2).
    pub curvature_closed: f64,
    pub curvature_rel_err: f64,
    /// `(C + lambda_2) / (C + lambda_0)`: `omega^2` ratio of in-plane orders 2 and 0.
    pub bracket_ratio_numeric: f64,
    /// `(1 + 5 chi_x / n) / (1 + chi_x / n)`.
    pub bracket_ratio_closed: f64,
    pub bracket_rel_err: f64,
    /// Relative error of each eigenvalue against `sqrt(K M)(2j + 1)`.
    pub eigenvalue_errors: Vec<f64>,
    /// Error at `N` points over error at `2N - 1` points, per eigenvalue.
    pub refinement_ratios: Vec<f64>,
}

pub fn eigen_checks(
    mat: &MaterialParams,
    geo: &CavityGeometry,
    n: u32,
    config: &EigenSolveConfig,
) -> Result<EigenChecks> {
    let config = EigenSolveConfig {
        num_eigenpairs: config.num_eigenpairs.max(3),
        ..*config
    };
    let coarse = trap_eigensolve(mat, geo, n, &config)?;
    let fine = trap_eigensolve(mat, geo, n, &config.refined())?;
    let lam: Vec<f64> = coarse.pairs.iter().map(|p| p.lambda).collect();
    let errors = |s: &EigenSolution| -> Vec<f64> {
        s.pairs
            .iter()
            .enumerate()
            .map(|(j, p)| (p.lambda / s.exact_lambda(j) - 1.0).abs())
            .collect()
    };
    let coarse_err = errors(&coarse);
    let fine_err = errors(&fine);

    let curvature_fit = gaussian_curvature_fit(&coarse.grid, &coarse.pairs[0].vector, 3.0 * coarse.sigma);
    let curvature_closed = envelope_curvatures(mat, geo, n)?.alpha * f64::from(n) * PI;
    let (chi_x, _) = bracket_coefficients(mat, geo, n)?;
    let nf = f64::from(n);
    let c = coarse.thickness_term;
    let bracket_ratio_numeric = (c + lam[2]) / (c + lam[0]);
    let bracket_ratio_closed = (1.0 + 5.0 * chi_x / nf) / (1.0 + chi_x / nf);
    Ok(EigenChecks {
        n,
        spacing_ratio: (lam[2] - lam[1]) / (lam[1] - lam[0]),
        curvature_fit,
        curvature_closed,
        curvature_rel_err: (curvature_fit / curvature_closed - 1.0).abs(),
        bracket_ratio_numeric,
        bracket_ratio_closed,
        bracket_rel_err: (bracket_ratio_numeric / bracket_ratio_closed - 1.0).abs(),
        refinement_ratios: coarse_err.iter().zip(&fine_err).map(|(a, b)| a / b).collect(),
        eigenvalue_errors: coarse_err,
    })
}

/// Fits `ln u = c - gamma x^2 / 2` over `|x| <= half_width` and returns `gamma`.
fn gaussian_curvature_fit(grid: &[f64], u: &[f64], half_width: f64) -> f64 {
    let (mut n, mut st, mut sy, mut stt, mut sty) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, v) in grid.iter().zip(u) {
        if x.abs() <= half_width && *v > 0.0 {
            let t = x * x;
            let y = v.ln();
            n += 1.0;
            st += t;
            sy += y;
            stt += t * t;
            sty += t * y;
        }
    }
    let slope = (n * sty - st * sy) / (n * stt - st * st);
    -2.0 * slope
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartz() -> (MaterialParams, CavityGeometry) {
        (MaterialParams::quartz_example(), CavityGeometry::quartz_example())
    }

    #[test]
    fn config_rules() {
        let ok = EigenSolveConfig::default();
        assert!(ok.validated().is_ok());
        assert!(EigenSolveConfig { grid_points: 200, ..ok }.validated().is_err());
        assert!(EigenSolveConfig { grid_points: 202, ..ok }.validated().is_err());
        assert!(EigenSolveConfig { domain_sigmas: 7.9, ..ok }.validated().is_err());
        assert!(EigenSolveConfig { tolerance: 0.0, ..ok }.validated().is_err());
    }

    #[test]
    fn pivoting_solve_matches_dense() {
        let t = Tridiagonal {
            diag: vec![0.1, 3.0, -2.0, 0.5, 4.0],
            off: -1.0,
        };
        let x = [1.0, -2.0, 0.5, 3.0, -1.0];
        let mut b = vec![0.0; 5];
        t.apply(&x, &mut b);
        // Shift 0 first, then a shift that forces row interchanges.
        t.shifted_solve(0.0, &mut b);
        for (a, e) in b.iter().zip(&x) {
            assert!((a - e).abs() < 1e-12);
        }
        let shift = 2.9;
        let mut b = vec![0.0; 5];
        t.apply(&x, &mut b);
        for (bi, xi) in b.iter_mut().zip(&x) {
            *bi -= shift * xi;
        }
        t.shifted_solve(shift, &mut b);
        for (a, e) in b.iter().zip(&x) {
            assert!((a - e).abs() < 1e-12);
        }
    }

    #[test]
    fn quartz_ladder() {
        let (mat, geo) = quartz();
        let s = trap_eigensolve(&mat, &geo, 1, &EigenSolveConfig::default()).unwrap();
        for (j, p) in s.pairs.iter().enumerate() {
            assert!((p.lambda / s.exact_lambda(j) - 1.0).abs() < 1e-4, "j = {j}");
        }
        // Ground state even, first excited odd.
        let mid = s.grid.len() / 2;
        let v0 = &s.pairs[0].vector;
        let v1 = &s.pairs[1].vector;
        assert!((v0[mid - 37] - v0[mid + 37]).abs() < 1e-10);
        assert!((v1[mid - 37] + v1[mid + 37]).abs() < 1e-10);
    }

    #[test]
    fn checks_quartz() {
        let (mat, geo) = quartz();
        let c = eigen_checks(&mat, &geo, 1, &EigenSolveConfig::default()).unwrap();
        assert!((c.spacing_ratio - 1.0).abs() < 1e-4, "{}", c.spacing_ratio);
        assert!(c.curvature_rel_err < 1e-3);
        assert!(c.bracket_rel_err < 1e-3);
        for r in &c.refinement_ratios {
            assert!(*r >= 3.5, "{r}");
        }
    }
}
