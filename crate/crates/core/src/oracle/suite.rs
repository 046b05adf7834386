use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    eigen_checks, escape_integral_oracle, mass_integral_oracle, overlap_integral_oracle, EigenChecks,
    EigenSolveConfig,
};
use crate::cavity::{escape_probability, geometric_factor, CavityGeometry, ModeIndex, Trapping};
use crate::detection::overlap_factor;
use crate::error::{Error, Result};
use crate::material::MaterialParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub sets: usize,
    /// Relative agreement required between closed form and oracle.
    pub tolerance: f64,
    /// Escape probabilities below this are not compared.
    pub escape_floor: f64,
    /// Overtones for the eigensolver part; zeros are skipped.
    pub eigen_overtones: [u32; 2],
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed_2016,
            sets: 20,
            tolerance: 1e-8,
            escape_floor: 1e-12,
            eigen_overtones: [1, 3],
        }
    }
}

/// One closed-form / oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCase {
    pub set: usize,
    pub check: String,
    pub mode: ModeIndex,
    pub eta_x: f64,
    pub eta_y: f64,
    pub l: f64,
    pub l_tilde: Option<f64>,
    pub closed_form: f64,
    pub oracle: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub seed: u64,
    pub sets: usize,
    pub cases: Vec<OracleCase>,
    pub eigen: Vec<EigenChecks>,
    /// Escape comparisons left out because the value fell below the floor.
    pub skipped: usize,
}

impl OracleReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass) && self.eigen.iter().all(eigen_pass)
    }

    pub fn worst(&self, check: &str) -> Option<f64> {
        self.cases
            .iter()
            .filter(|c| c.check == check)
            .map(|c| c.rel_err)
            .reduce(f64::max)
    }
}

/// Ladder to 1e-4, ground-state curvature to 0.1 %, bracket ratio to 1e-3,
/// second-order convergence.
pub fn eigen_pass(e: &EigenChecks) -> bool {
    (e.spacing_ratio - 1.0).abs() <= 1e-4
        && e.curvature_rel_err <= 1e-3
        && e.bracket_rel_err <= 1e-3
        && e.refinement_ratios.iter().all(|r| *r >= 3.5)
}

#[derive(Debug, Clone, Copy)]
struct ParamSet {
    n: u32,
    eta_x: f64,
    eta_y: f64,
    l: f64,
    l_tilde: f64,
}

fn draw(rng: &mut ChaCha8Rng) -> ParamSet {
    let n = 2 * rng.gen_range(0..=20u32) + 1;
    let l = rng.gen_range(5e-3..2e-2);
    // Edge arguments sqrt(n) eta up to 4.5 keep every escape value above 1e-12.
    let sn = f64::from(n).sqrt();
    ParamSet {
        n,
        eta_x: rng.gen_range(0.2..4.5) / sn,
        eta_y: rng.gen_range(0.2..4.5) / sn,
        l,
        l_tilde: l * rng.gen_range(0.05..1.0),
    }
}

pub fn run_suite(config: &SuiteConfig) -> Result<OracleReport> {
    if config.sets == 0 {
        return Err(Error::invalid("sets", "need at least one parameter set"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sets: Vec<ParamSet> = (0..config.sets).map(|_| draw(&mut rng)).collect();
    let per_set: Vec<Result<(Vec<OracleCase>, usize)>> = sets
        .par_iter()
        .enumerate()
        .map(|(i, p)| run_set(i, p, config))
        .collect();
    let mut cases = Vec::new();
    let mut skipped = 0;
    for r in per_set {
        let (c, s) = r?;
        cases.extend(c);
        skipped += s;
    }
    let mat = MaterialParams::quartz_example();
    let geo = CavityGeometry::quartz_example();
    let eigen = config
        .eigen_overtones
        .par_iter()
        .filter(|n| **n > 0)
        .map(|n| eigen_checks(&mat, &geo, *n, &EigenSolveConfig::default()))
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleReport {
        seed: config.seed,
        sets: config.sets,
        cases,
        eigen,
        skipped,
    })
}

fn run_set(i: usize, p: &ParamSet, config: &SuiteConfig) -> Result<(Vec<OracleCase>, usize)> {
    const RHO: f64 = 2643.0;
    const H0: f64 = 5e-4;
    let t = Trapping::from_eta(p.eta_x, p.eta_y, p.l)?;
    let m_flat = 4.0 * RHO * H0 * p.l * p.l;
    let mut cases = Vec::new();
    let mut skipped = 0;
    let mut push = |check: &str, mode: ModeIndex, l_tilde: Option<f64>, closed: f64, oracle: f64| {
        let rel_err = if closed == oracle { 0.0 } else { (oracle / closed - 1.0).abs() };
        cases.push(OracleCase {
            set: i,
            check: check.to_string(),
            mode,
            eta_x: p.eta_x,
            eta_y: p.eta_y,
            l: p.l,
            l_tilde,
            closed_form: closed,
            oracle,
            rel_err,
            tolerance: config.tolerance,
            pass: rel_err <= config.tolerance,
        });
    };
    for (name, m) in [("n00", 0u32), ("n22", 2)] {
        let mode = ModeIndex::new(p.n, m, m)?;
        let closed = escape_probability(mode, p.eta_x, p.eta_y)?;
        if closed > config.escape_floor {
            let oracle = escape_integral_oracle(mode, t, p.l)?;
            push(&format!("escape_{name}"), mode, None, closed, oracle);
        } else {
            skipped += 1;
        }
        let closed = m_flat / geometric_factor(mode, p.eta_x, p.eta_y)?;
        let oracle = mass_integral_oracle(mode, t, p.l, RHO, H0)?;
        push(&format!("mass_{name}"), mode, None, closed, oracle);
    }
    let mode = ModeIndex::new(p.n, 0, 0)?;
    let closed = overlap_factor(mode, t, p.l_tilde)?;
    let oracle = overlap_integral_oracle(mode, t, p.l_tilde)?;
    push("overlap_n00", mode, Some(p.l_tilde), closed, oracle);
    Ok((cases, skipped))
}
