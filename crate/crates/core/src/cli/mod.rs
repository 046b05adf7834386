//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a report ran but some check failed, 2 bad input
//! or usage, 3 numerical non-convergence.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

pub use output::{fmt_num, round9, SCHEMA_VERSION};
use output::{json_document, write_output, Table};

use crate::cavity::{
    characterize, CavityGeometry, CharacterizeOptions, FrequencyModel, ModeCharacterization, ModeIndex,
    TrappingSource,
};
use crate::detection::{electrode_design, shunt_vs_motional, ElectrodeDesign, MU_OPT_3SIGMA};
use crate::error::{Error, Result};
use crate::material::{load_material, MaterialParams};
use crate::membrane::{compare, MembraneSpec};
use crate::oracle::{run_suite, SuiteConfig};
use crate::reproduction::{reproduce, ReproductionInputs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "phonon-trap", version, about = "Curved phonon-trapping BAW cavity calculator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frequency, trapping, mass, zero-point motion and occupancy of one mode.
    Characterize(CharacterizeArgs),
    /// Grid of modes over overtones and trapping parameters (or radii).
    Sweep(SweepArgs),
    /// Optimal electrode size, capacitance and shunt impedance per overtone.
    Electrode(ElectrodeArgs),
    /// Side-by-side cavity and stressed-membrane comparison.
    Membrane(MembraneArgs),
    /// Recompute the quartz reference figures and judge each against its tolerance.
    PaperReport(ReportArgs),
    /// Run every closed form against its brute-force oracle.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Material file; the bundled quartz example when absent.
    #[arg(long)]
    pub material: Option<PathBuf>,
    /// Plate half-width (m).
    #[arg(long = "L", default_value_t = 0.015)]
    pub l: f64,
    /// Half-thickness at the centre (m).
    #[arg(long, default_value_t = 5e-4)]
    pub h0: f64,
    /// Radius of curvature (m).
    #[arg(long = "R", default_value_t = 0.3)]
    pub r: f64,
    /// Electrode half-width (m).
    #[arg(long = "L-tilde")]
    pub l_tilde: Option<f64>,
    /// Bath temperature (K).
    #[arg(long = "temp-k", default_value_t = 0.02)]
    pub temp_k: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Common {
    fn material(&self) -> Result<MaterialParams> {
        match &self.material {
            Some(p) => load_material(p),
            None => Ok(MaterialParams::quartz_example()),
        }
    }

    fn geometry(&self) -> Result<CavityGeometry> {
        geometry_with_r(self, self.r)
    }

    fn temperature(&self) -> Result<f64> {
        if !(self.temp_k > 0.0 && self.temp_k.is_finite()) {
            return Err(Error::invalid("temp-k", format!("must be > 0 K, got {}", self.temp_k)));
        }
        Ok(self.temp_k)
    }
}

fn geometry_with_r(c: &Common, r: f64) -> Result<CavityGeometry> {
    let g = CavityGeometry::new(c.l, c.h0, r)?;
    match c.l_tilde {
        Some(lt) => g.with_electrode(lt),
        None => Ok(g),
    }
}

#[derive(Debug, Args)]
pub struct CharacterizeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Trapping parameter override, both axes.
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    #[arg(long, default_value_t = 0)]
    pub p: u32,
    /// Include the in-plane correction to the frequency.
    #[arg(long)]
    pub bracket: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// Overtones, comma separated, e.g. `1,3,5,15`.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub n: Vec<u32>,
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    #[arg(long, default_value_t = 0)]
    pub p: u32,
    /// Trapping parameters `start:stop:step` (inclusive).
    #[arg(long = "eta", conflicts_with = "r_range")]
    pub eta_range: Option<String>,
    /// Radii of curvature `start:stop:step` (m); trapping then follows from the material.
    #[arg(long = "R-range")]
    pub r_range: Option<String>,
    #[arg(long)]
    pub bracket: bool,
}

#[derive(Debug, Args)]
pub struct ElectrodeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Overtones, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub n: Vec<u32>,
    /// Trapping parameter; from the material and `R` at each overtone when absent.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Target overlap; three standard deviations per axis by default.
    #[arg(long = "mu-opt", default_value_t = MU_OPT_3SIGMA)]
    pub mu_opt: f64,
}

#[derive(Debug, Args)]
pub struct MembraneArgs {
    #[command(flatten)]
    pub common: Common,
    /// Cavity overtone to compare against.
    #[arg(long, default_value_t = 227)]
    pub n: u32,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long, default_value_t = 0.03)]
    pub a: f64,
    #[arg(long, default_value_t = 0.03)]
    pub b: f64,
    /// Membrane thickness (m).
    #[arg(long = "membrane-h", default_value_t = 5e-4)]
    pub h: f64,
    /// In-plane stress (Pa).
    #[arg(long, default_value_t = 105e9)]
    pub tau: f64,
    /// Membrane density; the cavity material's when absent.
    #[arg(long = "membrane-rho")]
    pub rho: Option<f64>,
    #[arg(long = "mode-m", default_value_t = 1)]
    pub mode_m: u32,
    #[arg(long = "mode-n", default_value_t = 1)]
    pub mode_n: u32,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub common: Common,
    /// Piezoelectric material for the electrode figures; bundled variant when absent.
    #[arg(long = "piezo-material")]
    pub piezo_material: Option<PathBuf>,
    #[arg(long, default_value_t = 10.7)]
    pub eta: f64,
    #[arg(long, default_value_t = SuiteConfig::default().seed)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = SuiteConfig::default().seed)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub sets: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(&cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NONCONVERGENCE
    } else {
        EXIT_INVALID
    }
}

fn dispatch(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Characterize(a) => cmd_characterize(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::Electrode(a) => cmd_electrode(a, stdout),
        Command::Membrane(a) => cmd_membrane(a, stdout),
        Command::PaperReport(a) => cmd_paper_report(a, stdout, stderr),
        Command::Oracle(a) => cmd_oracle(a, stdout, stderr),
    }
}

fn trapping_source(eta: Option<f64>) -> Result<TrappingSource> {
    match eta {
        None => Ok(TrappingSource::Material),
        Some(e) if e > 0.0 && e.is_finite() => Ok(TrappingSource::Eta(e)),
        Some(e) => Err(Error::invalid("eta", format!("must be > 0, got {e}"))),
    }
}

fn frequency_model(bracket: bool) -> FrequencyModel {
    if bracket {
        FrequencyModel::WithBracket
    } else {
        FrequencyModel::LeadingOrder
    }
}

fn emit<T: Serialize>(
    command: &str,
    format: Format,
    out: Option<&Path>,
    table: impl FnOnce() -> Table,
    data: &T,
    stdout: &mut dyn Write,
) -> Result<()> {
    let text = match format {
        Format::Csv => table().to_csv()?,
        Format::Json => json_document(command, data)?,
    };
    write_output(&text, out, stdout)
}

const MODE_HEADER: [&str; 20] = [
    "n", "m", "p", "f_Hz", "omega_rad_s", "alpha", "beta", "eta_x", "eta_y", "chi_inv", "log10_chi_inv", "xi",
    "m_eff_kg", "m_flat_kg", "x_zpf_m", "p_zpf", "x_zpf_flat_m", "p_zpf_flat", "temperature_K", "n_thermal",
];

fn mode_row(c: &ModeCharacterization) -> Vec<String> {
    let mut r = vec![c.mode.n().to_string(), c.mode.m().to_string(), c.mode.p().to_string()];
    r.extend(
        [
            c.f_hz,
            c.omega,
            c.alpha,
            c.beta,
            c.eta_x,
            c.eta_y,
            c.chi_inv,
            c.log10_chi_inv,
            c.xi,
            c.m_eff,
            c.m_flat,
            c.x_zpf,
            c.p_zpf,
            c.x_zpf_flat,
            c.p_zpf_flat,
            c.temperature_k,
            c.n_thermal,
        ]
        .map(fmt_num),
    );
    r
}

pub fn cmd_characterize(a: &CharacterizeArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mat = a.common.material()?;
    let geo = a.common.geometry()?;
    let mode = ModeIndex::new(a.n, a.m, a.p)?;
    let options = CharacterizeOptions {
        trapping: trapping_source(a.eta)?,
        frequency: frequency_model(a.bracket),
    };
    let c = characterize(&mat, &geo, mode, a.common.temperature()?, options)?;
    emit(
        "characterize",
        a.common.format,
        a.common.out.as_deref(),
        || {
            let mut t = Table::new(MODE_HEADER.to_vec());
            t.push(mode_row(&c));
            t
        },
        &c,
        stdout,
    )?;
    Ok(EXIT_OK)
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
pub fn parse_range(field: &'static str, spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::invalid(field, format!("expected start:stop:step, got {spec:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && stop.is_finite() && step > 0.0 && step.is_finite()) {
        return Err(bad());
    }
    if stop < start {
        return Err(Error::invalid(field, format!("empty range {spec:?}")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::invalid(field, format!("range {spec:?} has too many points")));
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub n: u32,
    pub m: u32,
    pub p: u32,
    pub r: f64,
    pub eta: f64,
    pub chi_inv: f64,
    pub xi: f64,
    pub f_hz: f64,
    pub m_eff_kg: f64,
    pub x_zpf_m: f64,
    pub p_zpf: f64,
    pub n_thermal: f64,
}

pub fn cmd_sweep(a: &SweepArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mat = a.common.material()?;
    let t = a.common.temperature()?;
    if a.n.is_empty() {
        return Err(Error::invalid("n", "empty overtone list"));
    }
    let modes = a
        .n
        .iter()
        .map(|n| ModeIndex::new(*n, a.m, a.p))
        .collect::<Result<Vec<_>>>()?;
    // Grid points: (R, trapping source).
    let grid: Vec<(f64, TrappingSource)> = match (&a.eta_range, &a.r_range) {
        (Some(spec), _) => {
            let etas = parse_range("eta", spec)?;
            if let Some(e) = etas.iter().find(|e| **e <= 0.0) {
                return Err(Error::invalid("eta", format!("must be > 0, range contains {e}")));
            }
            etas.into_iter().map(|e| (a.common.r, TrappingSource::Eta(e))).collect()
        }
        (None, Some(spec)) => parse_range("R-range", spec)?
            .into_iter()
            .map(|r| (r, TrappingSource::Material))
            .collect(),
        (None, None) => vec![(a.common.r, TrappingSource::Material)],
    };
    let options = |trapping| CharacterizeOptions {
        trapping,
        frequency: frequency_model(a.bracket),
    };
    let jobs: Vec<(ModeIndex, f64, TrappingSource)> = modes
        .iter()
        .flat_map(|m| grid.iter().map(move |(r, src)| (*m, *r, *src)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|(mode, r, src)| -> Result<SweepRow> {
            let geo = geometry_with_r(&a.common, *r)?;
            let c = characterize(&mat, &geo, *mode, t, options(*src))?;
            Ok(SweepRow {
                n: mode.n(),
                m: mode.m(),
                p: mode.p(),
                r: *r,
                eta: c.eta_x,
                chi_inv: c.chi_inv,
                xi: c.xi,
                f_hz: c.f_hz,
                m_eff_kg: c.m_eff,
                x_zpf_m: c.x_zpf,
                p_zpf: c.p_zpf,
                n_thermal: c.n_thermal,
            })
        })
        .collect::<Vec<Result<SweepRow>>>();
    let mut rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    rows.sort_by(|x, y| x.n.cmp(&y.n).then(x.eta.total_cmp(&y.eta)));
    emit(
        "sweep",
        a.common.format,
        a.common.out.as_deref(),
        || {
            let mut t = Table::new(vec![
                "n", "m", "p", "eta", "chi_inv", "xi", "f_Hz", "m_eff_kg", "x_zpf_m", "p_zpf", "n_thermal",
            ]);
            for r in &rows {
                let mut cells = vec![r.n.to_string(), r.m.to_string(), r.p.to_string()];
                cells.extend(
                    [r.eta, r.chi_inv, r.xi, r.f_hz, r.m_eff_kg, r.x_zpf_m, r.p_zpf, r.n_thermal].map(fmt_num),
                );
                t.push(cells);
            }
            t
        },
        &rows,
        stdout,
    )?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
struct ElectrodeRow {
    #[serde(flatten)]
    design: ElectrodeDesign,
    eta: f64,
    shunt_to_motional: f64,
    verdict: &'static str,
}

pub fn cmd_electrode(a: &ElectrodeArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mat = a.common.material()?;
    let geo = a.common.geometry()?;
    if a.n.is_empty() {
        return Err(Error::invalid("n", "empty overtone list"));
    }
    let mut rows = Vec::new();
    for &n in &a.n {
        ModeIndex::new(n, 0, 0)?;
        let eta = match trapping_source(a.eta)? {
            TrappingSource::Eta(e) => e,
            _ => {
                let t = crate::cavity::envelope_curvatures(&mat, &geo, n)?;
                t.etas(geo.l()).0
            }
        };
        let design = electrode_design(&mat, &geo, eta, n, a.mu_opt)?;
        let cmp = shunt_vs_motional(design.z_closed)?;
        rows.push(ElectrodeRow {
            design,
            eta,
            shunt_to_motional: cmp.ratio,
            verdict: cmp.verdict(),
        });
    }
    emit(
        "electrode",
        a.common.format,
        a.common.out.as_deref(),
        || {
            let mut t = Table::new(vec![
                "n", "eta", "L_tilde_opt_m", "mu", "mu_opt", "C0_F", "Z_closed_Ohm", "Z_derived_Ohm",
                "shunt_to_motional", "verdict",
            ]);
            for r in &rows {
                let d = &r.design;
                let mut cells = vec![d.n.to_string()];
                cells.extend(
                    [r.eta, d.l_tilde, d.mu, d.mu_opt, d.c0, d.z_closed, d.z_derived, r.shunt_to_motional]
                        .map(fmt_num),
                );
                cells.push(r.verdict.to_string());
                t.push(cells);
            }
            t
        },
        &rows,
        stdout,
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_membrane(a: &MembraneArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mat = a.common.material()?;
    let geo = a.common.geometry()?;
    let t = a.common.temperature()?;
    let spec = MembraneSpec::new(a.a, a.b, a.h, a.tau, a.rho.unwrap_or(mat.rho), a.mode_m, a.mode_n)?;
    let options = CharacterizeOptions {
        trapping: trapping_source(a.eta)?,
        ..Default::default()
    };
    let cavity = characterize(&mat, &geo, ModeIndex::new(a.n, 0, 0)?, t, options)?;
    let report = compare(&cavity, &spec, t)?;
    emit(
        "membrane",
        a.common.format,
        a.common.out.as_deref(),
        || {
            let mut tab = Table::new(vec!["quantity", "cavity", "membrane"]);
            let rows = [
                ("f_Hz", report.cavity.f_hz, report.membrane.f_hz),
                ("m_eff_kg", report.cavity.m_eff, report.membrane.m_eff),
                ("x_zpf_m", report.cavity.x_zpf, report.membrane.x_zpf),
                ("n_thermal", report.cavity.n_thermal, report.membrane.n_thermal),
            ];
            for (q, c, m) in rows {
                tab.push(vec![q.to_string(), fmt_num(c), fmt_num(m)]);
            }
            tab.push(vec![
                "x_zpf_canonical_m".into(),
                fmt_num(report.cavity.x_zpf),
                fmt_num(report.membrane_x_zpf_canonical),
            ]);
            tab
        },
        &report,
        stdout,
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_paper_report(a: &ReportArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let defaults = ReproductionInputs::default();
    let inputs = ReproductionInputs {
        material: a.common.material()?,
        piezo_material: match &a.piezo_material {
            Some(p) => load_material(p)?,
            None => defaults.piezo_material,
        },
        geometry: a.common.geometry()?,
        temperature_k: a.common.temperature()?,
        eta: trapping_source(Some(a.eta)).map(|_| a.eta)?,
        suite: SuiteConfig {
            seed: a.seed,
            ..defaults.suite
        },
        ..defaults
    };
    let report = reproduce(&inputs)?;
    let _ = writeln!(stderr, "{report}");
    emit(
        "paper-report",
        a.common.format,
        a.common.out.as_deref(),
        || {
            let mut t = Table::new(vec!["id", "criterion", "check", "measured", "reference", "tolerance", "status"]);
            for c in &report.criteria {
                for k in &c.checks {
                    t.push(vec![
                        c.id.to_string(),
                        c.title.clone(),
                        k.name.clone(),
                        fmt_num(k.measured),
                        fmt_num(k.reference),
                        k.tolerance.clone(),
                        if k.pass { "PASS" } else { "FAIL" }.to_string(),
                    ]);
                }
            }
            t
        },
        &report,
        stdout,
    )?;
    Ok(if report.all_pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

pub fn cmd_oracle(a: &OracleArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let config = SuiteConfig {
        seed: a.seed,
        sets: a.sets,
        ..SuiteConfig::default()
    };
    let report = run_suite(&config)?;
    for e in &report.eigen {
        let _ = writeln!(
            stderr,
            "eigensolver n={}: spacing {:.3e}, curvature {:.3e}, bracket {:.3e}, refinement {:?}",
            e.n,
            (e.spacing_ratio - 1.0).abs(),
            e.curvature_rel_err,
            e.bracket_rel_err,
            e.refinement_ratios
        );
    }
    let failed = report.cases.iter().filter(|c| !c.pass).count();
    let _ = writeln!(
        stderr,
        "{} comparisons, {} failed, {} below the escape floor",
        report.cases.len(),
        failed,
        report.skipped
    );
    emit(
        "oracle",
        a.format,
        a.out.as_deref(),
        || {
            let mut t = Table::new(vec![
                "set", "check", "n", "m", "p", "eta_x", "eta_y", "L", "L_tilde", "closed_form", "oracle", "rel_err",
                "tolerance", "status",
            ]);
            for c in &report.cases {
                t.push(vec![
                    c.set.to_string(),
                    c.check.clone(),
                    c.mode.n().to_string(),
                    c.mode.m().to_string(),
                    c.mode.p().to_string(),
                    fmt_num(c.eta_x),
                    fmt_num(c.eta_y),
                    fmt_num(c.l),
                    c.l_tilde.map(fmt_num).unwrap_or_default(),
                    fmt_num(c.closed_form),
                    fmt_num(c.oracle),
                    fmt_num(c.rel_err),
                    fmt_num(c.tolerance),
                    if c.pass { "PASS" } else { "FAIL" }.to_string(),
                ]);
            }
            t
        },
        &report,
        stdout,
    )?;
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED })
}
