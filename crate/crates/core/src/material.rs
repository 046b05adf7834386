//! Material constants, piezoelectric stiffening and overtone dispersion.
//!
//! The material file is plain text, one `key = value` per line, `#` starting
//! a comment. Keys: `rho c_bar_z e_z eps_z M P a_x a_y kappa_x kappa_y`, all
//! strict SI. `e_z`, `a_x`, `a_y` default to 0 and `kappa_x`, `kappa_y` to 1
//! (the weakly anisotropic limit where the dispersion terms vanish).

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Width of the forbidden band around cotangent poles, in units of `kappa * n`.
pub const COT_GUARD_BAND: f64 = 1e-9;

const QUARTZ: &str = include_str!("../data/quartz.mat");
const QUARTZ_PIEZO: &str = include_str!("../data/quartz_piezo.mat");

/// Elastic, piezoelectric and dielectric constants of the plate material.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialParams {
    /// Mass density (kg/m^3).
    pub rho: f64,
    /// Unperturbed effective elastic coefficient (Pa).
    pub c_bar_z: f64,
    /// Effective piezoelectric coefficient (C/m^2).
    pub e_z: f64,
    /// Dielectric constant along z (F/m).
    pub eps_z: f64,
    /// Transverse elastic parameter along x (Pa).
    pub m: f64,
    /// Transverse elastic parameter along y (Pa).
    pub p: f64,
    /// Dispersion amplitudes (Pa).
    pub a_x: f64,
    pub a_y: f64,
    /// Velocity-ratio parameters.
    pub kappa_x: f64,
    pub kappa_y: f64,
}

impl MaterialParams {
    /// Checks every field invariant and returns the value unchanged.
    pub fn validated(self) -> Result<Self> {
        for (field, v) in [
            ("rho", self.rho),
            ("c_bar_z", self.c_bar_z),
            ("eps_z", self.eps_z),
            ("M", self.m),
            ("P", self.p),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(field, format!("must be > 0, got {v}")));
            }
        }
        if !(self.e_z.is_finite() && self.e_z >= 0.0) {
            return Err(Error::invalid("e_z", format!("must be >= 0, got {}", self.e_z)));
        }
        for (field, v) in [("a_x", self.a_x), ("a_y", self.a_y)] {
            if !v.is_finite() {
                return Err(Error::invalid(field, format!("must be finite, got {v}")));
            }
        }
        for (field, v) in [("kappa_x", self.kappa_x), ("kappa_y", self.kappa_y)] {
            if !(v > 0.0 && v < 2.0) {
                return Err(Error::invalid(field, format!("must lie in (0, 2), got {v}")));
            }
        }
        Ok(self)
    }

    /// Quartz cavity example: rho = 2643, c_bar_z = 105 GPa, no piezo correction, M = P = c/0.4.
    pub fn quartz_example() -> Self {
        parse_material(QUARTZ, "<bundled quartz.mat>").expect("bundled quartz file is valid")
    }

    /// Quartz example with e_z = 0.1 C/m^2 for the piezoelectric readout figures.
    pub fn quartz_piezo_example() -> Self {
        parse_material(QUARTZ_PIEZO, "<bundled quartz_piezo.mat>")
            .expect("bundled quartz_piezo file is valid")
    }

    /// Copy with a different unperturbed elastic coefficient.
    pub fn with_c_bar_z(mut self, c_bar_z: f64) -> Self {
        self.c_bar_z = c_bar_z;
        self
    }

    /// Piezoelectrically stiffened constants `(c_z, c_hat_z)` for overtone `n`.
    pub fn stiffened_constants(&self, n: u32) -> Result<(f64, f64)> {
        check_overtone(n)?;
        let coupling = self.e_z * self.e_z / self.eps_z;
        let nf = f64::from(n);
        let c_z = self.c_bar_z - coupling;
        let c_hat_z = self.c_bar_z - 8.0 / (nf * nf * PI * PI) * coupling;
        Ok((c_z, c_hat_z))
    }

    /// `c_hat_z` alone.
    pub fn c_hat_z(&self, n: u32) -> Result<f64> {
        self.stiffened_constants(n).map(|(_, c)| c)
    }

    /// Overtone-dependent transverse parameters `(M_n, P_n)`.
    ///
    /// `P_n` carries the same correction as `M_n` since one set of dispersion
    /// constants is stored. With `kappa = 1` and odd `n` the cotangents vanish
    /// and `(M, P)` is returned exactly.
    pub fn dispersion_parameters(&self, n: u32) -> Result<(f64, f64)> {
        check_overtone(n)?;
        if self.a_x == 0.0 && self.a_y == 0.0 {
            return Ok((self.m, self.p));
        }
        let nf = f64::from(n);
        let correction =
            self.a_x / nf * half_pi_cot(self.kappa_x, n)? + self.a_y / nf * half_pi_cot(self.kappa_y, n)?;
        Ok((self.m + correction, self.p + correction))
    }
}

/// `cot(kappa n pi / 2)`, exactly zero when `kappa n` is an odd integer.
fn half_pi_cot(kappa: f64, n: u32) -> Result<f64> {
    let t = kappa * f64::from(n);
    let nearest_even = 2.0 * (t / 2.0).round();
    if (t - nearest_even).abs() < COT_GUARD_BAND {
        return Err(Error::Singularity { kappa, n });
    }
    let nearest_odd = 2.0 * ((t - 1.0) / 2.0).round() + 1.0;
    if t == nearest_odd {
        return Ok(0.0);
    }
    // Reduce modulo 2 (period of cot(t pi / 2)) before scaling by pi.
    let r = t - nearest_even;
    Ok(1.0 / (r * PI / 2.0).tan())
}

pub(crate) fn check_overtone(n: u32) -> Result<()> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::invalid("n", format!("overtone must be odd, got {n}")));
    }
    Ok(())
}

/// Reads and validates a material file.
pub fn load_material(path: impl AsRef<Path>) -> Result<MaterialParams> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_material(&text, &path.display().to_string())
}

/// Parses material-file text; `origin` names the source in error messages.
pub fn parse_material(text: &str, origin: &str) -> Result<MaterialParams> {
    let mut fields: [Option<f64>; 10] = [None; 10];
    const KEYS: [&str; 10] = [
        "rho", "c_bar_z", "e_z", "eps_z", "M", "P", "a_x", "a_y", "kappa_x", "kappa_y",
    ];
    let parse_err = |line: usize, message: String| Error::Parse {
        path: origin.to_string(),
        line,
        message,
    };
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(lineno, format!("expected key = value, got {content:?}")))?;
        let key = key.trim();
        let value = value.trim();
        let slot = KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| parse_err(lineno, format!("unknown key {key:?}")))?;
        if fields[slot].is_some() {
            return Err(parse_err(lineno, format!("duplicate key {key:?}")));
        }
        let v: f64 = value
            .parse()
            .map_err(|_| parse_err(lineno, format!("cannot parse {value:?} as a number")))?;
        fields[slot] = Some(v);
    }
    let required = |i: usize| {
        fields[i].ok_or_else(|| Error::invalid(KEYS[i], "missing from material file"))
    };
    MaterialParams {
        rho: required(0)?,
        c_bar_z: required(1)?,
        e_z: fields[2].unwrap_or(0.0),
        eps_z: required(3)?,
        m: required(4)?,
        p: required(5)?,
        a_x: fields[6].unwrap_or(0.0),
        a_y: fields[7].unwrap_or(0.0),
        kappa_x: fields[8].unwrap_or(1.0),
        kappa_y: fields[9].unwrap_or(1.0),
    }
    .validated()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> MaterialParams {
        MaterialParams {
            rho: 2643.0,
            c_bar_z: 105e9,
            e_z: 0.0,
            eps_z: 4.06e-11,
            m: 262.5e9,
            p: 262.5e9,
            a_x: 0.0,
            a_y: 0.0,
            kappa_x: 1.0,
            kappa_y: 1.0,
        }
    }

    #[test]
    fn no_piezo_means_no_stiffening() {
        let (c, ch) = base().stiffened_constants(1).unwrap();
        assert_eq!((c, ch), (105e9, 105e9));
    }

    #[test]
    fn piezo_correction_fundamental() {
        let mat = MaterialParams { e_z: 0.1, ..base() };
        let (c, ch) = mat.stiffened_constants(1).unwrap();
        // 40-digit evaluation of c_bar - (8/pi^2) e^2/eps.
        assert!((ch - 104_800_352_347.502_78).abs() < 1e-3);
        assert!((c - 104_753_694_581.280_79).abs() < 1e-3);
    }

    #[test]
    fn piezo_correction_vanishes_at_high_overtone() {
        let mat = MaterialParams { e_z: 0.1, ..base() };
        let (c, ch) = mat.stiffened_constants(227).unwrap();
        assert!((mat.c_bar_z - ch) / mat.c_bar_z < 5e-6);
        assert_eq!(c, mat.stiffened_constants(1).unwrap().0);
    }

    #[test]
    fn even_overtone_rejected() {
        assert!(base().stiffened_constants(2).is_err());
        assert!(base().dispersion_parameters(0).is_err());
    }

    #[test]
    fn unit_kappa_leaves_transverse_constants() {
        let mat = MaterialParams { a_x: 1e9, a_y: 2e9, ..base() };
        for n in [1, 3, 5, 227] {
            assert_eq!(mat.dispersion_parameters(n).unwrap(), (mat.m, mat.p));
        }
    }

    #[test]
    fn dispersion_correction_value() {
        let mat = MaterialParams { a_x: 1e9, kappa_x: 0.99, ..base() };
        let (mn, _) = mat.dispersion_parameters(3).unwrap();
        // M + (1 GPa / 3) cot(1.485 pi), 40-digit reference.
        assert!((mn - 262_515_719_600.959_16).abs() < 1e-2);
    }

    #[test]
    fn cot_pole_is_reported() {
        let mat = MaterialParams { a_x: 1e9, kappa_x: 2.0 / 3.0, ..base() };
        match mat.dispersion_parameters(3) {
            Err(Error::Singularity { n, .. }) => assert_eq!(n, 3),
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn parse_defaults_and_comments() {
        let text = "# quartz\nrho = 2643\nc_bar_z=1.05e11 # Pa\neps_z = 4.06e-11\nM = 2.625e11\nP = 2.625e11\n";
        let m = parse_material(text, "t").unwrap();
        assert_eq!(m.kappa_x, 1.0);
        assert_eq!(m.kappa_y, 1.0);
        assert_eq!(m.a_x, 0.0);
        assert_eq!(m.e_z, 0.0);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "rho = 2643\n\nbogus = 3\n";
        match parse_material(text, "f.mat") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_material("rho = abc", "f.mat") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_material("rho 5", "f"), Err(Error::Parse { .. })));
    }

    #[test]
    fn validation_names_the_field() {
        let text = "rho = -1\nc_bar_z=1.05e11\neps_z = 4.06e-11\nM = 2.625e11\nP = 2.625e11\n";
        match parse_material(text, "t") {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "rho"),
            other => panic!("{other:?}"),
        }
        let missing = "rho = 1\n";
        assert!(matches!(
            parse_material(missing, "t"),
            Err(Error::Validation { field: "c_bar_z", .. })
        ));
    }

    #[test]
    fn bundled_examples() {
        let q = MaterialParams::quartz_example();
        assert_eq!(q.rho, 2643.0);
        assert_eq!(q.c_hat_z(1).unwrap(), 105e9);
        assert!((q.c_hat_z(1).unwrap() / q.m - 0.4).abs() < 1e-15);
        let qp = MaterialParams::quartz_piezo_example();
        assert_eq!(qp.e_z, 0.1);
        assert_eq!(qp.eps_z, 4.06e-11);
    }
}
