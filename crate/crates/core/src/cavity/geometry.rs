use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square curved plate of width `2L`, half-thickness `h0` at the centre and
/// surface radius of curvature `R`, optionally with square electrodes of
/// half-width `L_tilde`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityGeometry {
    l: f64,
    h0: f64,
    r: f64,
    l_tilde: Option<f64>,
}

impl CavityGeometry {
    /// Validates `L, h0, R > 0` and `2 h0 < R / 10`.
    pub fn new(l: f64, h0: f64, r: f64) -> Result<Self> {
        for (field, v) in [("L", l), ("h0", h0), ("R", r)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(field, format!("must be > 0, got {v}")));
            }
        }
        if !(2.0 * h0 < r / 10.0) {
            return Err(Error::invalid(
                "h0",
                format!("thickness 2*h0 = {} must be << R (below R/10 = {})", 2.0 * h0, r / 10.0),
            ));
        }
        Ok(Self {
            l,
            h0,
            r,
            l_tilde: None,
        })
    }

    /// Adds an electrode half-width, which must be positive and below `L`.
    pub fn with_electrode(mut self, l_tilde: f64) -> Result<Self> {
        if !(l_tilde > 0.0 && l_tilde < self.l) {
            return Err(Error::invalid(
                "L_tilde",
                format!("must lie in (0, L = {}), got {l_tilde}", self.l),
            ));
        }
        self.l_tilde = Some(l_tilde);
        Ok(self)
    }

    /// The quartz example: `L = 15 mm`, `h0 = 0.5 mm` (1 mm total), `R = 300 mm`.
    pub fn quartz_example() -> Self {
        Self::new(1.5e-2, 5e-4, 0.3).expect("example geometry is valid")
    }

    /// Plate half-width (m).
    pub fn l(&self) -> f64 {
        self.l
    }

    /// Half-thickness (m).
    pub fn h0(&self) -> f64 {
        self.h0
    }

    /// Radius of curvature (m).
    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn l_tilde(&self) -> Option<f64> {
        self.l_tilde
    }
}
