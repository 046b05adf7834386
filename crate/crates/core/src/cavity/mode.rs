use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Overtone number `n` (half-waves across the thickness) and in-plane
/// numbers `m`, `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    n: u32,
    m: u32,
    p: u32,
}

impl ModeIndex {
    /// A piezoelectrically excitable mode: odd `n`, even `m` and `p`.
    pub fn new(n: u32, m: u32, p: u32) -> Result<Self> {
        if n == 0 || n.is_multiple_of(2) {
            return Err(Error::invalid("n", format!("overtone must be odd, got {n}")));
        }
        if !m.is_multiple_of(2) {
            return Err(Error::invalid("m", format!("in-plane number must be even, got {m}")));
        }
        if !p.is_multiple_of(2) {
            return Err(Error::invalid("p", format!("in-plane number must be even, got {p}")));
        }
        Ok(Self { n, m, p })
    }

    /// The `(n, 0, 0)` family.
    pub fn fundamental_family(n: u32) -> Result<Self> {
        Self::new(n, 0, 0)
    }

    /// Accepts hidden modes too (any `n >= 1`, any `m`, `p`).
    ///
    /// For oracle checks only; the physics operations assume excitable modes.
    pub fn relaxed(n: u32, m: u32, p: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "overtone must be >= 1"));
        }
        Ok(Self { n, m, p })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.m, self.p)
    }
}
