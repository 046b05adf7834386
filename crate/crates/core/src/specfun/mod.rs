//! Special functions and quadrature primitives used by the physics modules.

mod erf;
mod hermite;
mod quadrature;

pub use erf::{erf, erf_inv, erfc, ln_erfc};
pub(crate) use erf::{erf_finite, erfcx_nonneg, exp_neg_sq};
pub use hermite::hermite;
pub(crate) use hermite::hermite_unchecked;
pub use quadrature::{
    integrate_1d, integrate_1d_estimate, integrate_2d, integrate_2d_estimate, Estimate,
    QuadratureSpec, Rect,
};
