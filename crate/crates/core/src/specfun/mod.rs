//! Special functions and adaptive quadrature.
//!
//! Everything here is a pure function of its arguments. Gamma-function ratios
//! are always formed from [`log_gamma`] differences so that arguments in the
//! millions do not overflow.

mod beta;
mod gamma;
mod normal;
mod quadrature;

pub use beta::{reg_inc_beta, reg_inc_beta_inv};
pub use gamma::{digamma, gamma_ratio, log_gamma};
pub use normal::{std_normal_cdf, std_normal_pdf, std_normal_quantile, std_normal_sf};
pub use quadrature::{integrate, integrate_breakpoints, QuadratureSpec};
