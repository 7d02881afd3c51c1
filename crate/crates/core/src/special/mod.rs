//! Special functions and quadrature.

pub mod airy;
pub mod laguerre;
pub mod logscaled;
pub mod quadrature;

pub use airy::{airy_ai, airy_ai_prime, airy_all, airy_s1, airy_tail};
pub use laguerre::{laguerre, laguerre_deriv, laguerre_deriv_at_zero, laguerre_table};
pub use logscaled::{ln_factorial, LogScaled};
pub use quadrature::{
    composite_grid, gauss_legendre, half_line_grid, interval_grid, GridDomain, QuadratureGrid,
};
