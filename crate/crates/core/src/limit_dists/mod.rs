//! Limiting laws of the rescaled largest eigenvalue.

mod airy_kernel;
mod families;
mod fredholm;
mod painleve;
mod rescale;

pub use airy_kernel::{airy_kernel, airy_kernel_deta, airy_kernel_tail};
pub use families::{limit_cdf, limit_det, Family, LimitFamily};
pub use fredholm::{
    fredholm_det_block, fredholm_det_scalar, nystrom_block, nystrom_scalar, DEFAULT_CUTOFF,
    DEFAULT_LIMIT_NODES, LIMIT_DOUBLING_TOL, MIN_LIMIT_NODES,
};
pub use painleve::{
    painleve_q, painleve_solve, tw_identity_check, tw_identity_check_with, IdentityResiduals,
    PainleveState, PAINLEVE_LOWER, PAINLEVE_START,
};
pub use rescale::{rescale_map, rescale_map_in, Ensemble, Regime, RescaleMap, CRITICAL_TOL};
