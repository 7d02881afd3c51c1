//! Finite-(M, N) largest-eigenvalue distribution through the skew-orthogonal
//! basis and the 2×2 block kernel.

mod basis;
mod cdf;
mod contour;
mod debruijn;
mod kernel;

pub use basis::{
    build_skew_basis, build_white_basis, psi_last, psi_last_deriv, psi_penult, skew_gram,
    skew_gram_defect, BasisPoint, SkewBasis,
};
pub use cdf::{
    finite_cdf, finite_cdf_with_basis, nystrom_det, upper_cutoff, DetMethod, DEFAULT_CDF_NODES,
    DOUBLING_TOL, MIN_CDF_NODES, NEGATIVE_FLOOR,
};
pub use contour::{phi_last, phi_last_series, ContourRule, ContourValue, IMAG_TOL};
pub use debruijn::debruijn_cdf_oracle;
pub use kernel::{kernel_eval, s_psi_sum, BlockKernel, KernelEntries};

/// Largest `M` the double-precision pipeline is validated for.
pub const MAX_M: usize = 40;
/// `|a|` below this uses the unspiked basis.
pub const WHITE_THRESHOLD: f64 = 1e-8;
