//! Rank-one quaternionic spiked Wishart ensemble.
#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::needless_range_loop,
    clippy::excessive_precision
)]
pub mod error;
pub mod finite_kernel;
pub mod identities;
pub mod limit_dists;
pub mod linalg;
pub mod mc;
pub mod quaternion;
pub mod special;
pub use error::{Error, Result};
