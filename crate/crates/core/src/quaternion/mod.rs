//! Quaternions, quaternionic Hermitian matrices through their complex
//! embedding, and samplers for spiked Wishart data.

mod algebra;
mod eigen;
mod params;
mod sampling;
mod tridiagonal;

pub use algebra::{quat_mul, Quaternion, QuaternionMatrix};
pub use eigen::{default_tol, hermitian_eigenvalues};
pub use params::SpikedParams;
pub use sampling::{
    sample_complex_data_matrix, sample_complex_matrix, sample_data_matrix, sample_matrix,
    TrialStream,
};
pub use tridiagonal::{
    largest_tridiagonal_eigenvalue, tridiagonal_max_eigenvalue, tridiagonal_sample, Beta,
};
