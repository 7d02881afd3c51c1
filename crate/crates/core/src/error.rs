use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("matrix is not quaternionic Hermitian: asymmetry {asymmetry:e} exceeds {tol:e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("Kramers pairing failed at eigenvalue {index}: gap {gap:e} exceeds {tol:e}")]
    PairMismatch { index: usize, gap: f64, tol: f64 },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("size out of range: {0}")]
    Size(String),

    #[error("degenerate parameter: {0}")]
    DegenerateParam(String),

    #[error("contour integral is not real: imaginary/real ratio {ratio:e}")]
    Contour { ratio: f64 },

    #[error("Fredholm determinant is negative ({value:e})")]
    NegativeDeterminant { value: f64 },

    #[error("{what}: value moved by {drift:e} when doubling {m} quadrature nodes")]
    Convergence { what: String, m: usize, drift: f64 },

    #[error("parameter out of the validated range: {0}")]
    Range(String),

    #[error("rescaling not defined for this regime: {0}")]
    Regime(String),
}

pub type Result<T> = std::result::Result<T, Error>;
