use std::fmt;
use swl_core::Error;

/// Failure categories, one per exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags or parameters, or an unwritable output path (exit 2).
    Usage(String),
    /// A quadrature failed its node-doubling check (exit 3).
    Convergence(String),
    /// A numerical breakdown such as a negative determinant (exit 4).
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Convergence(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    /// Classifies a core error; `context` prefixes the message.
    pub fn from_core(e: Error, context: &str) -> Self {
        let msg = format!("{context}: {e}");
        match e {
            Error::Convergence { .. } => CliError::Convergence(msg),
            Error::NegativeDeterminant { .. }
            | Error::Contour { .. }
            | Error::NotHermitian { .. }
            | Error::PairMismatch { .. } => CliError::Numeric(msg),
            Error::InvalidParams(_)
            | Error::Domain(_)
            | Error::Size(_)
            | Error::DegenerateParam(_)
            | Error::Range(_)
            | Error::Regime(_) => CliError::Usage(msg),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Convergence(m) | CliError::Numeric(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("cannot write output: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_category() {
        let conv = Error::Convergence {
            what: "x".into(),
            m: 16,
            drift: 1e-3,
        };
        assert_eq!(CliError::from_core(conv, "c").exit_code(), 3);
        assert_eq!(
            CliError::from_core(Error::NegativeDeterminant { value: -1e-3 }, "c").exit_code(),
            4
        );
        assert_eq!(
            CliError::from_core(Error::InvalidParams("p".into()), "c").exit_code(),
            2
        );
        let e = CliError::from_core(Error::Size("s".into()), "finite_cdf");
        assert!(e.to_string().starts_with("finite_cdf: "));
    }
}
