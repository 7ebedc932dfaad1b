//! Error taxonomy shared by every module in the crate.
//!
//! The split mirrors how callers need to react: input problems
//! ([`Error::InvalidMeasure`], [`Error::InvalidExponents`],
//! [`Error::EvenIntegerQ`], [`Error::Unsupported`]) are usage errors the
//! caller can fix, while [`Error::NonConvergence`] and
//! [`Error::CapExceeded`] report that a computation hit its resource or
//! accuracy budget and the partial result cannot be trusted.

/// Everything that can go wrong in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A measure failed validation (empty, non-finite data, nonpositive
    /// weight, dimension mismatch, duplicate support point, ...).
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    /// An exponent pair (p, q) is outside the admissible region
    /// 1 <= p <= 2, 2 <= q <= p'.
    #[error("invalid exponents: {0}")]
    InvalidExponents(String),

    /// The sign certificate was requested for an even integer q, where the
    /// first Fourier coefficient is provably nonnegative and no negativity
    /// certificate can exist.
    #[error("q = {q} is an even integer: c_1 + c_-1 >= 0 always holds, so no negativity certificate exists")]
    EvenIntegerQ { q: f64 },

    /// The operation is well defined mathematically but outside what this
    /// crate implements (e.g. numeric quadrature in dimension >= 2).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An iterative quadrature or summation exhausted its refinement budget
    /// before reaching the requested tolerance.
    #[error("{what} did not converge: {detail}")]
    NonConvergence {
        what: &'static str,
        detail: String,
    },

    /// A lattice enumeration would exceed the configured size cap.
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    /// Measure JSON could not be parsed.
    #[error("malformed measure JSON: {0}")]
    MeasureJson(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI for diagnostics and
    /// exit-code mapping.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidMeasure(_) => "invalid-measure",
            Error::InvalidExponents(_) => "invalid-exponents",
            Error::EvenIntegerQ { .. } => "even-integer-q",
            Error::Unsupported(_) => "unsupported",
            Error::NonConvergence { .. } => "non-convergence",
            Error::CapExceeded(_) => "cap-exceeded",
            Error::MeasureJson(_) => "malformed-json",
        }
    }

    /// True for errors the caller caused (bad input) as opposed to errors
    /// the computation ran into (budget exhaustion).
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidMeasure(_)
                | Error::InvalidExponents(_)
                | Error::EvenIntegerQ { .. }
                | Error::Unsupported(_)
                | Error::MeasureJson(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_are_distinct() {
        let errors = [
            Error::InvalidMeasure(String::new()),
            Error::InvalidExponents(String::new()),
            Error::EvenIntegerQ { q: 4.0 },
            Error::Unsupported(String::new()),
            Error::NonConvergence {
                what: "x",
                detail: String::new(),
            },
            Error::CapExceeded(String::new()),
        ];
        let mut kinds: Vec<_> = errors.iter().map(|e| e.kind()).collect();
        kinds.sort_unstable();
        kinds.dedup();
        assert_eq!(kinds.len(), errors.len());
    }

    #[test]
    fn usage_split() {
        assert!(Error::EvenIntegerQ { q: 2.0 }.is_usage());
        assert!(!Error::NonConvergence {
            what: "quadrature",
            detail: "budget".into()
        }
        .is_usage());
        assert!(!Error::CapExceeded("cap".into()).is_usage());
    }
}
