use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input fell outside the domain of the named operation.
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// The BER target cannot be met even at the reference distance.
    #[error("coverage_radius: target BER {target_ber:e} is unreachable at the {reference_m} m reference")]
    NoCoverage { target_ber: f64, reference_m: f64 },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    /// Name of the operation that rejected its input.
    pub fn operation(&self) -> &'static str {
        match self {
            Error::Domain { op, .. } => op,
            Error::NoCoverage { .. } => "coverage_radius",
        }
    }
}
