use thiserror::Error;

/// Domain errors, named after the condition they reject.
///
/// The CLI surfaces the short name (e.g. `InvalidQ`) followed by the detail
/// message, and exits with status 1 on any of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("InvalidQ: {q} is not a prime power >= 2")]
    InvalidQ { q: u64 },

    #[error("InvalidDegP: deg p must be >= 1, got {deg_p}")]
    InvalidDegP { deg_p: u64 },

    #[error("InvalidR: {detail}")]
    InvalidR { detail: String },

    #[error("IndexOutOfRange: height index {index} not in 0..={max}")]
    IndexOutOfRange { index: u64, max: u64 },

    #[error("UnsupportedLevel: {detail}")]
    UnsupportedLevel { detail: String },

    #[error("NonZeroDegree: divisor has degree {degree}, expected 0")]
    NonZeroDegree { degree: String },

    #[error("SingularMatrix: {detail}")]
    SingularMatrix { detail: String },

    #[error("UnsupportedEdge: {detail}")]
    UnsupportedEdge { detail: String },

    #[error("InconsistentBounds: lower bound {lower} does not divide upper bound {upper}")]
    InconsistentBounds { lower: String, upper: String },

    #[error("CertificationFailure: {detail}")]
    CertificationFailure { detail: String },
}

impl Error {
    /// The bare error name, without the detail message.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidQ { .. } => "InvalidQ",
            Error::InvalidDegP { .. } => "InvalidDegP",
            Error::InvalidR { .. } => "InvalidR",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::UnsupportedLevel { .. } => "UnsupportedLevel",
            Error::NonZeroDegree { .. } => "NonZeroDegree",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::UnsupportedEdge { .. } => "UnsupportedEdge",
            Error::InconsistentBounds { .. } => "InconsistentBounds",
            Error::CertificationFailure { .. } => "CertificationFailure",
        }
    }
}
