use crate::scalar::{Scalar, XScalar};
use crate::scalar::fmt_rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires finite strand targets")]
    UnsupportedInfiniteTarget,

    /// No sequence in the domain (avoiding the point) q-converges to it.
    #[error("no admissible sequence: no domain point x != a with |x - a| <= q")]
    NoAdmissibleSequence,

    #[error("no sample points fall inside the model's domain")]
    EmptySample,

    #[error("point {} is not in the function's domain", fmt_rational(.0))]
    PointNotInDomain(Scalar),

    #[error("point {} is not strictly inside the map's range", fmt_rational(.0))]
    PointNotInRange(Scalar),

    #[error("claim refuted: computed defect {defect} exceeds r")]
    ClaimRefuted { defect: XScalar },

    #[error("invalid widening: {0}")]
    InvalidWidening(String),

    #[error("incompatible certificates: {0}")]
    IncompatibleCertificates(String),

    #[error("domination fails at x = {}", fmt_rational(.0))]
    DominationFailure(Scalar),

    #[error("lower bound not implied: need b > d + r")]
    BoundNotImplied,

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    /// A derived certificate failed its own re-check; never expected on exact paths.
    #[error("derived certificate failed verification (defect {defect})")]
    DerivationRejected { defect: XScalar },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("oracle scale exceeded: {0}")]
    OracleScaleExceeded(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse { line, reason: reason.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
