use thiserror::Error;

/// Coarse classification of an [`Error`], used for CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input (exit code 2).
    Parse,
    /// A mathematical precondition failed (exit code 3).
    Domain,
    /// A hypothesis could not be certified from the available data (exit code 4).
    Hypothesis,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("empty polynomial")]
    EmptyPolynomial,
    #[error("threshold coincides with a root valuation")]
    ThresholdHitsRoot,
    #[error("operands live in different gauges")]
    GaugeMismatch,
    #[error("stirling index out of range: ({0}, {1})")]
    IndexOutOfRange(usize, usize),
    #[error("operator is not monic: {0}")]
    NotMonic(String),
    #[error("operator has a root on the factorization threshold")]
    PolygonBoundaryRoot,
    #[error("derivation norm is not below the factorization threshold")]
    DerivationNotBelowThreshold,
    #[error("coefficient has no dominant monomial at this radius, so no Laurent inverse exists")]
    NoDominantMonomial,
    #[error("factorization did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("radii are not pure or lie outside the required bracket: {0}")]
    PurityViolated(String),
    #[error("{0} is not coprime to p")]
    NotCoprime(u64),
    #[error("relative radius exponent must be positive")]
    NonPositiveRelativeRadius,
    #[error("unsupported point: {0}")]
    UnsupportedPoint(String),
    #[error("probe set cannot separate the roots: {0}")]
    InsufficientProbes(String),
    #[error("hypothesis not certified: {0}")]
    HypothesisNotCertified(String),
    #[error("radii cross-check failed: {0}")]
    RadiiMismatch(String),
    #[error("operator mixes solvable and non-solvable parts and needs to be split first")]
    SolvableMixedWithNonSolvable,
    #[error("reports live at different working points")]
    PointMismatch,
    #[error("radii report is in the wrong scale for this operation")]
    ScaleMismatch,
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::NotPrime(_) => "NotPrime",
            Error::InversionOfZero => "InversionOfZero",
            Error::EmptyPolynomial => "EmptyPolynomial",
            Error::ThresholdHitsRoot => "ThresholdHitsRoot",
            Error::GaugeMismatch => "GaugeMismatch",
            Error::IndexOutOfRange(..) => "IndexOutOfRange",
            Error::NotMonic(_) => "NotMonic",
            Error::PolygonBoundaryRoot => "PolygonBoundaryRoot",
            Error::DerivationNotBelowThreshold => "DerivationNotBelowThreshold",
            Error::NoDominantMonomial => "NoDominantMonomial",
            Error::NoConvergence(_) => "NoConvergence",
            Error::PurityViolated(_) => "PurityViolated",
            Error::NotCoprime(_) => "NotCoprime",
            Error::NonPositiveRelativeRadius => "NonPositiveRelativeRadius",
            Error::UnsupportedPoint(_) => "UnsupportedPoint",
            Error::InsufficientProbes(_) => "InsufficientProbes",
            Error::HypothesisNotCertified(_) => "HypothesisNotCertified",
            Error::RadiiMismatch(_) => "RadiiMismatch",
            Error::SolvableMixedWithNonSolvable => "SolvableMixedWithNonSolvable",
            Error::PointMismatch => "PointMismatch",
            Error::ScaleMismatch => "ScaleMismatch",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) => ErrorClass::Parse,
            Error::HypothesisNotCertified(_) => ErrorClass::Hypothesis,
            _ => ErrorClass::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
