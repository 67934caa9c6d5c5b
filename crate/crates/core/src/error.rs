use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {p} divides cyclotomic order {order}; ramified primes are not supported")]
    Ramified { order: u64, p: u64 },
    #[error("degree must be at least {min}, got {got}")]
    InvalidDegree { min: usize, got: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(u64, u64),
    #[error("index denominator mismatch: {0} vs {1}")]
    DenominatorMismatch(u64, u64),
    #[error("scalar ring mismatch: {0} vs {1}")]
    ScalarRingMismatch(String, String),
    #[error("operation requires rational coefficients and index denominator 1")]
    RequiresHalfIntegralRational,
    #[error("expansion is not marked complete")]
    IncompleteData,
    #[error("coefficient at {index} is not {p}-integral")]
    NotPIntegral { p: u64, index: String },
    #[error("coefficient at {index} is not an integer")]
    NonIntegralCoefficient { index: String },
    #[error("truncation {have} is below the required cutoff {needed}")]
    TruncationInsufficient { needed: u64, have: u64 },
    #[error("stored data contradicts bounded denominators: coefficient at {witness} has denominator divisible by {q}")]
    InputInconsistent { q: u64, witness: String },
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("index {0} is not positive semi-definite")]
    NotPsd(String),
    #[error("index {0} lies outside the truncation")]
    OutOfTruncation(String),
    #[error("index {index} out of range for truncation {truncation}")]
    IndexOutOfRange { index: u64, truncation: u64 },
    #[error("restriction exhausts the truncation (D - m/4 < 0)")]
    TruncationExhausted,
    #[error("index m = 0 admits no reduction of R = {0}")]
    NoReduction(String),
    #[error("invalid index matrix: {0}")]
    InvalidIndex(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid torsion point: {0}")]
    InvalidTorsionPoint(String),
    #[error("argument out of range: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used in the CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::Ramified { .. } => "Ramified",
            Error::InvalidDegree { .. } => "InvalidDegree",
            Error::DegreeMismatch(..) => "DegreeMismatch",
            Error::WeightMismatch(..) => "WeightMismatch",
            Error::DenominatorMismatch(..) => "DenominatorMismatch",
            Error::ScalarRingMismatch(..) => "ScalarRingMismatch",
            Error::RequiresHalfIntegralRational => "RequiresHalfIntegralRational",
            Error::IncompleteData => "IncompleteData",
            Error::NotPIntegral { .. } => "NotPIntegral",
            Error::NonIntegralCoefficient { .. } => "NonIntegralCoefficient",
            Error::TruncationInsufficient { .. } => "TruncationInsufficient",
            Error::InputInconsistent { .. } => "InputInconsistent",
            Error::NotUnimodular => "NotUnimodular",
            Error::NotPsd(_) => "NotPsd",
            Error::OutOfTruncation(_) => "OutOfTruncation",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::TruncationExhausted => "TruncationExhausted",
            Error::NoReduction(_) => "NoReduction",
            Error::InvalidIndex(_) => "InvalidIndex",
            Error::InvalidLattice(_) => "InvalidLattice",
            Error::InvalidTorsionPoint(_) => "InvalidTorsionPoint",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
        }
    }
}
