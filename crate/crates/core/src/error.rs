use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("Groebner bases over characteristic zero are not supported")]
    CharZeroUnsupported,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("basis is incomplete (budget-truncated)")]
    IncompleteBasis,
    #[error("projective dimension {0} too low")]
    DimensionTooLow(i64),
    #[error("all forms vanish at the point (base point)")]
    BasePoint,
    #[error("bilinear identity failed: {0}")]
    IdentityFailure(String),
    #[error("insufficient points: {0}")]
    InsufficientPoints(String),
    #[error("primes disagree: {0}")]
    BadPrime(String),
    #[error("malformed resolution spec: {0}")]
    MalformedSpec(String),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("unknown example id `{0}`")]
    UnknownId(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("invalid field configuration: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Budget exhaustion is reported as an Unknown outcome, never as a failure.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::IncompleteBasis)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
