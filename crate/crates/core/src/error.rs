use thiserror::Error;

/// Every failure the library reports. Law violations are *not* errors: the
/// checking functions return `false` or a counterexample instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotaError {
    #[error("unknown basis key `{0}`")]
    UnknownBasisKey(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: String, right: String },
    #[error("weight must be {expected}, got {found}")]
    WrongWeight { expected: String, found: String },
    #[error("weight must be nonzero")]
    ZeroWeight,
    #[error("operator is not quasi-idempotent: {0}")]
    NotQuasiIdempotent(String),
    #[error("operator is not idempotent: {0}")]
    NotIdempotent(String),
    #[error("`{0}` has no finite basis")]
    NotFiniteBased(String),
    #[error("element does not belong to this structure: {0}")]
    KindMismatch(String),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("coalgebra is not connected graded: {0}")]
    NotConnectedGraded(String),
    #[error("degree {requested} exceeds the supported maximum {max}")]
    DegreeTooLarge { requested: usize, max: usize },
    #[error("map is not phi-linear: {0}")]
    NotPhiLinear(String),
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("axiom violated: {0}")]
    AxiomViolation(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, RotaError>;
