use thiserror::Error;

/// Errors raised by the mathematical layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ReduciblePolynomial: {0}")]
    ReduciblePolynomial(String),
    #[error("UncertifiableIrreducibility: degree {0} exceeds the factorization limit")]
    UncertifiableIrreducibility(usize),
    #[error("EmptyRootBox: the root box contains no root of the minimal polynomial")]
    EmptyRootBox,
    #[error("AmbiguousRootBox: the root box contains {0} roots of the minimal polynomial")]
    AmbiguousRootBox(usize),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("PrecisionExhausted: {0}")]
    PrecisionExhausted(String),
    #[error("InconsistentSystem")]
    InconsistentSystem,
    #[error("SingularGram: carrier directions are dependent under the form")]
    SingularGram,
    #[error("PoleAtBase: the point coincides with the base point")]
    PoleAtBase,
    #[error("DegenerateSphere: the center equals the base point")]
    DegenerateSphere,
    #[error("DimensionZero: the closure is finite")]
    DimensionZero,
    #[error("InvalidForm: {0}")]
    InvalidForm(String),
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
