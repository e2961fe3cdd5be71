use thiserror::Error;

use crate::report::Report;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("base category mismatch: {0}")]
    BaseMismatch(String),
    #[error("domain mismatch: codomain {cod} does not match domain {dom}")]
    DomainMismatch { cod: usize, dom: usize },
    #[error("wrong number of objects for coherence isomorphism: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("morphisms are not parallel")]
    NotParallel,
    #[error("morphism does not equalize the pair")]
    FactorNotEqualizing,
    #[error("morphism does not coequalize the pair")]
    CofactorNotCoequalizing,
    #[error("object too large: {0}")]
    SizeOverflow(String),
    #[error("size bound exceeded: {0}")]
    SizeBoundExceeded(String),
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("morphism is not invertible")]
    NotInvertible,
    #[error("invalid monoid")]
    InvalidMonoid(Report),
    #[error("invalid right module")]
    InvalidModule(Report),
    #[error("invalid left module object")]
    InvalidLeftModule(Report),
    #[error("invalid module morphism")]
    InvalidModuleMorphism(Report),
    #[error("acting monoids differ")]
    ActionMismatch,
    #[error("monoid chain does not match")]
    MonoidMismatch,
    #[error("probe family not closed: {0}")]
    ProbeNotClosed(String),
    #[error("functor data failed validation")]
    ValidationFailed(Report),
    #[error("invalid natural transformation: {0}")]
    InvalidNatTrans(String),
    #[error("object is not a compact generator on the probe family")]
    NotAGenerator(Report),
    #[error("comparison morphism is not a monoid isomorphism")]
    ComparisonNotIso(Report),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// The report carried by validation-style errors, if any.
    pub fn report(&self) -> Option<&Report> {
        match self {
            Error::InvalidMonoid(r)
            | Error::InvalidModule(r)
            | Error::InvalidLeftModule(r)
            | Error::InvalidModuleMorphism(r)
            | Error::ValidationFailed(r)
            | Error::NotAGenerator(r)
            | Error::ComparisonNotIso(r) => Some(r),
            _ => None,
        }
    }
}
