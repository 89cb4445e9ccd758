use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring presentation: {0}")]
    InvalidPresentation(String),

    #[error("ring elements belong to different presentations")]
    PresentationMismatch,

    #[error("degree {degree} is odd or exceeds the top degree {max}")]
    InvalidDegree { degree: u32, max: u32 },

    #[error("class {class} is not homogeneous of degree {expected}")]
    NotHomogeneous { class: String, expected: u32 },

    #[error("class {class} has a top-degree monomial other than the fundamental one")]
    AmbiguousTopDegree { class: String },

    #[error("manifold {0} carries no cohomology or Pontrjagin classes")]
    MissingCohomology(String),

    #[error("invalid manifold descriptor {label}: {reason}")]
    InvalidDescriptor { label: String, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: u32, found: u32 },

    #[error("connected sum of an empty list")]
    EmptySum,

    #[error("invalid line bundle aggregate {label}: {reason}")]
    InvalidBundle { label: String, reason: String },

    #[error("an honest almost complex structure has no stable Chern data to evaluate")]
    HonestStructure,

    #[error(
        "parity violation on {label}: chi = {chi} and top Chern number {chern} differ in parity"
    )]
    ParityViolation {
        label: String,
        chi: i64,
        chern: BigInt,
    },

    #[error("obstruction coefficients carry different moduli")]
    ModulusMismatch,

    #[error("search space has {found} candidate lists for {expected} summands")]
    ArityMismatch { expected: usize, found: usize },

    #[error("search bound must be at least 1")]
    InvalidBound,

    #[error("unknown manifold {0}")]
    UnknownManifold(String),

    #[error("invalid parameters for {name}: {reason}")]
    InvalidParameters { name: String, reason: String },
}
