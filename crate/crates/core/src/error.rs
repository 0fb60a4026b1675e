use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("unknown root system label `{0}`")]
    UnknownType(String),

    #[error("unsupported for type {0}: {1}")]
    UnsupportedType(String, &'static str),

    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("action does not stabilize the lattice: {0}")]
    NotStable(String),

    #[error("sublattice is not contained in the ambient lattice: {0}")]
    NotSubset(String),

    #[error("action is not well defined on the quotient: {0}")]
    IllDefinedAction(String),

    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),

    #[error("group action violates its relations: {0}")]
    BadGroupAction(String),

    #[error("operation requires a cyclic group, got {0}")]
    NonCyclic(String),

    #[error("module mismatch: {0}")]
    ModuleMismatch(String),

    #[error("invalid Brauer character: {0}")]
    InvalidCharacter(String),

    #[error("invalid spherical datum: {0}")]
    InvalidDatum(String),

    #[error("invalid horospherical datum: {0}")]
    InvalidHorospherical(String),

    #[error("too many colors for lift enumeration ({0} > 16)")]
    TooManyColors(usize),

    #[error("cone is not strictly convex")]
    NotStrictlyConvex,

    #[error("dimension {0} exceeds the polyhedral cap of 8")]
    DimensionCap(usize),

    #[error("invalid colored fan: {0}")]
    InvalidFan(String),

    #[error("quasi-affine cover condition ({case}) fails at simple root {root}: {detail}")]
    CoverCondition {
        case: u8,
        root: usize,
        detail: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported base field: {0}")]
    UnsupportedBaseField(String),

    #[error("local site `{0}` does not restrict the global Galois action")]
    SiteNotRestriction(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
