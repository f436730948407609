use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("ground set has {count} points, at most 64 are supported")]
    TooManyPoints { count: usize },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("family is not a connectivity structure: {missing} is a union of intersecting connected sets but is not connected")]
    NotClosed { missing: String },

    #[error("{0} is not connected")]
    NotConnected(String),

    #[error("{sub} is not included in {target}")]
    NotIncluded { sub: String, target: String },

    #[error("not a sieve on {target}: {detail}")]
    NotASieve { target: String, detail: String },

    #[error("relation is not antisymmetric: {a} and {b} are distinct but each below the other")]
    NotAntisymmetric { a: String, b: String },

    #[error("not a lattice: {detail}")]
    NotALattice { detail: String },

    #[error("lattice is not distributive at ({a}, {b}, {c})")]
    NotDistributive { a: String, b: String, c: String },

    #[error("map is not monotone: {x} <= {y} but images are not ordered")]
    NotMonotone { x: String, y: String },

    #[error("not a topology: {0}")]
    NotATopology(String),

    #[error("map is not continuous: preimage of open {0} is not open")]
    NotContinuous(String),

    #[error("map is not total: {0}")]
    NotTotal(String),

    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),

    #[error("presheaf is not a sheaf: {0}")]
    NotASheaf(String),

    #[error("{what} is too large: {size} exceeds the limit of {limit}")]
    TooLarge {
        what: String,
        size: usize,
        limit: usize,
    },

    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },
}

impl Error {
    pub(crate) fn too_large(what: impl Into<String>, size: usize, limit: usize) -> Self {
        Error::TooLarge {
            what: what.into(),
            size,
            limit,
        }
    }
}
