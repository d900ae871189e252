use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {index} out of range for size {size}")]
    OutOfRange { index: usize, size: usize },

    #[error("size {0} exceeds the supported maximum of {max}", max = crate::bits::MAX_SIZE)]
    TooLarge(usize),

    #[error("empty carrier: a lattice needs at least one element")]
    Empty,

    #[error("not a partial order: {a} and {b} lie on a cycle")]
    NotAPartialOrder { a: usize, b: usize },

    #[error("not a lattice: elements {a} and {b} have no {missing}")]
    NotALattice { a: usize, b: usize, missing: Bound },

    #[error("element {0} is the bottom and has no lower covers")]
    NoLowerCovers(usize),

    #[error("empty interval: {a} is not below {b}")]
    EmptyInterval { a: usize, b: usize },

    #[error("digraph is not reflexive: vertex {0} has no loop")]
    NotReflexive(usize),

    #[error("pair ({a}, {b}) is not disjoint: {a} <= {b}")]
    NotDisjoint { a: usize, b: usize },

    #[error("bound {bound} exceeds the supported maximum {max}")]
    BoundTooLarge { bound: usize, max: usize },

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("lattice is not meet-distributive (interval [mu({0}), {0}] is not distributive)")]
    NotMeetDistributive(usize),

    #[error("invalid closure system: {0}")]
    InvalidClosureSystem(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

/// Which bound a pair of elements is missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::Meet => f.write_str("meet"),
            Bound::Join => f.write_str("join"),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
