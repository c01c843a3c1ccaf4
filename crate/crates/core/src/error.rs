use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degree {0} is out of range")]
    DegreeOutOfRange(usize),

    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),

    #[error("simplex {0:?} is not in the carrier complex")]
    UnknownSimplex(Vec<u32>),

    #[error("chain is not a cycle (boundary has {0} nonzero terms)")]
    NotACycle(usize),

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("model is not orientable; obstructing face cycle: {faces:?}")]
    NonOrientable { faces: Vec<Vec<u32>> },

    #[error("invalid knot: {0}")]
    InvalidKnot(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "neighborhood of the knot is not a solid torus after {subdivisions} subdivisions: {reason}"
    )]
    NeighborhoodNotSolidTorus { subdivisions: usize, reason: String },

    #[error("internal inconsistency ({check}): {detail}")]
    Inconsistency { check: &'static str, detail: String },

    #[error("invalid catalog parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
