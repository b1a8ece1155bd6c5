use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {dim} outside [0, {bound}]")]
    DimensionOutOfRange { dim: i64, bound: usize },
    #[error("index {index} out of range for {context}")]
    IndexOutOfRange { index: usize, context: String },
    #[error("simplex {0:?} has a face that is not listed")]
    NotClosedUnderFaces(Vec<usize>),
    #[error("simplex {0:?} does not list its vertices in strictly increasing order")]
    UnorderedVertices(Vec<usize>),
    #[error("vertex index {index} exceeds vertex count {count}")]
    UnknownVertex { index: usize, count: usize },
    #[error("unknown generator ({dim}, {index})")]
    UnknownGenerator { dim: usize, index: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("boundary composite is not zero in degree {0}")]
    NotAComplex(usize),
    #[error("simplicial set was not built from a simplicial complex")]
    NotFromComplex,
    #[error("no transition function for generator {0}")]
    MissingEntry(String),
    #[error("unsupported face spec: {0}")]
    UnsupportedFaceSpec(String),
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error("bijection failure: {0}")]
    BijectionFailure(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
