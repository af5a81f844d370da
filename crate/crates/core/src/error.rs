use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed graph file: {0}")]
    Parse(String),
    #[error("graph has an empty vertex list")]
    EmptyVertexList,
    #[error("vertex name must be a nonempty string")]
    EmptyVertexName,
    #[error("vertex `{0}` is listed more than once")]
    DuplicateVertex(String),
    #[error("edge references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge {src} -> {dst} has non-positive multiplicity {multiplicity}")]
    BadMultiplicity {
        src: String,
        dst: String,
        multiplicity: String,
    },
    #[error("matrix must be nonempty")]
    EmptyMatrix,
    #[error("matrix rows have unequal lengths")]
    RaggedMatrix,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid invariant factors: {0}")]
    InvalidFactors(String),
    #[error("element has {got_torsion}+{got_free} coordinates, group expects {want_torsion}+{want_free}")]
    CoordinateMismatch {
        want_torsion: usize,
        want_free: usize,
        got_torsion: usize,
        got_free: usize,
    },
    #[error("scalar must be a positive integer, got {0}")]
    NonPositiveScalar(String),
    #[error("operation requires a finite group, but the free rank is {0}")]
    InfiniteGroup(usize),
    #[error("group of order {order} exceeds the oracle bound {bound}")]
    BoundExceeded { order: String, bound: u64 },
    #[error("L(E) is not purely infinite simple; the matrix-type theorems do not apply")]
    NotPurelyInfiniteSimple,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
