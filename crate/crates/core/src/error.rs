use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library. Every fallible operation returns one of these.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid entry {value} at position {index}: entries must be finite and nonnegative")]
    InvalidEntry { index: usize, value: f64 },

    #[error("Kleene plus diverges: maximum cycle geometric mean {mcgm} exceeds 1")]
    Divergent { mcgm: f64 },

    #[error("scaling vector must be strictly positive")]
    NonPositiveScaling,

    #[error("digraph is not strongly connected")]
    NotStronglyConnected,

    #[error("node {0} is not in the digraph")]
    NotASubset(usize),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("{0} is not an eigenvalue of the matrix")]
    NotAnEigenvalue(f64),

    #[error("vector is not an eigenvector for eigenvalue {0}")]
    NotAnEigenvector(f64),

    #[error("no positive subeigenvector: the matrix has no cycles")]
    NoPositiveSubeigenvector,

    #[error("strict visualization check failed at entry ({0}, {1})")]
    StrictnessFailed(usize, usize),

    #[error("system A x = b has no solution")]
    Unsolvable,

    #[error("minimal covering enumeration exceeded the limit of {0}")]
    CoveringLimitExceeded(usize),

    #[error("alternating projections did not converge within {0} cycles")]
    IterationLimit(usize),

    #[error("box has an open finite upper endpoint; use the limit or sampling route")]
    UpperOpenUnsupported,

    #[error("system has no solution in the box")]
    NotSolvableInBox,

    #[error("vector is not an eigenvector lying in the box")]
    NotAnEigenvectorInBox,

    #[error("eigencone does not meet the box")]
    EmptyEigenconeInBox,

    #[error("box is not lower-open in every coordinate")]
    NotLowerOpen,

    #[error("invalid box: {0}")]
    InvalidBox(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("instance of size {size} exceeds the oracle cutoff {cutoff}")]
    SizeCutoff { size: usize, cutoff: usize },
}
