use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("first lattice is not a sublattice of the second")]
    NotSublattice,
    #[error("lattice is not invariant under the matrix")]
    NotInvariant,
    #[error("characteristic polynomial is not integral; no invariant lattice exists")]
    NoInvariantLattice,
    #[error("generators and their iterates do not span the ambient space")]
    RankDeficient,
    #[error("point sets have different sizes ({rows} and {cols}); phase table must be square")]
    NotSquare { rows: usize, cols: usize },
    #[error("classification is only known for orders up to 4 (got {0})")]
    Unclassified(usize),
    #[error("matrix is not generalized Hadamard")]
    NotHadamard,
    #[error("matrix is not expansive")]
    NotExpansive,
    #[error("system has no lattice component")]
    MissingLattice,
    #[error("eigenvalue modulus within {margin:e} of the unit circle; expansivity undecided")]
    Indeterminate { margin: f64 },
    #[error("frequency {0} lies outside the dual lattice; operator undefined there")]
    DomainViolation(String),
    #[error("point budget exceeded: depth {requested} needs {points} points; admissible depth is {admissible}")]
    BudgetExceeded {
        requested: usize,
        points: u128,
        admissible: usize,
    },
    #[error("matrix is not a similarity; dimension formula not applicable")]
    NotSimilarity,
    #[error("empty or inverted viewport")]
    BadViewport,
    #[error("box region is degenerate or has overlapping boxes")]
    BadRegion,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("unknown catalog id {0:?}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
