use thiserror::Error;



/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("line {line}: tetrahedron {tet} is out of range (triangulation has {size})")]
    TetOutOfRange { line: usize, tet: usize, size: usize },

    #[error("line {line}: face {face} is out of range")]
    FaceOutOfRange { line: usize, face: usize },

    #[error("line {line}: gluing of tetrahedron {tet} face {face} breaks the involution: {reason}")]
    Involution { line: usize, tet: usize, face: usize, reason: String },

    #[error("line {line}: tetrahedron {tet} face {face} is glued twice")]
    FaceGluedTwice { line: usize, tet: usize, face: usize },

    #[error("line {line}: permutation does not map face {face} to face {target}")]
    PermutationMismatch { line: usize, face: usize, target: usize },

    #[error("edge {edge} of tetrahedron {tet} is identified with itself in reverse")]
    InvalidEdge { tet: usize, edge: usize },

    #[error("vertex class {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("truncation index {0} is out of range")]
    TruncationOutOfRange(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not admissible: {0}")]
    NotAdmissible(String),

    #[error("brute-force dimension {0} exceeds the supported limit of {1}")]
    OracleTooLarge(usize, usize),

    #[error("invalid processing order: {0}")]
    InvalidOrder(String),

    #[error("loop invariant violated: {0}")]
    InvariantViolated(String),

    #[error("enumeration exceeded its time budget")]
    Timeout,
}

pub type Result<T> = std::result::Result<T, Error>;
