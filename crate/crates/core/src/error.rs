use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the constraints define an empty set")]
    EmptyCell,
    #[error("the constraints define an unbounded set")]
    Unbounded,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("a point cell has no facets")]
    ZeroDimensional,
    #[error("{dim}-volume is irrational (squared volume {squared})")]
    IrrationalVolume { dim: usize, squared: String },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("not a cube: {0}")]
    NotACube(String),
    #[error("not an orthotope: {0}")]
    NotAnOrthotope(String),
    #[error("not a standard (origin-centred) orthotope: {0}")]
    NotStandard(String),
    #[error("{0} is not a union of cells of the complex")]
    NotAUnionOfCells(String),
    #[error("no cell of the complex contains {0}")]
    NoContainingCell(String),
    #[error("refinements disagree on shared face {face} of {cell}")]
    IncompatibleOnSharedFace { cell: String, face: String },
    #[error("affine map is not invertible")]
    NonInvertible,
    #[error("the isometry does not preserve the underlying space: {0}")]
    SpaceNotPreserved(String),
    #[error("generator {index} is incompatible with the lattice: {reason}")]
    IncompatibleGenerator { index: usize, reason: String },
    #[error("{0} is not a facet of the fundamental domain")]
    NotAFacet(String),
    #[error("no group element found: {0}")]
    NotFound(String),
    #[error("group element is not unique: {0}")]
    NotUnique(String),
    #[error("scale factor must be a positive integer, got {0}")]
    NonIntegerScale(String),
    #[error("no lattice witness for cell {0}")]
    WitnessNotFound(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("dimension {dim} is outside the supported range 0..={max}")]
    DimensionOutOfRange { dim: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
