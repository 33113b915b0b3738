use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("duplicate arrow id {0}")]
    DuplicateArrow(String),
    #[error("arrow {arrow} references unknown vertex {vertex}")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("relation ({0},{1}) is not a composable path")]
    NotComposable(String, String),
    #[error("presentation is not gentle")]
    NotGentle,
    #[error("presentation has relations, so it is not hereditary")]
    NotHereditary,
    #[error("underlying graph is not connected")]
    NotConnected,
    #[error("underlying graph is neither a path nor a cycle")]
    NotHereditaryGentleType,
    #[error("oriented cycle without relations: algebra is infinite dimensional")]
    NotFiniteDimensional,
    #[error("internal consistency error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("surface invariant violated: {0}")]
    Invariant(String),
    #[error("arcs {0} and {1} cross in the interior")]
    Crossing(String, String),
    #[error("surface of genus/boundary type not supported for curve geometry: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("unknown arc {0}")]
    UnknownArc(String),
    #[error("unknown marked point {0}")]
    UnknownPoint(String),
    #[error("curve is not permissible: {0}")]
    NotPermissible(String),
    #[error("curve crosses no arc: zero module")]
    ZeroModule,
    #[error("not a string: {0}")]
    NotAString(String),
    #[error("band eigenvalue must be nonzero")]
    ZeroEigenvalue,
    #[error("inconsistent grading: {0}")]
    InconsistentGrading(String),
    #[error("curve encoding is ambiguous: {0}")]
    Ambiguous(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("representations live over different presentations")]
    MismatchedPresentations,
    #[error("representation is invalid: {0}")]
    InvalidRepresentation(String),
    #[error("complex is invalid: {0}")]
    InvalidComplex(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SiltingError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("exhaustive enumeration requested for an infinite (type Ã) set")]
    InfiniteEnumeration,
    #[error("pair is not support τ-tilting: {0}")]
    InvalidPair(String),
    #[error("no completion found within string bound {0}")]
    BoundExceeded(usize),
    #[error("classification violation: {0}")]
    ClassificationViolation(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}
