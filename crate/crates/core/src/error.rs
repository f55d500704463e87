use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate interpolation nodes")]
    DegenerateNodes,

    #[error("interpolation needs at least one sample")]
    NoSamples,

    #[error("degree exceeds ambient dimension (degree {degree}, dimension {dimension})")]
    DegreeExceedsDimension { degree: usize, dimension: usize },

    #[error("finite difference of order {order} needs {needed} values, got {got}")]
    InsufficientValues {
        order: usize,
        needed: usize,
        got: usize,
    },

    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a polytope needs at least one generator")]
    EmptyPolytope,

    #[error("a collection needs at least one polytope")]
    EmptyCollection,

    #[error("facet normals require full dimension")]
    NotFullDimensional,

    #[error("Minkowski sum of the collection is not full-dimensional")]
    SumNotFullDimensional,

    #[error("leading-coefficient formula requires full-dimensional polytopes")]
    MembersNotFullDimensional,

    #[error("complementary-dimension hypothesis fails: {0}")]
    ComplementaryHypothesis(String),

    #[error("input is not an Ehrhart polynomial")]
    NotEhrhart,

    #[error("direction must be a nonzero primitive integer vector")]
    NotPrimitive,

    #[error("polynomial must be nonzero")]
    ZeroPolynomial,

    #[error("interpolated polynomial disagrees with the lattice-point count at {node}: expected {expected}, got {computed}")]
    HeldOutMismatch {
        node: String,
        expected: String,
        computed: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
