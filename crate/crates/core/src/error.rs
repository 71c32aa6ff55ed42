use thiserror::Error;

/// Errors raised by the geometric operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vectors must have at least one coordinate")]
    EmptyVector,

    #[error("coordinate {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("normal has length {norm:e}, too small to orient a hyperplane")]
    ZeroNormal { norm: f64 },

    #[error("normal has length {norm}, expected a unit vector")]
    NonUnitNormal { norm: f64 },

    #[error("offset is not finite ({0})")]
    NonFiniteOffset(f64),

    #[error("a {0} must contain at least one element")]
    Empty(&'static str),

    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("expected {expected} vertices, got {found}")]
    VertexCount { expected: usize, found: usize },

    #[error("vertices {first} and {second} coincide")]
    RepeatedVertex { first: usize, second: usize },

    #[error("polygon is not strictly convex at vertex {0}")]
    NotConvex(usize),

    #[error("side length {index} is not positive ({value})")]
    NonPositiveLength { index: usize, value: f64 },

    #[error("side lengths do not close up (residual {residual:e})")]
    ClosureViolation { residual: f64 },

    #[error("unknown Platonic solid `{0}`")]
    UnknownSolid(String),

    #[error("parameter {value} outside the open interval ({lo}, {hi})")]
    DomainError { value: f64, lo: f64, hi: f64 },

    #[error("half-spaces do not bound a region")]
    Unbounded,

    #[error("half-space intersection has empty interior")]
    EmptyInterior,

    #[error("hyperplanes {first} and {second} are identical")]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("point coincides with input point {0}")]
    CoincidesWithAnchor(usize),

    #[error("direction sum has norm {residual:e}, above the certificate bound {bound:e}")]
    NotAFermatPoint { residual: f64, bound: f64 },

    #[error("hyperplane set has defect {defect:e}, above tolerance {tol:e}")]
    NotViviani { defect: f64, tol: f64 },

    #[error("point lies strictly on both sides of the hyperplane set (planes {positive} and {negative})")]
    MixedSigns { positive: usize, negative: usize },

    #[error("point {0} is not on its spoke")]
    SpokeViolation(usize),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
