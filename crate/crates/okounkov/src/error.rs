use thiserror::Error;

/// Errors across the polyhedral kernel and the T-variety layers.
///
/// Display strings are stable and double as CLI error names.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("empty-polyhedron")]
    EmptyPolyhedron,
    #[error("unbounded")]
    Unbounded,
    #[error("unbounded-without-rays")]
    UnboundedWithoutRays,
    #[error("rank-mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("no-cell-with-tail: slice at {point} has no cell with tail {cone}")]
    NoCellWithTail { point: String, cone: String },
    #[error("not-a-splitting")]
    NotASplitting,
    #[error("not-complete")]
    NotComplete,
    #[error("not-maximal-cone")]
    NotMaximalCone,
    #[error("not-q-cartier: {0}")]
    NotQCartier(String),
    #[error("underdetermined")]
    Underdetermined,
    #[error("not-smooth")]
    NotSmooth,
    #[error("marking-mismatch")]
    MarkingMismatch,
    #[error("locus-mismatch")]
    LocusMismatch,
    #[error("bad-ray-order: {0}")]
    BadRayOrder(String),
    #[error("cannot-normalize: {0}")]
    CannotNormalize(String),
    #[error("not-a-section")]
    NotASection,
    #[error("not-big")]
    NotBig,
    #[error("not-simplicial")]
    NotSimplicial,
    #[error("nonzero-degree")]
    NonzeroDegree,
    #[error("not-lattice-polytope")]
    NotLatticePolytope,
    #[error("no-distance-2-pair")]
    NoDistance2Pair,
    #[error("not-divisorial-polytope: {0}")]
    NotDivisorialPolytope(String),
    #[error("not-effective-class")]
    NotEffectiveClass,
    #[error("dimension-too-high")]
    DimensionTooHigh,
    #[error("schema-error: {0}")]
    Schema(String),
    #[error("validation-error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
