use thiserror::Error;

/// Errors raised by the geometric kernel and the algorithms built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("polygon has fewer than 3 distinct vertices after canonicalization")]
    TooFewVertices,
    #[error("polygon is not convex (turn defect {defect:e})")]
    NonConvex { defect: f64 },
    #[error("body is degenerate: width {width:e} perpendicular to the requested direction")]
    DegenerateBody { width: f64 },
    #[error("direction is degenerate (within {tol:e} of horizontal)")]
    DegenerateDirection { tol: f64 },
    #[error("chord length {l} outside (0, {max}]")]
    InvalidChord { l: f64, max: f64 },
    #[error("support set at the {side} of the slab is an edge; shave first")]
    DegenerateSupport { side: &'static str },
    #[error("no homothetic pair found: {diagnostics}")]
    NoRootFound { diagnostics: String },
    #[error("linear map is singular (det {det:e})")]
    SingularMap { det: f64 },
    #[error("invalid parallelogram: {0}")]
    InvalidParallelogram(&'static str),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("cross-family hypothesis violated between family {a} and family {b}")]
    HypothesisViolation { a: usize, b: usize },
    #[error("transversal lines are parallel")]
    DegenerateLines,
    #[error("region is {ratio} times the parallelogram, more than 2")]
    RatioExceeded { ratio: f64 },
    #[error("region edges are not parallel to the parallelogram edges")]
    NotParallel,
    #[error("pipeline failure: {reason}")]
    PipelineFailure { reason: String, repro: String },
    #[error("brute force limited to {max_polys} polygons and k <= {max_k}, got {polys} and {k}")]
    TooLarge {
        polys: usize,
        k: usize,
        max_polys: usize,
        max_k: usize,
    },
    #[error("rejection budget of {0} exhausted")]
    RejectionBudgetExceeded(usize),
    #[error("unknown body spec `{0}`")]
    UnknownBody(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
