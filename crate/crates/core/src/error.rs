use thiserror::Error;

/// Errors raised by geometry, symmetry and verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("the origin is not an interior point of the body")]
    OriginNotInterior,
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("point is not in the interior (min slack {slack:e})")]
    PointNotInterior { slack: f64 },
    #[error("Santalo point search did not converge after {restarts} restarts")]
    ConvergenceFailure { restarts: usize },
    #[error("matrix is not orthogonal (deviation {deviation:e})")]
    NotOrthogonal { deviation: f64 },
    #[error("group closure exceeded {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("bad order: {0}")]
    BadOrder(String),
    #[error("points are parallel as vectors from the origin")]
    ParallelPoints,
    #[error("point is not on the boundary (gauge {gauge})")]
    NotOnBoundary { gauge: f64 },
    #[error("angle {0} rad is outside (0, pi)")]
    BadAngle(f64),
    #[error("sector has zero area")]
    ZeroArea,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("consecutive anchors are parallel")]
    ParallelAnchors,
    #[error("curve is not closed")]
    NotClosed,
    #[error("curve is not simple: {0}")]
    SelfIntersecting(String),
    #[error("point lies outside the body")]
    PointOutside,
    #[error("body is not invariant under {0}")]
    NotInvariant(String),
    #[error("no proven bound for group {0}")]
    UnsupportedGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
