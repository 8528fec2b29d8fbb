use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("line coefficients (a, b) are both zero")]
    DegenerateLine,
    #[error("two-point line record uses the same point twice")]
    CoincidentPoints,
    #[error("ray direction is the zero vector")]
    ZeroDirection,
    #[error("rectangle extents are inverted")]
    InvertedRect,
    #[error("polyline needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polyline vertex {0} repeats its predecessor")]
    RepeatedVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("objective is unbounded below on the feasible set")]
    UnboundedObjective,
    #[error("numerical breakdown: {0}")]
    NumericallyIll(String),
    #[error("malformed problem: {0}")]
    Malformed(String),
    #[error("basis enumeration is capped at {cap} constraints, got {got}")]
    TooManyConstraints { cap: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TspnError {
    #[error("instance has no regions")]
    EmptyInstance,
    #[error("epsilon must lie in (0, 1), got {0}")]
    BadEpsilon(f64),
    #[error("direction count must be positive")]
    NoDirections,
    #[error("line {0} is vertical in the rotated frame")]
    VerticalInFrame(usize),
    #[error(transparent)]
    Lp(#[from] LpError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("{name} is defined for {domain}, got {value}")]
    Domain { name: &'static str, domain: &'static str, value: f64 },
    #[error("orientation count must be at least 4, got {0}")]
    TooFewOrientations(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("lower bound is zero: the instance is degenerate (OPT = 0)")]
    DegenerateInstance,
    #[error("region kind does not match the result mode")]
    KindMismatch,
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Tspn(#[from] TspnError),
}
