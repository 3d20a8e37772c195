use thiserror::Error;

use crate::measure::ValidationReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("invalid manifold: {0}")]
    InvalidManifold(String),
    #[error("coordinates do not lie on the manifold: {0}")]
    NotOnManifold(String),
    #[error("points belong to different manifolds")]
    MismatchedManifolds,
    #[error("antipodal points: the logarithm map is undefined")]
    AntipodalPoints,
    #[error("step of length {length} reaches the cut locus of the sphere (limit {limit})")]
    StepTooLongOnSphere { length: f64, limit: f64 },
    #[error("direction must have unit length, got {0}")]
    NotUnitDirection(f64),
    #[error("angle vertex coincides with one of the endpoints")]
    DegenerateVertex,
    #[error("point lies outside the closed ball (distance {distance} > radius {rho})")]
    PointOutsideBall { distance: f64, rho: f64 },
    #[error("invalid curvature bounds: {0}")]
    InvalidBounds(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("support radius sigma = {sigma} must be below rho = {rho}")]
    SigmaNotBelowRho { sigma: f64, rho: f64 },
    #[error("invalid measure: {0}")]
    InvalidMeasure(ValidationReport),
    #[error("condition * fails: the support lies on a single geodesic")]
    ConditionStarFails,
    #[error("tube search could not certify (eps_mu, eta_mu): {0}")]
    CertificationFailed(String),
    #[error("dimension {dimension} is too large for the grid oracle (max {max})")]
    DimensionTooLarge { dimension: usize, max: usize },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("stepsize scale {beta} exceeds the certified floor {floor}")]
    ScheduleViolatesBetaFloor { beta: f64, floor: f64 },
    #[error("step sequence does not satisfy a_k -> 0 and sum a_k = infinity: {0}")]
    NonConformingSequence(String),
    #[error("subgradient vanishes; the fundamental inequality needs |H(x)| > 0")]
    ZeroSubgradient,
    #[error("tau must be positive, got {0}")]
    TauNonpositive(f64),
    #[error("bound series and trace were produced with different step sizes (first mismatch at k = {0})")]
    ScheduleMismatch(usize),
    #[error("the Weiszfeld oracle only applies to Euclidean spaces")]
    NonEuclidean,
    #[error("the measure's support is not contained in one geodesic")]
    NotCollinear,
}

pub type Result<T> = std::result::Result<T, GeoError>;
