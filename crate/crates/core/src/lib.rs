//! Geometric median of discrete probability measures on the constant-curvature
//! model spaces, computed with a projected Riemannian subgradient method.

pub mod bounds;
pub mod constants;
pub mod error;
pub mod geometry;
pub mod measure;
pub mod objective;
pub mod oracles;
pub mod solver;

pub use constants::{ConvexityConstants, CurvatureBounds, Provenance};
pub use error::{GeoError, Result};
pub use geometry::{Family, ManifoldSpec, Point, Tangent};
pub use measure::{Atom, BallSpec, ConstantsMode, DiscreteMeasure, ValidationReport};
pub use objective::{Evaluation, MedianCertificate, SubgradientVector};
pub use solver::{
    make_schedule, solve, IterateRecord, IterateTrace, ScheduleKind, Solution, SolverConfig, Status, StepSequence,
    StepsizeSchedule,
};
pub use bounds::{BoundSeries, DominationReport, RateBound, RateBranch, TauEstimate};
