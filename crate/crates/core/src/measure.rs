//! Discrete weighted probability measures supported in a convex ball.

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;

use crate::constants::{ConvexityConstants, CurvatureBounds, Provenance};
use crate::error::{GeoError, Result};
use crate::geometry::{
    exit_time_unchecked, from_normal_coordinates, segment_distance_unchecked, tangent_basis, Coords, Family,
    ManifoldSpec, Point,
};

const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Off-geodesic distance above which an atom breaks collinearity.
pub const COLLINEAR_TOL: f64 = 1e-10;
const MAX_ORACLE_DIMENSION: usize = 3;

/// The closed ball `B̄(a, ρ)` with its curvature bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSpec {
    center: Point,
    rho: f64,
    bounds: CurvatureBounds,
}

impl BallSpec {
    /// Ball with the exact bounds `δ = Δ = κ` of the ambient model space.
    pub fn new(center: Point, rho: f64) -> Result<Self> {
        let bounds = CurvatureBounds::constant(center.manifold().curvature(), rho)?;
        Ok(Self { center, rho, bounds })
    }

    /// Ball with user-widened bounds; they must contain the model curvature.
    pub fn with_bounds(center: Point, rho: f64, delta: f64, upper: f64) -> Result<Self> {
        let kappa = center.manifold().curvature();
        if delta > kappa || upper < kappa {
            return Err(GeoError::InvalidBounds(format!(
                "bounds [{delta}, {upper}] must contain the model curvature {kappa}"
            )));
        }
        let bounds = CurvatureBounds::new(delta, upper, rho)?;
        Ok(Self { center, rho, bounds })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn bounds(&self) -> &CurvatureBounds {
        &self.bounds
    }

    pub fn manifold(&self) -> &ManifoldSpec {
        self.center.manifold()
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.manifold() == self.manifold() && x.dist(&self.center) <= self.rho + crate::geometry::BALL_SLACK
    }
}

/// A random point `exp_a(v)` with `v` uniform in the normal-coordinate ball of
/// the given radius around the center.
pub fn sample_in_ball<R: Rng + ?Sized>(ball: &BallSpec, radius: f64, rng: &mut R) -> Point {
    let a = ball.center();
    let basis = tangent_basis(a);
    let n = basis.len();
    // rejection from the cube gives a uniform direction
    let dir: Vec<f64> = loop {
        let g: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = g.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-6 && norm <= 1.0 {
            break g.iter().map(|c| c / norm).collect();
        }
    };
    let r = radius * rng.random::<f64>().powf(1.0 / n as f64);
    let c: Vec<f64> = dir.iter().map(|d| d * r).collect();
    from_normal_coordinates(a, &basis, &c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub point: Point,
    pub weight: f64,
}

impl Atom {
    pub fn new(point: Point, weight: f64) -> Self {
        Self { point, weight }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ValidationIssue {
    Empty,
    ManifoldMismatch { index: usize },
    NonPositiveWeight { index: usize, weight: f64 },
    WeightSum { sum: f64 },
    OutsideOpenBall { index: usize, distance: f64, rho: f64 },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::Empty => write!(f, "measure has no atoms"),
            ValidationIssue::ManifoldMismatch { index } => {
                write!(f, "atom {index} lives on a different manifold than the ball")
            }
            ValidationIssue::NonPositiveWeight { index, weight } => {
                write!(f, "atom {index} has non-positive or non-finite weight {weight}")
            }
            ValidationIssue::WeightSum { sum } => write!(f, "weights sum to {sum}, expected 1"),
            ValidationIssue::OutsideOpenBall { index, distance, rho } => write!(
                f,
                "atom {index} lies at distance {distance} from the center, support must be inside the open ball of radius {rho}"
            ),
        }
    }
}

/// Outcome of [`validate`]: every violated invariant plus the support radius.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
    /// `max_i d(p_i, a)` over atoms on the right manifold.
    pub sigma: Option<f64>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

pub fn validate(atoms: &[Atom], ball: &BallSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    if atoms.is_empty() {
        report.issues.push(ValidationIssue::Empty);
        return report;
    }
    let mut sum = 0.0;
    let mut sigma: f64 = 0.0;
    for (index, atom) in atoms.iter().enumerate() {
        if !(atom.weight.is_finite() && atom.weight > 0.0) {
            report.issues.push(ValidationIssue::NonPositiveWeight { index, weight: atom.weight });
        }
        sum += atom.weight;
        if atom.point.manifold() != ball.manifold() {
            report.issues.push(ValidationIssue::ManifoldMismatch { index });
            continue;
        }
        let distance = atom.point.dist(ball.center());
        sigma = sigma.max(distance);
        if distance >= ball.rho() {
            report.issues.push(ValidationIssue::OutsideOpenBall { index, distance, rho: ball.rho() });
        }
    }
    if !((sum - 1.0).abs() <= WEIGHT_SUM_TOL) {
        report.issues.push(ValidationIssue::WeightSum { sum });
    }
    report.sigma = Some(sigma);
    report
}

/// A validated discrete probability measure `μ = Σ w_i δ_{p_i}` supported in
/// the open ball.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
    ball: BallSpec,
    sigma: f64,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<Atom>, ball: BallSpec) -> Result<Self> {
        let report = validate(&atoms, &ball);
        if !report.is_valid() {
            return Err(GeoError::InvalidMeasure(report));
        }
        let sigma = report.sigma.expect("computed for non-empty measures");
        Ok(Self { atoms, ball, sigma })
    }

    /// Equal weights on the given points.
    pub fn uniform(points: Vec<Point>, ball: BallSpec) -> Result<Self> {
        let w = 1.0 / points.len().max(1) as f64;
        Self::new(points.into_iter().map(|p| Atom::new(p, w)).collect(), ball)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn ball(&self) -> &BallSpec {
        &self.ball
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Index of the heaviest atom, ties broken by the lowest index.
    pub fn heaviest_atom(&self) -> usize {
        let mut best = 0;
        for (i, a) in self.atoms.iter().enumerate() {
            if a.weight > self.atoms[best].weight {
                best = i;
            }
        }
        best
    }

    /// The pair of atoms realizing the largest distance, if they are distinct.
    pub fn farthest_pair(&self) -> Option<(usize, usize)> {
        let mut best = (0, 0, 0.0);
        for i in 0..self.atoms.len() {
            for j in (i + 1)..self.atoms.len() {
                let d = self.atoms[i].point.dist(&self.atoms[j].point);
                if d > best.2 {
                    best = (i, j, d);
                }
            }
        }
        (best.2 > 0.0).then_some((best.0, best.1))
    }
}

/// A maximal geodesic segment `{exp_x(s·u) : lo ≤ s ≤ hi}` of the ball.
#[derive(Debug, Clone)]
pub(crate) struct Chord {
    pub origin: Point,
    pub dir: Coords,
    pub lo: f64,
    pub hi: f64,
}

impl Chord {
    /// The chord through `p` and `q`, extended to the boundary on both sides.
    pub fn through(p: &Point, q: &Point, ball: &BallSpec) -> Option<Chord> {
        let d = p.dist(q);
        if d == 0.0 {
            return None;
        }
        let v = p.log_raw(q, d);
        let dir: Coords = v.iter().map(|c| c / d).collect();
        let back: Coords = dir.iter().map(|c| -c).collect();
        let dp = p.dist(ball.center());
        let hi = exit_time_unchecked(p, &dir, ball.center(), ball.rho(), dp);
        let lo = -exit_time_unchecked(p, &back, ball.center(), ball.rho(), dp);
        Some(Chord { origin: p.clone(), dir, lo, hi })
    }

    /// The segment from `p` to `q` (or the single point when they coincide).
    pub fn between(p: &Point, q: &Point) -> Chord {
        let d = p.dist(q);
        let dir: Coords = if d == 0.0 {
            smallvec::SmallVec::from_elem(0.0, p.coords().len())
        } else {
            p.log_raw(q, d).iter().map(|c| c / d).collect()
        };
        Chord { origin: p.clone(), dir, lo: 0.0, hi: d }
    }

    pub fn distance_to(&self, p: &Point) -> f64 {
        if self.hi == self.lo {
            return self.origin.dist(p);
        }
        segment_distance_unchecked(&self.origin, &self.dir, self.lo, self.hi, p)
    }
}

/// Condition ∗: the support is not contained in a single geodesic.
///
/// On the model spaces every geodesic through two interior points of the ball
/// is unique, so it suffices to test the geodesic through the farthest pair.
pub fn condition_star(measure: &DiscreteMeasure) -> bool {
    let Some((i, j)) = measure.farthest_pair() else {
        return false;
    };
    let atoms = measure.atoms();
    let p = &atoms[i].point;
    let q = &atoms[j].point;
    let d = p.dist(q);
    let dir: Coords = p.log_raw(q, d).iter().map(|c| c / d).collect();
    atoms.iter().any(|a| {
        let s = crate::geometry::foot_parameter(p, &dir, &a.point);
        let step: Coords = dir.iter().map(|c| c * s).collect();
        p.shoot(&step).dist(&a.point) > COLLINEAR_TOL
    })
}

/// Mass of the open tube `{x : d(x, chord) < eps}`.
pub(crate) fn tube_mass(measure: &DiscreteMeasure, chord: &Chord, eps: f64) -> f64 {
    measure.atoms().iter().filter(|a| chord.distance_to(&a.point) < eps).map(|a| a.weight).sum()
}

/// Tube mass at radius `eps` around the maximal chord through atoms `i`, `j`.
pub fn tube_mass_through(measure: &DiscreteMeasure, i: usize, j: usize, eps: f64) -> Option<f64> {
    let atoms = measure.atoms();
    let chord = Chord::through(&atoms[i].point, &atoms[j].point, measure.ball())?;
    Some(tube_mass(measure, &chord, eps))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantsMode {
    /// Candidate geodesics through every pair of atoms.
    Heuristic,
    /// Dense chord grid with an inflated tube radius that covers every chord.
    OracleCertified,
}

/// Running maximum of tube mass on a grid of radii, given each chord's atom
/// distances.
struct TubeProfile {
    radii: Vec<f64>,
    max_mass: Vec<f64>,
}

impl TubeProfile {
    fn new(rho: f64, resolution: usize) -> Self {
        let radii = (1..=resolution).map(|j| rho * j as f64 / (resolution + 1) as f64).collect();
        Self { radii, max_mass: vec![0.0; resolution] }
    }

    /// Folds in one chord; an atom counts for radius `r` when `d − margin < r`.
    fn add(&mut self, mut dist_weight: Vec<(f64, f64)>, margin: f64) {
        dist_weight.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut k = 0;
        let mut mass = 0.0;
        for (r, best) in self.radii.iter().zip(self.max_mass.iter_mut()) {
            while k < dist_weight.len() && dist_weight[k].0 - margin < *r {
                mass += dist_weight[k].1;
                k += 1;
            }
            if mass > *best {
                *best = mass;
            }
        }
    }

    /// `argmax ε²·η(ε)` over radii with `η(ε) > 0`.
    fn best(&self) -> Option<(f64, f64)> {
        let mut best: Option<(f64, f64, f64)> = None;
        for (&eps, &mass) in self.radii.iter().zip(&self.max_mass) {
            let eta = (1.0 - mass).min(1.0);
            if eta <= 1e-12 {
                continue;
            }
            let score = eps * eps * eta;
            if best.is_none_or(|b| score > b.2) {
                best = Some((eps, eta, score));
            }
        }
        best.map(|(e, n, _)| (e, n))
    }
}

/// Estimates `(ε_μ, η_μ)` with `μ(B(γ, ε_μ)) ≤ 1 − η_μ` for every examined
/// geodesic `γ`, and wraps them with the ball's bounds so that `τ` follows.
pub fn estimate_convexity_constants(
    measure: &DiscreteMeasure,
    mode: ConstantsMode,
    resolution: usize,
) -> Result<ConvexityConstants> {
    if resolution == 0 {
        return Err(GeoError::OutOfRange("resolution must be positive".into()));
    }
    if !condition_star(measure) {
        return Err(GeoError::ConditionStarFails);
    }
    let ball = measure.ball();
    let dist_weights = |chord: &Chord| -> Vec<(f64, f64)> {
        measure.atoms().iter().map(|a| (chord.distance_to(&a.point), a.weight)).collect()
    };
    match mode {
        ConstantsMode::Heuristic => {
            let atoms = measure.atoms();
            let mut chords = Vec::new();
            for i in 0..atoms.len() {
                for j in (i + 1)..atoms.len() {
                    if let Some(c) = Chord::through(&atoms[i].point, &atoms[j].point, ball) {
                        chords.push(c);
                    }
                }
            }
            let mut rho_scan = ball.rho();
            // Coarse grids may start above the smallest off-geodesic distance;
            // shrink the scanned range until some radius leaves mass outside.
            for _ in 0..60 {
                let mut profile = TubeProfile::new(rho_scan, resolution);
                for c in &chords {
                    profile.add(dist_weights(c), 0.0);
                }
                if let Some((eps, eta)) = profile.best() {
                    return ConvexityConstants::new(eps, eta, *ball.bounds(), Provenance::Heuristic);
                }
                rho_scan *= 0.5;
            }
            Err(GeoError::CertificationFailed("no admissible tube radius found".into()))
        }
        ConstantsMode::OracleCertified => {
            let m = ball.manifold();
            let n = m.dimension();
            if n > MAX_ORACLE_DIMENSION {
                return Err(GeoError::DimensionTooLarge { dimension: n, max: MAX_ORACLE_DIMENSION });
            }
            let (boundary, cover_angle) = boundary_grid(ball, resolution);
            let margin = chord_cover_margin(ball, cover_angle);
            let mut profile = TubeProfile::new(ball.rho(), resolution);
            for i in 0..boundary.len() {
                for j in i..boundary.len() {
                    let chord = Chord::between(&boundary[i], &boundary[j]);
                    profile.add(dist_weights(&chord), margin);
                }
            }
            let (eps, eta) = profile.best().ok_or_else(|| {
                GeoError::CertificationFailed(format!(
                    "resolution {resolution} gives a covering margin {margin:.3e} too coarse for this measure"
                ))
            })?;
            ConvexityConstants::new(eps, eta, *ball.bounds(), Provenance::OracleCertified)
        }
    }
}

/// Boundary points of the ball on a direction grid in normal coordinates, with
/// the angular covering radius of that grid.
fn boundary_grid(ball: &BallSpec, resolution: usize) -> (Vec<Point>, f64) {
    let a = ball.center();
    let basis = tangent_basis(a);
    let rho = ball.rho();
    let n = ball.manifold().dimension();
    let mut pts = Vec::new();
    let cover = match n {
        1 => {
            pts.push(from_normal_coordinates(a, &basis, &[rho]));
            pts.push(from_normal_coordinates(a, &basis, &[-rho]));
            0.0
        }
        2 => {
            let count = resolution.max(3);
            for i in 0..count {
                let th = 2.0 * PI * i as f64 / count as f64;
                pts.push(from_normal_coordinates(a, &basis, &[rho * th.cos(), rho * th.sin()]));
            }
            PI / count as f64
        }
        _ => {
            // latitude/longitude grid with m+1 rings and 2m meridians
            let m = ((resolution as f64).sqrt().ceil() as usize).max(4);
            for i in 0..=m {
                let th = PI * i as f64 / m as f64;
                let per_ring = if i == 0 || i == m { 1 } else { 2 * m };
                for j in 0..per_ring {
                    let ph = PI * j as f64 / m as f64;
                    let c = [rho * th.sin() * ph.cos(), rho * th.sin() * ph.sin(), rho * th.cos()];
                    pts.push(from_normal_coordinates(a, &basis, &c));
                }
            }
            // |Δθ| ≤ π/2m to the nearest ring, then ≤ π/2m along it
            PI / m as f64
        }
    };
    (pts, cover)
}

/// Hausdorff distance bound between any chord and the grid chord joining the
/// grid points nearest to its endpoints.
///
/// Endpoints move by at most `S_κ(ρ)·angle` along the boundary sphere. In
/// nonpositive curvature the distance between corresponding points of two
/// geodesics is convex, so it is bounded by the endpoint displacement; in
/// curvature κ > 0 the normal Jacobi field bound adds the factor
/// `1/cos(ρ√κ)`. The final 1% absorbs the first-order nature of that bound.
fn chord_cover_margin(ball: &BallSpec, cover_angle: f64) -> f64 {
    let m = ball.manifold();
    let rho = ball.rho();
    let kappa = m.curvature();
    let endpoint_shift = crate::constants::s_kappa(kappa, rho) * cover_angle;
    let factor = match m.family() {
        Family::Sphere => 1.0 / (rho * kappa.sqrt()).cos(),
        _ => 1.0,
    };
    1.01 * factor * endpoint_shift
}
