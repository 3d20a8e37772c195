//! Exact differential geometry of the constant-curvature model spaces.
//!
//! Three families are supported, all embedded in a flat ambient space so that
//! exponential and logarithm maps have closed forms:
//!
//! * Euclidean `E^n`, coordinates in `R^n`;
//! * the sphere of curvature `κ > 0`, the radius `1/√κ` sphere in `R^{n+1}`;
//! * hyperbolic space of curvature `κ < 0`, the upper sheet of the hyperboloid
//!   `⟨x,x⟩_M = -1/|κ|` in Minkowski space `R^{1,n}`, time coordinate first.
//!
//! Every operation that produces a point re-projects onto the embedded model so
//! drift does not accumulate over long iterations.

use std::f64::consts::PI;

use smallvec::SmallVec;

use crate::error::{GeoError, Result};
use crate::measure::BallSpec;

/// Ambient coordinates. Inline storage covers every manifold of dimension ≤ 3.
pub type Coords = SmallVec<[f64; 4]>;

/// Distance below which the sphere log map is declared undefined, measured
/// from the cut distance `π/√κ`.
pub const ANTIPODAL_CUTOFF: f64 = 1e-9;

/// Absolute bisection tolerance of [`ball_exit_time`].
pub const EXIT_TIME_TOL: f64 = 1e-10;

/// Slack granted to the closed-ball membership test.
pub const BALL_SLACK: f64 = 1e-12;
/// Boundary slack inside the exit-time bisection, well below [`BALL_SLACK`]
/// so that the returned point always passes the containment check.
const EXIT_SLACK: f64 = 1e-13;

const UNIT_TOL: f64 = 1e-10;
const EMBEDDING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Euclidean,
    Sphere,
    Hyperbolic,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Euclidean => "euclidean",
            Family::Sphere => "sphere",
            Family::Hyperbolic => "hyperbolic",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = GeoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(Family::Euclidean),
            "sphere" => Ok(Family::Sphere),
            "hyperbolic" => Ok(Family::Hyperbolic),
            other => Err(GeoError::InvalidManifold(format!("unknown family `{other}`"))),
        }
    }
}

/// A constant-curvature model space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManifoldSpec {
    family: Family,
    dimension: usize,
    curvature: f64,
}

impl ManifoldSpec {
    pub fn new(family: Family, dimension: usize, curvature: f64) -> Result<Self> {
        if dimension == 0 {
            return Err(GeoError::InvalidManifold("dimension must be at least 1".into()));
        }
        if !curvature.is_finite() {
            return Err(GeoError::InvalidManifold("curvature must be finite".into()));
        }
        let sign_ok = match family {
            Family::Euclidean => curvature == 0.0,
            Family::Sphere => curvature > 0.0,
            Family::Hyperbolic => curvature < 0.0,
        };
        if !sign_ok {
            return Err(GeoError::InvalidManifold(format!(
                "curvature {curvature} does not match the {} family",
                family.name()
            )));
        }
        Ok(Self { family, dimension, curvature })
    }

    pub fn euclidean(dimension: usize) -> Result<Self> {
        Self::new(Family::Euclidean, dimension, 0.0)
    }

    pub fn sphere(dimension: usize, curvature: f64) -> Result<Self> {
        Self::new(Family::Sphere, dimension, curvature)
    }

    pub fn hyperbolic(dimension: usize, curvature: f64) -> Result<Self> {
        Self::new(Family::Hyperbolic, dimension, curvature)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn curvature(&self) -> f64 {
        self.curvature
    }

    /// Length of the coordinate vector of a point.
    pub fn ambient_dimension(&self) -> usize {
        match self.family {
            Family::Euclidean => self.dimension,
            _ => self.dimension + 1,
        }
    }

    /// Model radius `1/√|κ|`; infinite for Euclidean space.
    pub fn radius(&self) -> f64 {
        match self.family {
            Family::Euclidean => f64::INFINITY,
            _ => 1.0 / self.curvature.abs().sqrt(),
        }
    }

    /// Cut distance `π/√κ` on the sphere, infinite otherwise.
    pub fn injectivity_radius(&self) -> f64 {
        match self.family {
            Family::Sphere => PI * self.radius(),
            _ => f64::INFINITY,
        }
    }

    /// The distinguished base point: the coordinate origin in `E^n`, the pole
    /// `(R, 0, …, 0)` on the sphere and the hyperboloid vertex otherwise.
    pub fn origin(&self) -> Point {
        let mut coords: Coords = SmallVec::from_elem(0.0, self.ambient_dimension());
        if self.family != Family::Euclidean {
            coords[0] = self.radius();
        }
        Point { manifold: *self, coords }
    }

    /// Validates `coords` against the embedding constraint (relative tolerance
    /// 1e-9) and re-projects exactly onto the model.
    pub fn point(&self, coords: &[f64]) -> Result<Point> {
        if coords.len() != self.ambient_dimension() {
            return Err(GeoError::NotOnManifold(format!(
                "expected {} coordinates, got {}",
                self.ambient_dimension(),
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeoError::NotOnManifold("non-finite coordinate".into()));
        }
        let p = Point { manifold: *self, coords: Coords::from_slice(coords) };
        if self.family == Family::Hyperbolic && coords[0] <= 0.0 {
            return Err(GeoError::NotOnManifold("time coordinate must be positive".into()));
        }
        let residual = p.embedding_residual();
        if residual > EMBEDDING_TOL {
            return Err(GeoError::NotOnManifold(format!("embedding residual {residual:e}")));
        }
        Ok(p.reprojected())
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minkowski product with signature `(-, +, …, +)`.
#[inline]
pub(crate) fn minkowski(a: &[f64], b: &[f64]) -> f64 {
    -a[0] * b[0] + a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<f64>()
}

#[inline]
fn sub(a: &[f64], b: &[f64]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `sin(x)/x`, accurate near zero.
#[inline]
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `sinh(x)/x`, accurate near zero.
#[inline]
fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

/// A point of a model space.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    manifold: ManifoldSpec,
    coords: Coords,
}

impl Point {
    pub fn manifold(&self) -> &ManifoldSpec {
        &self.manifold
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Relative violation of the embedding constraint.
    pub fn embedding_residual(&self) -> f64 {
        let r2 = self.manifold.radius().powi(2);
        match self.manifold.family {
            Family::Euclidean => 0.0,
            Family::Sphere => (dot(&self.coords, &self.coords) - r2).abs() / r2,
            Family::Hyperbolic => {
                let scale = r2.max(dot(&self.coords, &self.coords));
                (minkowski(&self.coords, &self.coords) + r2).abs() / scale
            }
        }
    }

    fn reprojected(mut self) -> Self {
        let r = self.manifold.radius();
        match self.manifold.family {
            Family::Euclidean => {}
            Family::Sphere => {
                let n = dot(&self.coords, &self.coords).sqrt();
                let s = r / n;
                self.coords.iter_mut().for_each(|c| *c *= s);
            }
            Family::Hyperbolic => {
                let spatial = dot(&self.coords[1..], &self.coords[1..]);
                self.coords[0] = (r * r + spatial).sqrt();
            }
        }
        self
    }

    fn check_same(&self, other: &Point) -> Result<()> {
        if self.manifold != other.manifold {
            Err(GeoError::MismatchedManifolds)
        } else {
            Ok(())
        }
    }

    /// Moves along the geodesic with initial velocity `vec` (assumed tangent at
    /// `self`) for unit time. No validation: callers guarantee the inputs.
    pub(crate) fn shoot(&self, vec: &[f64]) -> Point {
        let m = self.manifold;
        let coords: Coords = match m.family {
            Family::Euclidean => self.coords.iter().zip(vec).map(|(x, v)| x + v).collect(),
            Family::Sphere => {
                let r = m.radius();
                let s = dot(vec, vec).sqrt();
                let a = s / r;
                let (c, k) = (a.cos(), sinc(a));
                self.coords.iter().zip(vec).map(|(x, v)| c * x + k * v).collect()
            }
            Family::Hyperbolic => {
                let r = m.radius();
                let s = minkowski(vec, vec).max(0.0).sqrt();
                let a = s / r;
                let (c, k) = (a.cosh(), sinhc(a));
                self.coords.iter().zip(vec).map(|(x, v)| c * x + k * v).collect()
            }
        };
        Point { manifold: m, coords }.reprojected()
    }

    /// Distance without the antipodal guard.
    pub(crate) fn dist(&self, other: &Point) -> f64 {
        let m = self.manifold;
        match m.family {
            Family::Euclidean => {
                self.coords.iter().zip(&other.coords).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
            }
            Family::Sphere => {
                let (mut minus, mut plus) = (0.0, 0.0);
                for (x, y) in self.coords.iter().zip(&other.coords) {
                    minus += (x - y) * (x - y);
                    plus += (x + y) * (x + y);
                }
                2.0 * m.radius() * minus.sqrt().atan2(plus.sqrt())
            }
            Family::Hyperbolic => {
                let r = m.radius();
                let sq = |i: usize| (self.coords[i] - other.coords[i]).powi(2);
                let spatial: f64 = (1..self.coords.len()).map(sq).sum();
                let chord = (spatial - sq(0)).max(0.0).sqrt();
                2.0 * r * (chord / (2.0 * r)).asinh()
            }
        }
    }

    /// Logarithm without the antipodal guard; `d` must be `self.dist(p)`.
    pub(crate) fn log_raw(&self, p: &Point, d: f64) -> Coords {
        let m = self.manifold;
        let w = sub(&p.coords, &self.coords);
        match m.family {
            Family::Euclidean => w,
            Family::Sphere | Family::Hyperbolic => {
                let r2 = m.radius().powi(2);
                let mut u: Coords = if m.family == Family::Sphere {
                    let c = dot(&self.coords, &w) / r2;
                    w.iter().zip(&self.coords).map(|(wi, xi)| wi - c * xi).collect()
                } else {
                    let c = minkowski(&self.coords, &w) / r2;
                    w.iter().zip(&self.coords).map(|(wi, xi)| wi + c * xi).collect()
                };
                project_tangent(self, &mut u);
                let n = tangent_inner(m.family, &u, &u).max(0.0).sqrt();
                if n == 0.0 || d == 0.0 {
                    u.iter_mut().for_each(|c| *c = 0.0);
                } else {
                    let s = d / n;
                    u.iter_mut().for_each(|c| *c *= s);
                }
                u
            }
        }
    }
}

#[inline]
pub(crate) fn tangent_inner(family: Family, a: &[f64], b: &[f64]) -> f64 {
    match family {
        Family::Hyperbolic => minkowski(a, b),
        _ => dot(a, b),
    }
}

fn project_tangent(base: &Point, v: &mut Coords) {
    let m = base.manifold;
    match m.family {
        Family::Euclidean => {}
        Family::Sphere => {
            let c = dot(&base.coords, v) / m.radius().powi(2);
            v.iter_mut().zip(&base.coords).for_each(|(vi, xi)| *vi -= c * xi);
        }
        Family::Hyperbolic => {
            let c = minkowski(&base.coords, v) / m.radius().powi(2);
            v.iter_mut().zip(&base.coords).for_each(|(vi, xi)| *vi += c * xi);
        }
    }
}

/// A tangent vector, stored in ambient coordinates together with its base.
#[derive(Debug, Clone, PartialEq)]
pub struct Tangent {
    base: Point,
    vec: Coords,
}

impl Tangent {
    /// Builds a tangent vector, projecting `vec` onto the tangent space after
    /// checking it is tangent to within 1e-9 (relative).
    pub fn new(base: &Point, vec: &[f64]) -> Result<Self> {
        if vec.len() != base.coords.len() {
            return Err(GeoError::NotOnManifold("tangent has wrong length".into()));
        }
        let m = base.manifold;
        let normal = match m.family {
            Family::Euclidean => 0.0,
            Family::Sphere => dot(&base.coords, vec) / m.radius(),
            Family::Hyperbolic => minkowski(&base.coords, vec) / m.radius(),
        };
        let scale = dot(vec, vec).sqrt().max(1.0);
        if normal.abs() > EMBEDDING_TOL * scale {
            return Err(GeoError::NotOnManifold(format!("vector is not tangent (normal part {normal:e})")));
        }
        Ok(Self::projected(base, Coords::from_slice(vec)))
    }

    pub(crate) fn projected(base: &Point, mut vec: Coords) -> Self {
        project_tangent(base, &mut vec);
        Self { base: base.clone(), vec }
    }

    pub fn zero(base: &Point) -> Self {
        Self { base: base.clone(), vec: SmallVec::from_elem(0.0, base.coords.len()) }
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn vec(&self) -> &[f64] {
        &self.vec
    }

    pub fn inner(&self, other: &Tangent) -> f64 {
        tangent_inner(self.base.manifold.family, &self.vec, &other.vec)
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).max(0.0).sqrt()
    }

    pub fn scaled(&self, s: f64) -> Tangent {
        Tangent { base: self.base.clone(), vec: self.vec.iter().map(|v| v * s).collect() }
    }

    pub fn neg(&self) -> Tangent {
        self.scaled(-1.0)
    }

    /// Sum of two vectors at the same base point.
    pub fn add(&self, other: &Tangent) -> Tangent {
        Tangent {
            base: self.base.clone(),
            vec: self.vec.iter().zip(&other.vec).map(|(a, b)| a + b).collect(),
        }
    }

    /// The unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Tangent> {
        let n = self.norm();
        (n > 0.0).then(|| self.scaled(1.0 / n))
    }
}

pub fn distance(x: &Point, y: &Point) -> Result<f64> {
    x.check_same(y)?;
    let d = x.dist(y);
    if d >= x.manifold.injectivity_radius() - ANTIPODAL_CUTOFF {
        return Err(GeoError::AntipodalPoints);
    }
    Ok(d)
}

pub fn exp_map(v: &Tangent) -> Result<Point> {
    let m = v.base.manifold;
    if m.family == Family::Sphere {
        let len = v.norm();
        let limit = m.injectivity_radius();
        if len >= limit {
            return Err(GeoError::StepTooLongOnSphere { length: len, limit });
        }
    }
    Ok(v.base.shoot(&v.vec))
}

pub fn log_map(x: &Point, p: &Point) -> Result<Tangent> {
    let d = distance(x, p)?;
    Ok(Tangent { base: x.clone(), vec: x.log_raw(p, d) })
}

/// `exp_x(t·u)` for a unit direction `u`.
pub fn geodesic_point(x: &Point, u: &Tangent, t: f64) -> Result<Point> {
    x.check_same(&u.base)?;
    let n = u.norm();
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(GeoError::NotUnitDirection(n));
    }
    exp_map(&Tangent { base: x.clone(), vec: u.vec.iter().map(|c| c * t).collect() })
}

/// The angle at `x` of the geodesic triangle `p x q`.
pub fn angle(x: &Point, p: &Point, q: &Point) -> Result<f64> {
    let a = log_map(x, p)?.normalized().ok_or(GeoError::DegenerateVertex)?;
    let b = log_map(x, q)?.normalized().ok_or(GeoError::DegenerateVertex)?;
    Ok(angle_between(&a, &b))
}

/// Angle between two unit tangent vectors, `2·atan2(|a-b|, |a+b|)`.
pub(crate) fn angle_between(a: &Tangent, b: &Tangent) -> f64 {
    let diff = a.add(&b.neg()).norm();
    let sum = a.add(b).norm();
    2.0 * diff.atan2(sum)
}

/// `sup{t ∈ [0, 2ρ] : γ(t) ∈ B̄(a, ρ)}` for the geodesic `γ(t) = exp_x(t·u)`,
/// computed by bisection on the membership indicator.
pub fn ball_exit_time(x: &Point, u: &Tangent, ball: &BallSpec) -> Result<f64> {
    let a = ball.center();
    let rho = ball.rho();
    x.check_same(a)?;
    x.check_same(&u.base)?;
    let n = u.norm();
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(GeoError::NotUnitDirection(n));
    }
    let d0 = x.dist(a);
    if d0 > rho + EXIT_TIME_TOL {
        return Err(GeoError::PointOutsideBall { distance: d0, rho });
    }
    Ok(exit_time_unchecked(x, &u.vec, a, rho, d0))
}

pub(crate) fn exit_time_unchecked(x: &Point, u: &[f64], center: &Point, rho: f64, d0: f64) -> f64 {
    let m = x.manifold;
    let r = m.radius();
    // Membership of γ(t) is tested through the chord |γ(t) − a|, expanded in
    // inner products that are fixed along the geodesic: with w = x − a,
    // γ(t) − a = w + (c(t) − 1)·x + R·s(t)·u.
    let w = sub(&x.coords, &center.coords);
    let ip = |a: &[f64], b: &[f64]| tangent_inner(m.family, a, b);
    let (ww, wx, wu) = (ip(&w, &w), ip(&w, &x.coords), ip(&w, u));
    let limit = rho + EXIT_SLACK;
    let inside = |t: f64| -> bool {
        match m.family {
            Family::Euclidean => ww + 2.0 * t * wu + t * t <= limit * limit,
            Family::Sphere => {
                let h = t / (2.0 * r);
                let cm1 = -2.0 * h.sin().powi(2);
                let s = (t / r).sin();
                let chord2 = ww + cm1 * cm1 * r * r + r * r * s * s + 2.0 * cm1 * wx + 2.0 * r * s * wu;
                let max_chord = 2.0 * r * (limit / (2.0 * r)).sin();
                chord2 <= max_chord * max_chord
            }
            Family::Hyperbolic => {
                let h = t / (2.0 * r);
                let cm1 = 2.0 * h.sinh().powi(2);
                let s = (t / r).sinh();
                let chord2 = ww - cm1 * cm1 * r * r + r * r * s * s + 2.0 * cm1 * wx + 2.0 * r * s * wu;
                let max_chord = 2.0 * r * (limit / (2.0 * r)).sinh();
                chord2 <= max_chord * max_chord
            }
        }
    };
    let hi_max = 2.0 * rho;
    if inside(hi_max) {
        return hi_max;
    }
    // γ(t) stays inside for t ≤ ρ − d(x, a) and leaves for t > ρ + d(x, a).
    let mut lo = (rho - d0).max(0.0);
    let mut hi = (rho + d0).min(hi_max);
    if inside(hi) {
        lo = hi;
        hi = hi_max;
    }
    // The crossing also has a closed form; it only narrows the bracket, every
    // endpoint is still certified by the membership test.
    let guess = match m.family {
        Family::Euclidean => -wu + (wu * wu - ww + limit * limit).max(0.0).sqrt(),
        Family::Sphere => {
            let (a, b) = (1.0 - wx / (r * r), -wu / r);
            let amp = a.hypot(b);
            r * (b.atan2(a) + ((limit / r).cos() / amp).clamp(-1.0, 1.0).acos())
        }
        Family::Hyperbolic => {
            let (a, b) = (1.0 + wx / (r * r), wu / r);
            let c = (limit / r).cosh();
            r * ((c + (c * c - a * a + b * b).max(0.0).sqrt()) / (a + b)).ln()
        }
    };
    if guess.is_finite() && guess > lo && guess < hi {
        let mut half = EXIT_TIME_TOL;
        while half < hi - lo {
            let (l, h) = ((guess - half).max(lo), (guess + half).min(hi));
            if inside(l) && !inside(h) {
                (lo, hi) = (l, h);
                break;
            }
            half *= 16.0;
        }
    }
    while hi - lo > EXIT_TIME_TOL {
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// An orthonormal basis of `T_x M`.
pub fn tangent_basis(x: &Point) -> Vec<Tangent> {
    let m = x.manifold;
    let amb = m.ambient_dimension();
    let mut basis: Vec<Tangent> = Vec::with_capacity(m.dimension);
    // Start from the last ambient axes: they are transverse to the model's
    // distinguished pole, which keeps the Gram-Schmidt well conditioned.
    for j in (0..amb).rev() {
        if basis.len() == m.dimension {
            break;
        }
        let mut e: Coords = SmallVec::from_elem(0.0, amb);
        e[j] = 1.0;
        let mut v = Tangent::projected(x, e);
        for b in &basis {
            let c = v.inner(b);
            v = v.add(&b.scaled(-c));
        }
        if v.norm() > 1e-6 {
            let mut v = v.normalized().expect("nonzero");
            // second pass for orthogonality at round-off level
            for b in &basis {
                let c = v.inner(b);
                v = v.add(&b.scaled(-c));
            }
            basis.push(v.normalized().expect("nonzero"));
        }
    }
    basis.reverse();
    basis
}

/// `exp_center(Σ c_i e_i)` for the basis returned by [`tangent_basis`].
pub fn from_normal_coordinates(center: &Point, basis: &[Tangent], c: &[f64]) -> Point {
    let mut v: Coords = SmallVec::from_elem(0.0, center.coords.len());
    for (b, ci) in basis.iter().zip(c) {
        v.iter_mut().zip(&b.vec).for_each(|(vi, bi)| *vi += ci * bi);
    }
    center.shoot(&v)
}

/// Components of `log_center(p)` in `basis`.
pub fn to_normal_coordinates(center: &Point, basis: &[Tangent], p: &Point) -> Result<Vec<f64>> {
    let v = log_map(center, p)?;
    Ok(basis.iter().map(|b| b.inner(&v)).collect())
}

/// Parameter of the point closest to `p` on the full geodesic
/// `s ↦ exp_x(s·u)`, for a unit direction `u`.
pub(crate) fn foot_parameter(x: &Point, u: &[f64], p: &Point) -> f64 {
    let m = x.manifold;
    match m.family {
        Family::Euclidean => {
            let w = sub(&p.coords, &x.coords);
            dot(&w, u)
        }
        Family::Sphere => {
            let r = m.radius();
            let c1 = dot(&p.coords, &x.coords) / r;
            let c2 = dot(&p.coords, u);
            r * c2.atan2(c1)
        }
        Family::Hyperbolic => {
            let r = m.radius();
            let c1 = -minkowski(&p.coords, &x.coords) / r;
            let c2 = minkowski(&p.coords, u);
            let ratio = (c2 / c1).clamp(-1.0 + 1e-16, 1.0 - 1e-16);
            r * ratio.atanh()
        }
    }
}

/// Distance from `p` to the full geodesic through `x` with unit direction `u`.
pub fn distance_to_geodesic(x: &Point, u: &Tangent, p: &Point) -> Result<f64> {
    x.check_same(p)?;
    let s = foot_parameter(x, &u.vec, p);
    let step: Coords = u.vec.iter().map(|c| c * s).collect();
    Ok(x.shoot(&step).dist(p))
}

/// Distance from `p` to the geodesic segment `s ↦ exp_x(s·u)`, `s ∈ [0, len]`.
pub fn distance_to_segment(x: &Point, u: &Tangent, len: f64, p: &Point) -> Result<f64> {
    x.check_same(p)?;
    Ok(segment_distance_unchecked(x, &u.vec, 0.0, len, p))
}

/// Distance from `p` to `{exp_x(s·u) : lo ≤ s ≤ hi}`. The distance to a point
/// is unimodal along geodesics shorter than the cut distance, so outside the
/// foot parameter the minimum sits at an endpoint.
pub(crate) fn segment_distance_unchecked(x: &Point, u: &[f64], lo: f64, hi: f64, p: &Point) -> f64 {
    let s = foot_parameter(x, u, p);
    let at = |t: f64| {
        let step: Coords = u.iter().map(|c| c * t).collect();
        x.shoot(&step).dist(p)
    };
    if (lo..=hi).contains(&s) {
        at(s)
    } else {
        at(lo).min(at(hi))
    }
}
