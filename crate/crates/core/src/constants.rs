//! Closed-form comparison constants for a ball with sectional curvature
//! pinched in `[δ, Δ]`.
//!
//! | constant | role |
//! |---|---|
//! | [`d_constant`] | lower Hessian bound of `d_p` in normal directions |
//! | [`c_constant`] | upper Hessian bound of `½ d_p²` |
//! | [`l_constant`] | `sin∠C ≥ L·d(A,B)` in right geodesic triangles |
//! | [`tau_constant`] | strong-convexity modulus of the objective |
//! | [`beta_floor`] | uniform lower bound of the ball exit time `r_x` |

use std::f64::consts::{PI, SQRT_2};

use crate::error::{GeoError, Result};

const SERIES_CUTOFF: f64 = 1e-6;

/// Lower/upper sectional curvature bounds on a ball of radius `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureBounds {
    delta: f64,
    upper: f64,
    rho: f64,
}

impl CurvatureBounds {
    /// Requires `delta ≤ upper`, `rho > 0` and, when `upper > 0`,
    /// `rho < π/(4√upper)` strictly.
    pub fn new(delta: f64, upper: f64, rho: f64) -> Result<Self> {
        if !(delta.is_finite() && upper.is_finite() && rho.is_finite()) {
            return Err(GeoError::InvalidBounds("bounds must be finite".into()));
        }
        if rho <= 0.0 {
            return Err(GeoError::InvalidBounds(format!("rho must be positive, got {rho}")));
        }
        if delta > upper {
            return Err(GeoError::InvalidBounds(format!("delta = {delta} exceeds Delta = {upper}")));
        }
        if upper > 0.0 {
            let limit = PI / (4.0 * upper.sqrt());
            if rho >= limit {
                return Err(GeoError::InvalidBounds(format!(
                    "ball radius must satisfy rho < pi/(4 sqrt(Delta)) = {limit} when Delta > 0, got rho = {rho}"
                )));
            }
        }
        Ok(Self { delta, upper, rho })
    }

    /// `δ = Δ = κ`, the exact bounds of a constant-curvature ball.
    pub fn constant(kappa: f64, rho: f64) -> Result<Self> {
        Self::new(kappa, kappa, rho)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// The upper curvature bound `Δ`.
    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// Generalized sine `S_κ(t)`, the solution of `u'' + κu = 0`, `u(0)=0`, `u'(0)=1`.
pub fn s_kappa(kappa: f64, t: f64) -> f64 {
    let x = kappa.abs().sqrt() * t;
    if x.abs() < SERIES_CUTOFF {
        return t * (1.0 - kappa * t * t / 6.0);
    }
    if kappa > 0.0 {
        x.sin() / kappa.sqrt()
    } else {
        x.sinh() / (-kappa).sqrt()
    }
}

/// Derivative `S_κ'(t)`.
pub fn s_kappa_prime(kappa: f64, t: f64) -> f64 {
    let x = kappa.abs().sqrt() * t;
    if kappa > 0.0 {
        x.cos()
    } else {
        x.cosh()
    }
}

/// `x·cot(x)`.
fn x_cot_x(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        1.0 - x * x / 3.0
    } else {
        x / x.tan()
    }
}

/// `x·coth(x)`.
fn x_coth_x(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        1.0 + x * x / 3.0
    } else {
        x / x.tanh()
    }
}

/// `D(ρ,Δ) = S_Δ'(2ρ)/S_Δ(2ρ)`.
pub fn d_constant(b: &CurvatureBounds) -> f64 {
    let two_rho = 2.0 * b.rho;
    let x = two_rho * b.upper.abs().sqrt();
    let xc = if b.upper > 0.0 { x_cot_x(x) } else { x_coth_x(x) };
    xc / two_rho
}

/// `C(ρ,δ)`: `1` for `δ ≥ 0`, otherwise `2ρ√-δ·coth(2ρ√-δ)`.
pub fn c_constant(b: &CurvatureBounds) -> f64 {
    if b.delta >= 0.0 {
        1.0
    } else {
        x_coth_x(2.0 * b.rho * (-b.delta).sqrt())
    }
}

/// `L(ρ,δ)`, the right-triangle sine constant.
pub fn l_constant(b: &CurvatureBounds) -> f64 {
    let x = 2.0 * b.rho * b.delta.abs().sqrt();
    if b.delta > 0.0 {
        // 1 - cos⁴x = sin²x (1 + cos²x)
        let (s, c) = x.sin_cos();
        2.0 * b.delta.sqrt() / (PI * s.abs() * (1.0 + c * c).sqrt())
    } else if b.delta == 0.0 {
        1.0 / (2.0 * SQRT_2 * b.rho)
    } else {
        // cosh⁴x - 1 = sinh²x (cosh²x + 1)
        let (s, c) = (x.sinh(), x.cosh());
        (-b.delta).sqrt() / (s * (c * c + 1.0).sqrt())
    }
}

/// `τ = ½ ε_μ² η_μ D(ρ,Δ) L(ρ,δ)²`.
pub fn tau_constant(eps_mu: f64, eta_mu: f64, b: &CurvatureBounds) -> Result<f64> {
    if !(eps_mu > 0.0 && eps_mu < b.rho) {
        return Err(GeoError::OutOfRange(format!("eps_mu = {eps_mu} must lie in (0, rho = {})", b.rho)));
    }
    if !(eta_mu > 0.0 && eta_mu <= 1.0) {
        return Err(GeoError::OutOfRange(format!("eta_mu = {eta_mu} must lie in (0, 1]")));
    }
    let l = l_constant(b);
    Ok(0.5 * eps_mu * eps_mu * eta_mu * d_constant(b) * l * l)
}

/// `(ρ - σ)/(C(ρ,δ)·cosh(2ρ√|Δ|) + 1)`, a lower bound for every exit time
/// `r_x` along the descent direction.
pub fn beta_floor(b: &CurvatureBounds, sigma: f64) -> Result<f64> {
    if !(sigma >= 0.0 && sigma < b.rho) {
        return Err(GeoError::SigmaNotBelowRho { sigma, rho: b.rho });
    }
    let spread = (2.0 * b.rho * b.upper.abs().sqrt()).cosh();
    Ok((b.rho - sigma) / (c_constant(b) * spread + 1.0))
}

/// Third side of a triangle with sides `a`, `b` enclosing `angle_c` in the
/// model plane of curvature `kappa`, via the haversine form of the law of
/// cosines (stable for thin triangles).
pub fn model_law_of_cosines(kappa: f64, a: f64, b: f64, angle_c: f64) -> Result<f64> {
    if a < 0.0 || b < 0.0 || !(0.0..=PI).contains(&angle_c) {
        return Err(GeoError::OutOfRange("sides must be nonnegative and the angle in [0, π]".into()));
    }
    let half = (0.5 * angle_c).sin().powi(2);
    if kappa > 0.0 {
        let k = kappa.sqrt();
        if (a + b) * k > PI {
            return Err(GeoError::OutOfRange("sides exceed the model injectivity range".into()));
        }
        let (ak, bk) = (a * k, b * k);
        let hav = (0.5 * (ak - bk)).sin().powi(2) + ak.sin() * bk.sin() * half;
        Ok(2.0 * hav.clamp(0.0, 1.0).sqrt().asin() / k)
    } else if kappa < 0.0 {
        let k = (-kappa).sqrt();
        let (ak, bk) = (a * k, b * k);
        let hav = (0.5 * (ak - bk)).sinh().powi(2) + ak.sinh() * bk.sinh() * half;
        Ok(2.0 * hav.max(0.0).sqrt().asinh() / k)
    } else {
        let sq = (a - b).powi(2) + 4.0 * a * b * half;
        Ok(sq.max(0.0).sqrt())
    }
}

/// Where a pair `(ε_μ, η_μ)` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    UserSupplied,
    Heuristic,
    OracleCertified,
}

impl Provenance {
    pub fn is_certified(self) -> bool {
        matches!(self, Provenance::OracleCertified)
    }

    pub fn label(self) -> &'static str {
        match self {
            Provenance::UserSupplied => "user-supplied — non-certified",
            Provenance::Heuristic => "heuristic — non-certified",
            Provenance::OracleCertified => "oracle-certified",
        }
    }
}

/// Tube constants of a measure; `τ` is always recomputed from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityConstants {
    eps_mu: f64,
    eta_mu: f64,
    bounds: CurvatureBounds,
    provenance: Provenance,
}

impl ConvexityConstants {
    pub fn new(eps_mu: f64, eta_mu: f64, bounds: CurvatureBounds, provenance: Provenance) -> Result<Self> {
        tau_constant(eps_mu, eta_mu, &bounds)?;
        Ok(Self { eps_mu, eta_mu, bounds, provenance })
    }

    pub fn eps_mu(&self) -> f64 {
        self.eps_mu
    }

    pub fn eta_mu(&self) -> f64 {
        self.eta_mu
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn bounds(&self) -> &CurvatureBounds {
        &self.bounds
    }

    pub fn tau(&self) -> f64 {
        tau_constant(self.eps_mu, self.eta_mu, &self.bounds).expect("validated on construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(delta: f64, upper: f64, rho: f64) -> CurvatureBounds {
        CurvatureBounds::new(delta, upper, rho).unwrap()
    }

    #[test]
    fn bounds_validation() {
        assert!(CurvatureBounds::new(1.0, 0.0, 1.0).is_err());
        assert!(CurvatureBounds::new(0.0, 0.0, 0.0).is_err());
        // ρ = π/4 exactly violates the strict inequality
        assert!(CurvatureBounds::new(1.0, 1.0, PI / 4.0).is_err());
        assert!(CurvatureBounds::new(1.0, 1.0, PI / 4.0 - 1e-12).is_ok());
    }

    #[test]
    fn s_kappa_examples() {
        assert_eq!(s_kappa(0.0, 0.7), 0.7);
        assert!((s_kappa(1.0, PI / 2.0) - 1.0).abs() < 1e-15);
        // mpmath: sinh(1)/2
        assert!((s_kappa(-4.0, 0.5) - 0.587_600_596_821_900_7).abs() < 1e-15);
    }

    #[test]
    fn s_kappa_is_continuous_at_zero_curvature() {
        for i in 0..=30 {
            let t = i as f64 * 0.1;
            assert!((s_kappa(1e-9, t) - t).abs() <= 1e-8);
            assert!((s_kappa(-1e-9, t) - t).abs() <= 1e-8);
        }
        assert_eq!(s_kappa(1.0, 0.0), 0.0);
        assert_eq!(s_kappa_prime(-3.0, 0.0), 1.0);
    }

    #[test]
    fn d_constant_examples() {
        assert!((d_constant(&b(0.0, 0.0, 1.0)) - 0.5).abs() < 1e-15);
        assert!((d_constant(&b(1.0, 1.0, PI / 16.0)) - (1.0 + SQRT_2)).abs() < 1e-14);
        // mpmath: coth(1)
        assert!((d_constant(&b(-1.0, -1.0, 0.5)) - 1.313_035_285_499_331_3).abs() < 1e-14);
    }

    #[test]
    fn c_constant_examples() {
        assert_eq!(c_constant(&b(0.3, 0.3, 1.0)), 1.0);
        assert!((c_constant(&b(-1.0, -1.0, 0.5)) - 1.313_035_285_499_331_3).abs() < 1e-14);
        assert!((c_constant(&b(-1e-12, 0.0, 1.0)) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn l_constant_examples() {
        assert!((l_constant(&b(0.0, 0.0, 1.0)) - 1.0 / (2.0 * SQRT_2)).abs() < 1e-15);
        // mpmath, 30 digits: 2/(π√(1 - cos⁴(π/8))) and 1/√(cosh⁴(1) - 1)
        assert!((l_constant(&b(1.0, 1.0, PI / 16.0)) - 1.221_906_323_423_655_2).abs() < 1e-14);
        assert!((l_constant(&b(-1.0, -1.0, 0.5)) - 0.462_763_297_031_075_57).abs() < 1e-14);
    }

    #[test]
    fn tau_examples() {
        let flat = b(0.0, 0.0, 1.0);
        assert!((tau_constant(0.1, 0.5, &flat).unwrap() - 1.5625e-4).abs() < 1e-18);
        assert!(matches!(tau_constant(0.1, 0.0, &flat), Err(GeoError::OutOfRange(_))));
        assert!(tau_constant(1.0, 0.5, &flat).is_err());
        let t1 = tau_constant(0.1, 0.5, &flat).unwrap();
        let t2 = tau_constant(0.2, 0.5, &flat).unwrap();
        assert!((t2 / t1 - 4.0).abs() < 1e-14);
    }

    #[test]
    fn beta_floor_examples() {
        assert!((beta_floor(&b(0.0, 0.0, 1.0), 0.5).unwrap() - 0.25).abs() < 1e-15);
        // mpmath: 0.25/(coth(1)cosh(1) + 1)
        let v = beta_floor(&b(-1.0, -1.0, 0.5), 0.25).unwrap();
        assert!((v - 0.082_614_058_934_208_70).abs() < 1e-15);
        assert!(beta_floor(&b(0.0, 0.0, 1.0), 1.0 - 1e-12).unwrap() < 1e-12);
        assert!(matches!(beta_floor(&b(0.0, 0.0, 1.0), 1.0), Err(GeoError::SigmaNotBelowRho { .. })));
    }

    #[test]
    fn law_of_cosines_examples() {
        assert!((model_law_of_cosines(0.0, 3.0, 4.0, PI / 2.0).unwrap() - 5.0).abs() < 1e-14);
        let c = model_law_of_cosines(1.0, PI / 2.0, PI / 2.0, PI / 2.0).unwrap();
        assert!((c - PI / 2.0).abs() < 1e-14);
        // κ → 0 recovers the planar law
        let planar = model_law_of_cosines(0.0, 0.3, 0.4, 1.1).unwrap();
        assert!((model_law_of_cosines(1e-10, 0.3, 0.4, 1.1).unwrap() - planar).abs() < 1e-10);
        assert!((model_law_of_cosines(-1e-10, 0.3, 0.4, 1.1).unwrap() - planar).abs() < 1e-10);
    }

    #[test]
    fn provenance_threads_through() {
        let c = ConvexityConstants::new(0.1, 0.5, b(0.0, 0.0, 1.0), Provenance::Heuristic).unwrap();
        assert_eq!(c.provenance().label(), "heuristic — non-certified");
        assert!((c.tau() - 1.5625e-4).abs() < 1e-18);
    }
}
