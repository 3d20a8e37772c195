//! A-priori bounds on `d²(x_k, m)`: the strong-convexity recursion `b_k` and
//! the sublinear rates for harmonic steps.

use crate::constants::{c_constant, ConvexityConstants, Provenance};
use crate::error::{GeoError, Result};
use crate::geometry::Point;
use crate::measure::BallSpec;
use crate::solver::{IterateTrace, StepsizeSchedule};

/// `|α − 1|` below which the `α = 1` branch is used.
pub const ALPHA_ONE_TOL: f64 = 1e-12;
/// Relative tolerance for matching trace steps against series steps.
const STEP_MATCH_TOL: f64 = 1e-15;

/// A strong-convexity modulus together with where it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauEstimate {
    pub value: f64,
    pub provenance: Provenance,
}

impl TauEstimate {
    pub fn user_supplied(value: f64) -> Self {
        Self { value, provenance: Provenance::UserSupplied }
    }

    /// Same provenance, value multiplied by `factor`.
    pub fn scaled(self, factor: f64) -> Self {
        Self { value: self.value * factor, ..self }
    }
}

impl From<&ConvexityConstants> for TauEstimate {
    fn from(c: &ConvexityConstants) -> Self {
        Self { value: c.tau(), provenance: c.provenance() }
    }
}

/// `b_N = (ρ+σ)²`, `b_{k+1} = (1 − 2τt_k) b_k + C t_k²` for `k ≥ N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSeries {
    start: usize,
    b: Vec<f64>,
    tau: TauEstimate,
    c: f64,
    u0: f64,
    steps: Vec<f64>,
}

impl BoundSeries {
    /// The first index `N` with `2τ t_k < 1` for all `k ≥ N`.
    pub fn start(&self) -> usize {
        self.start
    }

    /// `b_N, b_{N+1}, …`
    pub fn values(&self) -> &[f64] {
        &self.b
    }

    /// `b_k`, when `N ≤ k ≤ K`.
    pub fn at(&self, k: usize) -> Option<f64> {
        k.checked_sub(self.start).and_then(|i| self.b.get(i).copied())
    }

    pub fn tau(&self) -> TauEstimate {
        self.tau
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// The step sizes `t_0, …, t_{K−1}` the series was built from.
    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    /// `b_k` from the closed product form, evaluated in the log domain:
    /// `b_{k+1} = (ρ+σ)² ∏_{i=N}^{k}(1 − 2τt_i) + C Σ_{j=N}^{k} t_j² ∏_{i=j+1}^{k}(1 − 2τt_i)`.
    pub fn product_form(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.b.len());
        if self.b.is_empty() {
            return out;
        }
        out.push(self.u0);
        let ln_u0 = self.u0.ln();
        // s = Σ_{i≤k} ln(1 − 2τt_i), kept with a compensation term
        let (mut s, mut s_comp) = (0.0f64, 0.0f64);
        // m = log Σ_{j≤k} t_j² e^{−S_j}
        let mut m = f64::NEG_INFINITY;
        for &t in &self.steps[self.start..] {
            let term = (-2.0 * self.tau.value * t).ln_1p();
            let y = term - s_comp;
            let next = s + y;
            s_comp = (next - s) - y;
            s = next;
            let x = 2.0 * t.ln() - s;
            m = if m == f64::NEG_INFINITY {
                x
            } else if x > m {
                x + (m - x).exp().ln_1p()
            } else {
                m + (x - m).exp().ln_1p()
            };
            out.push((s + ln_u0).exp() + self.c * (s + m).exp());
        }
        out
    }

    /// Largest `|recursion − product form| / recursion` over the series.
    pub fn max_relative_disagreement(&self) -> f64 {
        self.b
            .iter()
            .zip(self.product_form())
            .map(|(r, p)| (r - p).abs() / r.abs().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }
}

/// The series for the nominal schedule values `t_0, …, t_{k_max−1}`.
pub fn bound_sequence(
    tau: TauEstimate,
    ball: &BallSpec,
    sigma: f64,
    schedule: &StepsizeSchedule,
    k_max: usize,
) -> Result<BoundSeries> {
    let steps = (0..k_max)
        .map(|k| {
            schedule
                .nominal(k)
                .ok_or_else(|| GeoError::InvalidConfig("schedule depends on r_x; use realized steps".into()))
        })
        .collect::<Result<Vec<f64>>>()?;
    bound_sequence_from_steps(tau, ball, sigma, steps)
}

/// The series for realized (possibly clamped) steps, so `N` reflects what the
/// iteration actually did.
pub fn bound_sequence_from_steps(tau: TauEstimate, ball: &BallSpec, sigma: f64, steps: Vec<f64>) -> Result<BoundSeries> {
    if !(tau.value > 0.0 && tau.value.is_finite()) {
        return Err(GeoError::TauNonpositive(tau.value));
    }
    if !(sigma >= 0.0 && sigma < ball.rho()) {
        return Err(GeoError::SigmaNotBelowRho { sigma, rho: ball.rho() });
    }
    let c = c_constant(ball.bounds());
    let u0 = (ball.rho() + sigma).powi(2);
    let start = steps.iter().rposition(|&t| 2.0 * tau.value * t >= 1.0).map_or(0, |i| i + 1);
    let mut b = Vec::with_capacity(steps.len() + 1 - start.min(steps.len()));
    if start <= steps.len() {
        b.push(u0);
        let mut cur = u0;
        for &t in &steps[start..] {
            cur = (1.0 - 2.0 * tau.value * t) * cur + c * t * t;
            b.push(cur);
        }
    }
    Ok(BoundSeries { start, b, tau, c, u0, steps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateBranch {
    AlphaBelowOne,
    AlphaOne,
    AlphaAboveOne,
}

impl RateBranch {
    pub fn label(self) -> &'static str {
        match self {
            RateBranch::AlphaBelowOne => "alpha < 1",
            RateBranch::AlphaOne => "alpha = 1",
            RateBranch::AlphaAboveOne => "alpha > 1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBound {
    pub value: f64,
    pub branch: RateBranch,
}

/// Bound on `u_{k+1}` for `u_{k+1} ≤ (1 − α/(k+1)) u_k + ζ/(k+1)²`.
pub fn rate_bound(alpha: f64, zeta: f64, u0: f64, k: usize) -> Result<RateBound> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(GeoError::OutOfRange(format!("alpha must be positive, got {alpha}")));
    }
    if !(zeta > 0.0 && zeta.is_finite()) {
        return Err(GeoError::OutOfRange(format!("zeta must be positive, got {zeta}")));
    }
    if !(u0 >= 0.0 && u0.is_finite()) {
        return Err(GeoError::OutOfRange(format!("u0 must be nonnegative, got {u0}")));
    }
    let k1 = (k + 1) as f64;
    let k2 = (k + 2) as f64;
    Ok(if (alpha - 1.0).abs() <= ALPHA_ONE_TOL {
        RateBound { value: zeta * (1.0 + k1.ln()) / k1, branch: RateBranch::AlphaOne }
    } else if alpha < 1.0 {
        let value = (u0 + 2f64.powf(alpha) * zeta * (2.0 - alpha) / (1.0 - alpha)) / k2.powf(alpha);
        RateBound { value, branch: RateBranch::AlphaBelowOne }
    } else {
        let a1 = alpha - 1.0;
        let value = (zeta + (a1 * u0 - zeta) / k2.powf(a1)) / (a1 * k2);
        RateBound { value, branch: RateBranch::AlphaAboveOne }
    })
}

/// Bound on `d²(x_{k+1}, m)` for `t_k = r/(k+1)`: [`rate_bound`] with
/// `α = 2τr`, `ζ = r² C`, `u_0 = (ρ+σ)²`.
pub fn median_rate_bound(tau: f64, r: f64, ball: &BallSpec, sigma: f64, k: usize) -> Result<RateBound> {
    if !(tau > 0.0) {
        return Err(GeoError::TauNonpositive(tau));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(GeoError::OutOfRange(format!("r must be positive, got {r}")));
    }
    let c = c_constant(ball.bounds());
    rate_bound(2.0 * tau * r, r * r * c, (ball.rho() + sigma).powi(2), k)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominationReport {
    pub provenance: Provenance,
    pub start: usize,
    /// `b_k − d²(x_k, m_ref)` for `k = N, N+1, …`.
    pub margins: Vec<f64>,
    /// Indices `k` with a negative margin.
    pub violations: Vec<usize>,
}

impl DominationReport {
    pub fn label(&self) -> &'static str {
        self.provenance.label()
    }

    pub fn min_margin(&self) -> Option<f64> {
        self.margins.iter().copied().reduce(f64::min)
    }
}

/// Compares `d²(x_k, m_ref)` against `b_k` along a trace.
pub fn bound_domination_report(series: &BoundSeries, trace: &IterateTrace, m_ref: &Point) -> Result<DominationReport> {
    if !trace.complete {
        return Err(GeoError::InvalidConfig("domination needs the full trace".into()));
    }
    let realized = trace.steps();
    for (k, (a, b)) in realized.iter().zip(series.steps()).enumerate() {
        if (a - b).abs() > STEP_MATCH_TOL * a.abs().max(b.abs()) {
            return Err(GeoError::ScheduleMismatch(k));
        }
    }
    if let Some(r) = trace.records.first() {
        if r.x.manifold() != m_ref.manifold() {
            return Err(GeoError::MismatchedManifolds);
        }
    }
    let mut margins = Vec::new();
    let mut violations = Vec::new();
    for rec in trace.records.iter().skip(series.start()) {
        let Some(b) = series.at(rec.k) else {
            break;
        };
        let d = rec.x.dist(m_ref);
        let margin = b - d * d;
        if margin < 0.0 {
            violations.push(rec.k);
        }
        margins.push(margin);
    }
    Ok(DominationReport { provenance: series.tau().provenance, start: series.start(), margins, violations })
}
