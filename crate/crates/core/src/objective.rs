//! The objective `f(x) = Σ w_i d(x, p_i)`, its vector field `H`, and the
//! median characterization.

use crate::error::{GeoError, Result};
use crate::geometry::{tangent_inner, Coords, Family, Point, Tangent};
use crate::measure::DiscreteMeasure;

/// Distance below which `x` is treated as sitting on an atom.
pub const DEFAULT_ATOM_TOL: f64 = 1e-9;
/// Slack allowed by [`location_check`].
pub const LOCATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SubgradientVector {
    /// `H(x)`, the sum of unit vectors pointing away from the atoms not at `x`.
    pub h: Tangent,
    pub norm: f64,
    /// `μ{x}` up to the snap radius.
    pub atom_weight_at_x: f64,
}

/// Objective value and subgradient computed in one pass over the atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub f: f64,
    pub subgradient: SubgradientVector,
}

fn check_domain(x: &Point, measure: &DiscreteMeasure) -> Result<()> {
    let ball = measure.ball();
    if x.manifold() != ball.manifold() {
        return Err(GeoError::MismatchedManifolds);
    }
    if !ball.contains(x) {
        return Err(GeoError::PointOutsideBall { distance: x.dist(ball.center()), rho: ball.rho() });
    }
    Ok(())
}

pub fn f_value(x: &Point, measure: &DiscreteMeasure) -> Result<f64> {
    check_domain(x, measure)?;
    Ok(f_unchecked(x, measure))
}

pub(crate) fn f_unchecked(x: &Point, measure: &DiscreteMeasure) -> f64 {
    measure.atoms().iter().map(|a| a.weight * x.dist(&a.point)).sum()
}

/// [`f_value`] with Neumaier-compensated summation.
pub fn f_value_compensated(x: &Point, measure: &DiscreteMeasure) -> Result<f64> {
    check_domain(x, measure)?;
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for a in measure.atoms() {
        let term = a.weight * x.dist(&a.point);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    Ok(sum + comp)
}

pub fn h_field(x: &Point, measure: &DiscreteMeasure, atom_tol: f64) -> Result<SubgradientVector> {
    Ok(evaluate(x, measure, atom_tol)?.subgradient)
}

pub fn evaluate(x: &Point, measure: &DiscreteMeasure, atom_tol: f64) -> Result<Evaluation> {
    check_domain(x, measure)?;
    Ok(evaluate_unchecked(x, measure, atom_tol))
}

pub(crate) fn evaluate_unchecked(x: &Point, measure: &DiscreteMeasure, atom_tol: f64) -> Evaluation {
    let len = x.coords().len();
    let mut h: Coords = smallvec::smallvec![0.0; len];
    let mut f = 0.0;
    let mut on_atom = 0.0;
    let family = x.manifold().family();
    // ⟨x, x⟩ in the ambient inner product: R² on the sphere, −R² on the hyperboloid
    let xx = tangent_inner(family, x.coords(), x.coords());
    for a in measure.atoms() {
        let d = x.dist(&a.point);
        f += a.weight * d;
        if d <= atom_tol {
            on_atom += a.weight;
            continue;
        }
        let s = a.weight / d;
        let (p, xc) = (a.point.coords(), x.coords());
        match family {
            Family::Euclidean => h.iter_mut().zip(p.iter().zip(xc)).for_each(|(hi, (pi, xi))| *hi -= s * (pi - xi)),
            Family::Sphere | Family::Hyperbolic => {
                // log_x(p)/d is the normalized tangent part of p − x
                let ip = |a: &[f64], b: &[f64]| tangent_inner(family, a, b);
                let c = (ip(xc, p) - xx) / xx;
                let tangent = |j: usize| p[j] - xc[j] - c * xc[j];
                let sign = |j: usize| if family == Family::Hyperbolic && j == 0 { -1.0 } else { 1.0 };
                let norm = (0..len).map(|j| sign(j) * tangent(j).powi(2)).sum::<f64>().max(0.0).sqrt();
                if norm > 0.0 {
                    let g = a.weight / norm;
                    h.iter_mut().enumerate().for_each(|(j, hj)| *hj -= g * tangent(j));
                }
            }
        }
    }
    let h = Tangent::projected(x, h);
    let norm = h.norm();
    Evaluation { f, subgradient: SubgradientVector { h, norm, atom_weight_at_x: on_atom } }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// One-sided derivative of `f` along the unit direction `u`: `⟨u, H⟩ ± μ{x}`.
pub fn directional_derivative(u: &Tangent, measure: &DiscreteMeasure, side: Side) -> Result<f64> {
    let n = u.norm();
    if (n - 1.0).abs() > 1e-10 {
        return Err(GeoError::NotUnitDirection(n));
    }
    let sub = h_field(u.base(), measure, DEFAULT_ATOM_TOL)?;
    let slope = u.inner(&sub.h);
    Ok(match side {
        Side::Plus => slope + sub.atom_weight_at_x,
        Side::Minus => slope - sub.atom_weight_at_x,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MedianCertificate {
    pub is_median: bool,
    pub h_norm: f64,
    pub atom_weight: f64,
    pub tol: f64,
}

/// Tests `|H(x)| ≤ μ{x} + tol` and reports both sides of the inequality.
pub fn is_median(x: &Point, measure: &DiscreteMeasure, tol: f64) -> Result<MedianCertificate> {
    let sub = h_field(x, measure, DEFAULT_ATOM_TOL)?;
    Ok(MedianCertificate {
        is_median: sub.norm <= sub.atom_weight_at_x + tol,
        h_norm: sub.norm,
        atom_weight: sub.atom_weight_at_x,
        tol,
    })
}

/// Necessary condition for `x` to lie in the convex hull of the support:
/// `d(x, a) ≤ σ`. Euclidean inputs get an exact hull-membership test.
pub fn location_check(x: &Point, measure: &DiscreteMeasure) -> bool {
    let ball = measure.ball();
    if x.manifold() != ball.manifold() {
        return false;
    }
    if x.dist(ball.center()) > measure.sigma() + LOCATION_TOL {
        return false;
    }
    if x.manifold().family() != Family::Euclidean {
        return true;
    }
    let pts: Vec<&[f64]> = measure.atoms().iter().map(|a| a.point.coords()).collect();
    in_convex_hull(&pts, x.coords(), LOCATION_TOL)
}

/// Whether `x` is a convex combination of `points`, via a phase-one simplex on
/// `Σ λ_i p_i = x, Σ λ_i = 1, λ ≥ 0`.
pub fn in_convex_hull(points: &[&[f64]], x: &[f64], tol: f64) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = x.len();
    let m = points.len();
    let rows = dim + 1;
    let width = m + rows + 1;
    let rhs = width - 1;
    let mut t = vec![vec![0.0; width]; rows + 1];
    for i in 0..rows {
        let b = if i < dim { x[i] } else { 1.0 };
        let sign = if b < 0.0 { -1.0 } else { 1.0 };
        for (j, p) in points.iter().enumerate() {
            t[i][j] = sign * if i < dim { p[i] } else { 1.0 };
        }
        t[i][m + i] = 1.0;
        t[i][rhs] = sign * b;
    }
    for j in (0..m).chain([rhs]) {
        t[rows][j] = -(0..rows).map(|i| t[i][j]).sum::<f64>();
    }
    let mut basis: Vec<usize> = (m..m + rows).collect();
    const PIVOT_EPS: f64 = 1e-12;
    for _ in 0..(50 * width) {
        // Bland's rule: lowest-index improving column, lowest-index basis on ties.
        let Some(col) = (0..m + rows).find(|&j| t[rows][j] < -PIVOT_EPS) else {
            break;
        };
        let mut pivot: Option<(usize, f64)> = None;
        for i in 0..rows {
            if t[i][col] > PIVOT_EPS {
                let ratio = t[i][rhs] / t[i][col];
                let better = match pivot {
                    None => true,
                    Some((r, best)) => ratio < best - PIVOT_EPS || (ratio <= best + PIVOT_EPS && basis[i] < basis[r]),
                };
                if better {
                    pivot = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = pivot else {
            break;
        };
        let p = t[row][col];
        t[row].iter_mut().for_each(|v| *v /= p);
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row {
                let factor = r[col];
                if factor != 0.0 {
                    r.iter_mut().zip(&pivot_row).for_each(|(v, pv)| *v -= factor * pv);
                }
            }
        }
        basis[row] = col;
    }
    let scale = 1.0 + x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    -t[rows][rhs] <= tol * scale
}
