use crate::error::{GeoError, Result};
use crate::geometry::{Family, Point};
use crate::measure::DiscreteMeasure;
use crate::objective::DEFAULT_ATOM_TOL;

/// Iteration stops once a step moves less than this.
const STEP_TOL: f64 = 1e-15;
const MAX_RESTARTS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct WeiszfeldResult {
    pub point: Point,
    pub iterations: usize,
    /// Times the iterate landed on a non-optimal atom and was nudged off it.
    pub stuck_on_atom: usize,
}

/// `x ← Σ (w_i/d_i) p_i / Σ (w_i/d_i)` in Euclidean space.
///
/// Landing on an atom `p_j` stops the iteration if `p_j` is a median
/// (`|Σ_{i≠j} w_i (p_i − p_j)/d_i| ≤ w_j`); otherwise the event is counted and
/// the iterate restarts from `p_j + 10·atom_tol·e_1`.
pub fn weiszfeld_euclidean(measure: &DiscreteMeasure, x0: &Point, iters: usize) -> Result<WeiszfeldResult> {
    let m = *measure.ball().manifold();
    if m.family() != Family::Euclidean {
        return Err(GeoError::NonEuclidean);
    }
    if x0.manifold() != &m {
        return Err(GeoError::MismatchedManifolds);
    }
    let n = m.dimension();
    let atoms = measure.atoms();
    let mut x: Vec<f64> = x0.coords().to_vec();
    let mut stuck = 0;
    let mut it = 0;
    while it < iters {
        it += 1;
        let mut num = vec![0.0; n];
        let mut den = 0.0;
        let mut at: Option<usize> = None;
        for (j, a) in atoms.iter().enumerate() {
            let p = a.point.coords();
            let d = x.iter().zip(p).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt();
            if d <= DEFAULT_ATOM_TOL {
                at = Some(j);
                continue;
            }
            let s = a.weight / d;
            num.iter_mut().zip(p).for_each(|(ni, pi)| *ni += s * pi);
            den += s;
        }
        if let Some(j) = at {
            let p = atoms[j].point.coords();
            // R = Σ_{i≠j} w_i (p_i − p_j)/d_i = num − den·p_j
            let r = num.iter().zip(p).map(|(ni, pi)| (ni - den * pi).powi(2)).sum::<f64>().sqrt();
            if r <= atoms[j].weight {
                x = p.to_vec();
                break;
            }
            stuck += 1;
            if stuck > MAX_RESTARTS {
                break;
            }
            x = p.to_vec();
            x[0] += 10.0 * DEFAULT_ATOM_TOL;
            continue;
        }
        let next: Vec<f64> = num.iter().map(|v| v / den).collect();
        let moved = next.iter().zip(&x).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt();
        x = next;
        if moved < STEP_TOL {
            break;
        }
    }
    Ok(WeiszfeldResult { point: m.point(&x)?, iterations: it, stuck_on_atom: stuck })
}
