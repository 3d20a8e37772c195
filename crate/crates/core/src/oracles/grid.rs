use crate::error::{GeoError, Result};
use crate::geometry::{from_normal_coordinates, tangent_basis, Family, Point};
use crate::measure::DiscreteMeasure;
use crate::objective::f_unchecked;

pub const DEFAULT_RESOLUTION: usize = 40;
pub const DEFAULT_REFINE_ROUNDS: usize = 3;
const MAX_DIMENSION: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct GridOracleResult {
    pub m_ref: Point,
    pub f_ref: f64,
    /// Covering radius of the final grid, in the metric of the manifold.
    pub spacing: f64,
    /// Incumbent objective value after each round.
    pub round_f: Vec<f64>,
}

/// Brute-force minimization of `f` on nested grids in normal coordinates
/// around the ball center. Each refinement round shrinks the box by 4 around
/// the incumbent.
pub fn grid_oracle(measure: &DiscreteMeasure, resolution: usize, refine_rounds: usize) -> Result<GridOracleResult> {
    let ball = measure.ball();
    let m = ball.manifold();
    let n = m.dimension();
    if n > MAX_DIMENSION {
        return Err(GeoError::DimensionTooLarge { dimension: n, max: MAX_DIMENSION });
    }
    if resolution < 2 {
        return Err(GeoError::OutOfRange("grid resolution must be at least 2".into()));
    }
    let a = ball.center();
    let basis = tangent_basis(a);
    let rho = ball.rho();
    // In normal coordinates of radius ρ, curvature κ < 0 stretches transverse
    // distances by at most sinh(ρ√−κ)/(ρ√−κ); κ ≥ 0 never stretches them.
    let stretch = match m.family() {
        Family::Hyperbolic => {
            let x = rho * (-m.curvature()).sqrt();
            x.sinh() / x
        }
        _ => 1.0,
    };

    let mut best_c = vec![0.0; n];
    let mut best_f = f64::INFINITY;
    let mut half = rho;
    let mut step = 0.0;
    let mut round_f = Vec::with_capacity(refine_rounds + 1);
    let mut idx = vec![0usize; n];
    for round in 0..=refine_rounds {
        if round > 0 {
            half /= 4.0;
        }
        step = 2.0 * half / (resolution - 1) as f64;
        let center = best_c.clone();
        let mut round_best: Option<(Vec<f64>, f64)> = None;
        idx.iter_mut().for_each(|i| *i = 0);
        'grid: loop {
            let c: Vec<f64> = idx.iter().zip(&center).map(|(&i, c0)| c0 - half + step * i as f64).collect();
            if c.iter().map(|v| v * v).sum::<f64>().sqrt() <= rho {
                let p = from_normal_coordinates(a, &basis, &c);
                let f = f_unchecked(&p, measure);
                if round_best.as_ref().is_none_or(|(_, bf)| f < *bf) {
                    round_best = Some((c, f));
                }
            }
            // odometer over the grid, last axis fastest
            for axis in (0..n).rev() {
                idx[axis] += 1;
                if idx[axis] < resolution {
                    continue 'grid;
                }
                idx[axis] = 0;
            }
            break;
        }
        if let Some((c, f)) = round_best {
            if f < best_f {
                best_f = f;
                best_c = c;
            }
        }
        round_f.push(best_f);
    }
    let m_ref = from_normal_coordinates(a, &basis, &best_c);
    let spacing = stretch * step * (n as f64).sqrt() / 2.0;
    Ok(GridOracleResult { m_ref, f_ref: best_f, spacing, round_f })
}
