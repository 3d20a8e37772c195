use crate::error::{GeoError, Result};
use crate::geometry::{foot_parameter, Coords, Point};
use crate::measure::{condition_star, DiscreteMeasure};

/// Cumulative weight within this of ½ counts as a tie.
const HALF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CollinearMedian {
    pub point: Point,
    /// Set when a whole segment of the geodesic minimizes `f`.
    pub non_unique: bool,
    /// The minimizing segment `[left, right]` (equal endpoints when unique).
    pub segment: (Point, Point),
}

/// Weighted 1D median along the geodesic carrying every atom.
///
/// The geodesic is oriented from the lower-indexed to the higher-indexed atom
/// of the farthest pair; the leftmost minimizer is returned.
pub fn collinear_median_oracle(measure: &DiscreteMeasure) -> Result<CollinearMedian> {
    if condition_star(measure) {
        return Err(GeoError::NotCollinear);
    }
    let atoms = measure.atoms();
    let Some((i, j)) = measure.farthest_pair() else {
        let p = atoms[0].point.clone();
        return Ok(CollinearMedian { point: p.clone(), non_unique: false, segment: (p.clone(), p) });
    };
    let origin = &atoms[i].point;
    let d = origin.dist(&atoms[j].point);
    let u: Coords = origin.log_raw(&atoms[j].point, d).iter().map(|c| c / d).collect();
    let mut s: Vec<(f64, f64)> = atoms.iter().map(|a| (foot_parameter(origin, &u, &a.point), a.weight)).collect();
    s.sort_by(|a, b| a.0.total_cmp(&b.0));
    let at = |t: f64| {
        let step: Coords = u.iter().map(|c| c * t).collect();
        origin.shoot(&step)
    };
    let mut cum = 0.0;
    for (k, &(t, w)) in s.iter().enumerate() {
        cum += w;
        if (cum - 0.5).abs() <= HALF_TOL {
            let right = s[k + 1..].iter().map(|e| e.0).find(|&r| r > t).unwrap_or(t);
            return Ok(CollinearMedian { point: at(t), non_unique: right > t, segment: (at(t), at(right)) });
        }
        if cum > 0.5 {
            let p = at(t);
            return Ok(CollinearMedian { point: p.clone(), non_unique: false, segment: (p.clone(), p) });
        }
    }
    unreachable!("weights sum to one")
}
