//! Seeded instance generators and the fixed benchmark configurations.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{tangent_basis, Coords, ManifoldSpec, Point};
use crate::measure::{sample_in_ball, Atom, BallSpec, DiscreteMeasure};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive weights drawn from `[0.1, 1)` and normalized.
pub fn random_weights<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..count).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|w| w / total).collect()
}

/// `count` atoms in `B(center, sigma_max)` with random weights.
pub fn random_measure(seed: u64, ball: BallSpec, sigma_max: f64, count: usize) -> DiscreteMeasure {
    let mut rng = rng(seed);
    let pts: Vec<Point> = (0..count).map(|_| sample_in_ball(&ball, sigma_max, &mut rng)).collect();
    let w = random_weights(count, &mut rng);
    let atoms = pts.into_iter().zip(w).map(|(p, w)| Atom::new(p, w)).collect();
    DiscreteMeasure::new(atoms, ball).expect("generated atoms lie inside the ball")
}

/// Euclidean plane, `ρ = 1`, 10 atoms with `σ ≤ 0.8`.
pub fn random_euclidean_instance(seed: u64) -> DiscreteMeasure {
    let m = ManifoldSpec::euclidean(2).expect("valid");
    random_measure(seed, BallSpec::new(m.origin(), 1.0).expect("valid"), 0.8, 10)
}

/// Unit sphere, `ρ = π/8.5`, 5 atoms with `σ ≤ 0.8ρ`.
pub fn random_sphere_instance(seed: u64) -> DiscreteMeasure {
    let m = ManifoldSpec::sphere(2, 1.0).expect("valid");
    let rho = PI / 8.5;
    random_measure(seed, BallSpec::new(m.origin(), rho).expect("valid"), 0.8 * rho, 5)
}

/// Hyperbolic plane of curvature −1, `ρ = 1`, 5 atoms with `σ ≤ 0.8`.
pub fn random_hyperbolic_instance(seed: u64) -> DiscreteMeasure {
    let m = ManifoldSpec::hyperbolic(2, -1.0).expect("valid");
    random_measure(seed, BallSpec::new(m.origin(), 1.0).expect("valid"), 0.8, 5)
}

fn euclidean(center: [f64; 2], rho: f64, pts: &[[f64; 2]], weights: &[f64]) -> DiscreteMeasure {
    let m = ManifoldSpec::euclidean(2).expect("valid");
    let ball = BallSpec::new(m.point(&center).expect("valid"), rho).expect("valid");
    let atoms = pts.iter().zip(weights).map(|(p, w)| Atom::new(m.point(p).expect("valid"), *w)).collect();
    DiscreteMeasure::new(atoms, ball).expect("valid")
}

/// Corners of the unit square, weight ¼ each, in `B((½,½), 1)`.
pub fn unit_square() -> DiscreteMeasure {
    euclidean([0.5, 0.5], 1.0, &[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]], &[0.25; 4])
}

/// Unit-side equilateral triangle centered at the origin, in `B(0, 1)`.
pub fn equilateral_triangle() -> DiscreteMeasure {
    let s3 = 3f64.sqrt();
    let pts = [[0.5, -s3 / 6.0], [-0.5, -s3 / 6.0], [0.0, s3 / 3.0]];
    euclidean([0.0, 0.0], 1.0, &pts, &[1.0 / 3.0; 3])
}

/// Vertices `(0,0), (3,0), (0,4)` with equal weights, in `B((1.5,2), 2.6)`.
pub fn right_triangle_345() -> DiscreteMeasure {
    euclidean([1.5, 2.0], 2.6, &[[0.0, 0.0], [3.0, 0.0], [0.0, 4.0]], &[1.0 / 3.0; 3])
}

/// Atom 0 at the origin carries `0.5 + 0.01·j`; three more atoms share the rest.
pub fn majority_family(j: usize) -> DiscreteMeasure {
    let w0 = 0.5 + 0.01 * j as f64;
    let r = (1.0 - w0) / 3.0;
    let pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [-0.7, -0.7]];
    euclidean([0.0, 0.0], 1.5, &pts, &[w0, r, r, 1.0 - w0 - 2.0 * r])
}

/// `count` atoms on one geodesic through a random point near the center,
/// at arclengths within `±0.4ρ` of that point.
pub fn collinear_instance(seed: u64, ball: BallSpec, count: usize) -> DiscreteMeasure {
    let mut rng = rng(seed);
    let rho = ball.rho();
    let base = sample_in_ball(&ball, 0.3 * rho, &mut rng);
    let basis = tangent_basis(&base);
    let theta: f64 = rng.random_range(0.0..2.0 * PI);
    let mut u: Coords = smallvec::smallvec![0.0; base.coords().len()];
    for (b, c) in basis.iter().zip([theta.cos(), theta.sin()]) {
        u.iter_mut().zip(b.vec()).for_each(|(ui, bi)| *ui += c * bi);
    }
    let pts: Vec<Point> = (0..count)
        .map(|_| {
            let s: f64 = rng.random_range(-0.4 * rho..0.4 * rho);
            let step: Coords = u.iter().map(|c| c * s).collect();
            base.shoot(&step)
        })
        .collect();
    let w = random_weights(count, &mut rng);
    let atoms = pts.into_iter().zip(w).map(|(p, w)| Atom::new(p, w)).collect();
    DiscreteMeasure::new(atoms, ball).expect("generated atoms lie inside the ball")
}

pub fn collinear_euclidean_instance(seed: u64, count: usize) -> DiscreteMeasure {
    let m = ManifoldSpec::euclidean(2).expect("valid");
    collinear_instance(seed, BallSpec::new(m.origin(), 1.0).expect("valid"), count)
}

pub fn collinear_sphere_instance(seed: u64, count: usize) -> DiscreteMeasure {
    let m = ManifoldSpec::sphere(2, 1.0).expect("valid");
    collinear_instance(seed, BallSpec::new(m.origin(), PI / 8.5).expect("valid"), count)
}

pub fn collinear_hyperbolic_instance(seed: u64, count: usize) -> DiscreteMeasure {
    let m = ManifoldSpec::hyperbolic(2, -1.0).expect("valid");
    collinear_instance(seed, BallSpec::new(m.origin(), 1.0).expect("valid"), count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::condition_star;

    #[test]
    fn generators_are_seeded() {
        assert_eq!(random_euclidean_instance(3), random_euclidean_instance(3));
        assert_ne!(random_euclidean_instance(3), random_euclidean_instance(4));
        let mu = random_euclidean_instance(3);
        assert_eq!(mu.len(), 10);
        assert!(mu.sigma() <= 0.8);
        assert!(random_sphere_instance(2).sigma() <= 0.8 * PI / 8.5);
    }

    #[test]
    fn collinear_generators_fail_condition_star() {
        for seed in 0..5 {
            assert!(!condition_star(&collinear_euclidean_instance(seed, 5)));
            assert!(!condition_star(&collinear_sphere_instance(seed, 5)));
            assert!(!condition_star(&collinear_hyperbolic_instance(seed, 5)));
        }
        assert!(condition_star(&random_hyperbolic_instance(0)));
    }

    #[test]
    fn majority_weights() {
        for j in 0..=5 {
            let mu = majority_family(j);
            assert!((mu.atoms()[0].weight - (0.5 + 0.01 * j as f64)).abs() < 1e-15);
        }
    }
}
