//! Shared generators for the property suites.

use multiplank::geom::{convex_hull_2d, Point, PolytopeBody, Tolerance};
use multiplank::multiplank::MultiPlank;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_point(r: &mut ChaCha8Rng, dim: usize, range: f64) -> Point {
    let coords: Vec<f64> = (0..dim).map(|_| r.gen_range(-range..range)).collect();
    Point::from_slice(&coords)
}

pub fn random_points(r: &mut ChaCha8Rng, n: usize, dim: usize, range: f64) -> Vec<Point> {
    (0..n).map(|_| random_point(r, dim, range)).collect()
}

/// Random convex polygon: the hull of a scatter, retried until it has at
/// least 4 vertices.
pub fn random_convex_polygon(r: &mut ChaCha8Rng, scatter: usize) -> PolytopeBody {
    let tol = Tolerance::default();
    loop {
        let pts = random_points(r, scatter, 2, 1.0);
        let hull = convex_hull_2d(&pts, tol.eps_geom).unwrap();
        if hull.len() >= 4 {
            if let Ok(body) = PolytopeBody::polygon(hull, &tol) {
                return body;
            }
        }
    }
}

/// Random centered multi-plank with `m` generators in the given dimension.
pub fn random_plank(r: &mut ChaCha8Rng, m: usize, dim: usize) -> MultiPlank {
    let tol = Tolerance::default();
    loop {
        let pts = random_points(r, m, dim, 1.0);
        if let Ok(p) = MultiPlank::from_points(&pts, false, &tol) {
            if p.inradius() > 0.2 {
                return p;
            }
        }
    }
}
