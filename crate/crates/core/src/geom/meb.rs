use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::linalg::circumcenter;
use super::point::{Ball, Point};
use super::GeomError;

// Relative slack for the in-ball test inside the recursion.
const WELZL_EPS: f64 = 1e-10;

fn fnv1a_points(points: &[Point]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for p in points {
        for c in p.coords() {
            for byte in c.to_bits().to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
    }
    h
}

fn in_ball(b: &Ball, p: &Point) -> bool {
    b.radius >= 0.0 && b.center.dist(p) <= b.radius + WELZL_EPS * (1.0 + b.radius)
}

/// Smallest ball with all of `boundary` on its surface; falls back to the
/// brute-force minimum over sub-circumballs when the set is degenerate.
fn ball_from_boundary(boundary: &[Point], dim: usize) -> Ball {
    match boundary.len() {
        0 => Ball { center: Point::zero(dim), radius: -1.0 },
        1 => Ball { center: boundary[0].clone(), radius: 0.0 },
        _ => {
            if let Ok(c) = circumcenter(boundary, 1e-12) {
                let r = boundary.iter().map(|p| c.dist(p)).fold(0.0, f64::max);
                return Ball { center: c, radius: r };
            }
            // Degenerate boundary set: take the best enclosing ball spanned
            // by any affinely independent subset.
            let mut best: Option<Ball> = None;
            for i in 0..boundary.len() {
                for j in i + 1..boundary.len() {
                    let mid = (&boundary[i] + &boundary[j]).scale(0.5);
                    let r = boundary.iter().map(|p| mid.dist(p)).fold(0.0, f64::max);
                    if best.as_ref().map_or(true, |b| r < b.radius) {
                        best = Some(Ball { center: mid, radius: r });
                    }
                }
            }
            best.unwrap_or(Ball { center: boundary[0].clone(), radius: 0.0 })
        }
    }
}

fn welzl(points: &[Point], boundary: &mut Vec<Point>, dim: usize) -> Ball {
    if points.is_empty() || boundary.len() == dim + 1 {
        return ball_from_boundary(boundary, dim);
    }
    let p = &points[0];
    let b = welzl(&points[1..], boundary, dim);
    if in_ball(&b, p) {
        return b;
    }
    boundary.push(p.clone());
    let b = welzl(&points[1..], boundary, dim);
    boundary.pop();
    b
}

/// Minimum enclosing ball of a nonempty point set (Welzl's algorithm with a
/// shuffle seeded from the input, so the output is deterministic per input).
pub fn min_enclosing_ball(points: &[Point], eps_geom: f64) -> Result<Ball, GeomError> {
    let first = points.first().ok_or(GeomError::EmptyInput)?;
    let dim = first.dim();
    if points.iter().any(|p| p.dim() != dim) {
        return Err(GeomError::MixedDimensions);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    let mut shuffled: Vec<Point> = points.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(fnv1a_points(points));
    shuffled.shuffle(&mut rng);

    let mut ball = welzl(&shuffled, &mut Vec::new(), dim);
    // Inflate so containment holds exactly, never by more than the slack band.
    let worst = points.iter().map(|p| ball.center.dist(p)).fold(0.0, f64::max);
    if worst > ball.radius {
        debug_assert!(worst - ball.radius <= eps_geom.max(WELZL_EPS * (1.0 + worst) * 4.0));
        ball.radius = worst;
    }
    Ok(ball)
}
