//! Deterministic low-discrepancy sampling (Halton sequences).
//!
//! Every experiment samples through these helpers so that a fixed seed gives
//! bit-identical runs. The seed selects a contiguous window of the Halton
//! stream.

use crate::geom::{Point, PolytopeBody, Tolerance};

/// Radical-inverse of `index` in the given base.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let b = base as f64;
    while index > 0 {
        f /= b;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

fn start_index(seed: u64) -> u64 {
    1 + seed.wrapping_mul(1_000_003) % 1_000_000_007
}

/// `count` Halton points in the axis-aligned box `[lo, hi]`.
pub fn sample_box(lo: &Point, hi: &Point, count: usize, seed: u64) -> Vec<Point> {
    let dim = lo.dim();
    debug_assert_eq!(hi.dim(), dim);
    let bases: &[u64] = &[2, 3, 5];
    let s = start_index(seed);
    (0..count as u64)
        .map(|i| {
            let coords: Vec<f64> = (0..dim)
                .map(|d| {
                    let u = halton(s + i, bases[d]);
                    lo[d] + (hi[d] - lo[d]) * u
                })
                .collect();
            Point::from_slice(&coords)
        })
        .collect()
}

/// `count` Halton points of the closed disk (area-uniform mapping).
pub fn sample_ball_2d(center: &Point, radius: f64, count: usize, seed: u64) -> Vec<Point> {
    let s = start_index(seed);
    (0..count as u64)
        .map(|i| {
            let r = radius * halton(s + i, 2).sqrt();
            let a = 2.0 * std::f64::consts::PI * halton(s + i, 3);
            Point::xy(center[0] + r * a.cos(), center[1] + r * a.sin())
        })
        .collect()
}

/// `count` Halton points inside a bounded body, by rejection from its
/// bounding box. The stream is deterministic for a given `(body, seed)`.
pub fn sample_body(
    body: &PolytopeBody,
    count: usize,
    seed: u64,
    tol: &Tolerance,
) -> Vec<Point> {
    let Ok((lo, hi)) = body.bbox(tol) else { return Vec::new() };
    let dim = body.dim();
    let bases: &[u64] = &[2, 3, 5];
    let s = start_index(seed);
    let mut out = Vec::with_capacity(count);
    let mut i: u64 = 0;
    let cap = (count as u64).saturating_mul(1000).max(1_000_000);
    while out.len() < count && i < cap {
        let coords: Vec<f64> = (0..dim)
            .map(|d| {
                let u = halton(s + i, bases[d]);
                lo[d] + (hi[d] - lo[d]) * u
            })
            .collect();
        let p = Point::from_slice(&coords);
        if body.contains(&p, tol) {
            out.push(p);
        }
        i += 1;
    }
    out
}

/// `count` unit directions equally spaced over the full circle.
pub fn unit_dirs_2d(count: usize) -> Vec<Point> {
    (0..count)
        .map(|i| {
            let a = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
            Point::xy(a.cos(), a.sin())
        })
        .collect()
}

/// `count` unit directions spread over the full sphere (Fibonacci spiral).
pub fn unit_dirs_3d(count: usize) -> Vec<Point> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            Point::xyz(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}
