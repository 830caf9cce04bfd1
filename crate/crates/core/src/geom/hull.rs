use super::point::{cross2, Point};
use super::GeomError;

fn check_2d(points: &[Point]) -> Result<(), GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    for p in points {
        if p.dim() != 2 {
            return Err(GeomError::DimensionMismatch { expected: 2, got: p.dim() });
        }
        if !p.is_finite() {
            return Err(GeomError::NonFinite);
        }
    }
    Ok(())
}

/// Indices of the extreme points of `points` in counterclockwise order
/// (monotone chain). Collinear boundary points are dropped: every returned
/// point is a strict corner up to `eps_geom` scaled by the set diameter.
pub fn convex_hull_2d_indices(points: &[Point], eps_geom: f64) -> Result<Vec<usize>, GeomError> {
    check_2d(points)?;
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
            .then(a.cmp(&b))
    });
    order.dedup_by(|&mut a, &mut b| points[a] == points[b]);

    if order.len() == 1 {
        return Ok(order);
    }
    let diam_x = points[*order.last().unwrap()][0] - points[order[0]][0];
    let diam = points
        .iter()
        .map(|p| p.dist(&points[order[0]]))
        .fold(diam_x.abs(), f64::max);
    let area_eps = eps_geom * diam * diam.max(1.0);

    let turn = |o: usize, a: usize, b: usize| -> f64 {
        let u = &points[a] - &points[o];
        let v = &points[b] - &points[o];
        cross2(&u, &v)
    };

    let build = |iter: &mut dyn Iterator<Item = usize>| -> Vec<usize> {
        let mut chain: Vec<usize> = Vec::new();
        for i in iter {
            while chain.len() >= 2
                && turn(chain[chain.len() - 2], chain[chain.len() - 1], i) <= area_eps
            {
                chain.pop();
            }
            chain.push(i);
        }
        chain
    };

    let mut lower = build(&mut order.iter().copied());
    let mut upper = build(&mut order.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.append(&mut upper);
    if lower.is_empty() {
        // All points collinear: return the two endpoints (or one if all equal).
        let a = order[0];
        let b = *order.last().unwrap();
        if a == b {
            return Ok(vec![a]);
        }
        return Ok(vec![a, b]);
    }
    Ok(lower)
}

/// Counterclockwise extreme points of a 2D point set.
pub fn convex_hull_2d(points: &[Point], eps_geom: f64) -> Result<Vec<Point>, GeomError> {
    Ok(convex_hull_2d_indices(points, eps_geom)?
        .into_iter()
        .map(|i| points[i].clone())
        .collect())
}
