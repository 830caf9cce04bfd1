use nalgebra::DMatrix;

use super::point::Point;
use super::GeomError;

fn common_dim(points: &[Point]) -> Result<usize, GeomError> {
    let first = points.first().ok_or(GeomError::EmptyInput)?;
    let n = first.dim();
    if points.iter().any(|p| p.dim() != n) {
        return Err(GeomError::MixedDimensions);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    Ok(n)
}

/// Largest pairwise distance of a point set (0 for a singleton).
pub fn diameter(points: &[Point]) -> f64 {
    let mut d = 0.0f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            d = d.max(points[i].dist(&points[j]));
        }
    }
    d
}

/// Dimension of the affine hull of `points`, from singular values of the
/// translated set thresholded at `eps_geom` relative to the set's diameter.
pub fn affine_rank(points: &[Point], eps_geom: f64) -> Result<usize, GeomError> {
    let n = common_dim(points)?;
    if points.len() == 1 {
        return Ok(0);
    }
    let diam = diameter(points);
    if diam <= 0.0 {
        return Ok(0);
    }
    let base = &points[0];
    let rows = points.len() - 1;
    let mat = DMatrix::from_fn(rows, n, |i, j| points[i + 1][j] - base[j]);
    let svals = mat.singular_values();
    Ok(svals.iter().filter(|&&s| s > eps_geom * diam).count())
}

/// Orthonormal basis of the linear span of the *translated* point set
/// (directions of its affine hull). Returns `rank` vectors of dimension `n`.
pub fn orthonormal_span(points: &[Point], eps_geom: f64) -> Result<Vec<Point>, GeomError> {
    let n = common_dim(points)?;
    if points.len() == 1 {
        return Ok(Vec::new());
    }
    let diam = diameter(points);
    if diam <= 0.0 {
        return Ok(Vec::new());
    }
    let base = &points[0];
    let rows = points.len() - 1;
    let mat = DMatrix::from_fn(rows, n, |i, j| points[i + 1][j] - base[j]);
    let svd = mat.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let mut basis = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s > eps_geom * diam {
            let row = vt.row(i);
            basis.push(Point::from_slice(row.transpose().as_slice()));
        }
    }
    Ok(basis)
}

/// Circumcenter of an affinely independent simplex, computed within its
/// affine hull: the unique point of that hull equidistant from all vertices.
pub fn circumcenter(simplex: &[Point], eps_geom: f64) -> Result<Point, GeomError> {
    common_dim(simplex)?;
    if simplex.len() < 2 {
        return Ok(simplex.first().cloned().ok_or(GeomError::EmptyInput)?);
    }
    let base = &simplex[0];
    let k = simplex.len() - 1;
    let edges: Vec<Point> = simplex[1..].iter().map(|p| p - base).collect();

    // Solve 2 E E^T t = diag(|e_i|^2) for barycentric-like weights t.
    let gram = DMatrix::from_fn(k, k, |i, j| 2.0 * edges[i].dot(&edges[j]));
    let rhs = nalgebra::DVector::from_fn(k, |i, _| edges[i].norm_sq());
    let scale = edges.iter().map(|e| e.norm_sq()).fold(0.0f64, f64::max);
    if scale <= 0.0 {
        return Err(GeomError::DegenerateSimplex);
    }
    let lu = gram.full_piv_lu();
    // Relative pivot check: a tiny pivot means affine dependence.
    let t = lu.solve(&rhs).ok_or(GeomError::DegenerateSimplex)?;
    let mut center = base.clone();
    for (i, e) in edges.iter().enumerate() {
        center = center.axpy(t[i], e);
    }
    // Reject solutions that fail to be equidistant (degenerate within eps).
    let d0 = center.dist(base);
    let tol = eps_geom.max(1e-12) * (1.0 + scale.sqrt()) * 1e3;
    for p in &simplex[1..] {
        if (center.dist(p) - d0).abs() > tol.max(1e-7 * (1.0 + d0)) {
            return Err(GeomError::DegenerateSimplex);
        }
    }
    Ok(center)
}
