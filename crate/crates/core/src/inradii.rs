//! Intrinsic inradii of convex bodies.
//!
//! The upper intrinsic inradius `r^(k)` minimizes, over k-dimensional
//! subspaces L, the inradius of the orthogonal projection onto L; the lower
//! one `r_(k)` minimizes over L the best sectional inradius across parallel
//! slices. The infima run over Grassmannians, so both are computed by a
//! direction grid (720 angles in 2D, ~1000 Fibonacci nodes in 3D) followed
//! by local refinement.

use crate::geom::{
    chebyshev_ball, chord_interval, convex_hull_2d, distance_to_polyhedron, perp2, Ball,
    GeomError, Halfspace, Point, PolytopeBody, Tolerance,
};
use crate::multiplank::{MultiPlank, MultiPlankError};
use crate::opt::{fibonacci_hemisphere, golden_section_max, golden_section_min, nelder_mead};

const ANGLE_GRID_2D: usize = 720;
const SPHERE_GRID_3D: usize = 1000;

/// A k-dimensional subspace by orthonormal basis, tagged with whether it came
/// from the coarse grid or from refinement.
#[derive(Debug, Clone)]
pub struct SubspaceSample {
    pub k: usize,
    pub basis: Vec<Point>,
    pub refined: bool,
}

/// Both intrinsic radii with their achieving subspaces, for reproducibility.
#[derive(Debug, Clone)]
pub struct IntrinsicRadii {
    pub upper: f64,
    pub lower: f64,
    pub upper_subspace: SubspaceSample,
    pub lower_subspace: SubspaceSample,
}

fn check_body(body: &PolytopeBody, k: usize) -> Result<(), GeomError> {
    if !body.is_bounded() {
        return Err(GeomError::Unbounded);
    }
    let n = body.dim();
    if k < 1 || k > n {
        return Err(GeomError::UnsupportedDimension(k));
    }
    Ok(())
}

/// Orthonormal completion: two vectors spanning the plane orthogonal to `w`.
fn plane_basis(w: &Point) -> (Point, Point) {
    let axis = if w[0].abs() <= w[1].abs() && w[0].abs() <= w[2].abs() {
        Point::xyz(1.0, 0.0, 0.0)
    } else if w[1].abs() <= w[2].abs() {
        Point::xyz(0.0, 1.0, 0.0)
    } else {
        Point::xyz(0.0, 0.0, 1.0)
    };
    let e1 = (&axis - &w.scale(axis.dot(w))).normalized().expect("independent axis");
    let e2 = Point::xyz(
        w[1] * e1[2] - w[2] * e1[1],
        w[2] * e1[0] - w[0] * e1[2],
        w[0] * e1[1] - w[1] * e1[0],
    );
    (e1, e2)
}

/// Inradius of the orthogonal projection of the body onto the subspace with
/// the given orthonormal basis, measured inside the subspace.
fn projection_inradius(
    verts: &[Point],
    basis: &[Point],
    tol: &Tolerance,
) -> Result<f64, GeomError> {
    match basis.len() {
        1 => {
            let u = &basis[0];
            let vals: Vec<f64> = verts.iter().map(|v| v.dot(u)).collect();
            let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            Ok(0.5 * (hi - lo))
        }
        2 => {
            let proj: Vec<Point> =
                verts.iter().map(|v| Point::xy(v.dot(&basis[0]), v.dot(&basis[1]))).collect();
            let hull = convex_hull_2d(&proj, tol.eps_geom)?;
            if hull.len() < 3 {
                return Ok(0.0);
            }
            let poly = PolytopeBody::polygon(hull, tol)?;
            Ok(chebyshev_ball(&poly, tol)?.radius)
        }
        _ => unreachable!("projection bases are 1- or 2-dimensional"),
    }
}

/// Best sectional inradius over slices parallel to the subspace, then
/// reported per subspace for the outer minimization.
fn slice_sup_inradius(
    body: &PolytopeBody,
    verts: &[Point],
    basis: &[Point],
    tol: &Tolerance,
) -> Result<f64, GeomError> {
    let n = body.dim();
    let hs = body.halfspaces();
    match (n, basis.len()) {
        (2, 1) => {
            let u = &basis[0];
            let w = perp2(u);
            let lo = verts.iter().map(|v| v.dot(&w)).fold(f64::INFINITY, f64::min);
            let hi = verts.iter().map(|v| v.dot(&w)).fold(f64::NEG_INFINITY, f64::max);
            let chord_half = |s: f64| -> f64 {
                match chord_interval(&hs, &w.scale(s), u, 1e-14) {
                    Some((a, b)) => 0.5 * (b - a).max(0.0),
                    None => 0.0,
                }
            };
            let (_, best) = golden_section_max(chord_half, lo, hi, 1e-10 * (1.0 + hi - lo));
            Ok(best)
        }
        (3, 1) => {
            let u = &basis[0];
            let (w1, w2) = plane_basis(u);
            let coords: Vec<(f64, f64)> =
                verts.iter().map(|v| (v.dot(&w1), v.dot(&w2))).collect();
            let chord_half = |s: &[f64]| -> f64 {
                let origin = w1.scale(s[0]).axpy(s[1], &w2);
                match chord_interval(&hs, &origin, u, 1e-14) {
                    Some((a, b)) => 0.5 * (b - a).max(0.0),
                    None => 0.0,
                }
            };
            let c0 = coords.iter().map(|c| c.0).sum::<f64>() / coords.len() as f64;
            let c1 = coords.iter().map(|c| c.1).sum::<f64>() / coords.len() as f64;
            let extent = coords
                .iter()
                .map(|c| (c.0 - c0).abs().max((c.1 - c1).abs()))
                .fold(0.0, f64::max);
            // Chord length is concave across offsets, so one descent suffices.
            let (_, best) = nelder_mead(
                |s| -chord_half(s),
                &[c0, c1],
                0.25 * extent.max(1e-6),
                1e-11,
                400,
            );
            Ok(-best)
        }
        (3, 2) => {
            let w = Point::xyz(
                basis[0][1] * basis[1][2] - basis[0][2] * basis[1][1],
                basis[0][2] * basis[1][0] - basis[0][0] * basis[1][2],
                basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0],
            );
            let lo = verts.iter().map(|v| v.dot(&w)).fold(f64::INFINITY, f64::min);
            let hi = verts.iter().map(|v| v.dot(&w)).fold(f64::NEG_INFINITY, f64::max);
            let slice_r = |s: f64| -> f64 {
                let origin = w.scale(s);
                let mut restricted: Vec<Halfspace> = Vec::with_capacity(hs.len());
                for h in &hs {
                    let plane_normal =
                        Point::xy(h.normal.dot(&basis[0]), h.normal.dot(&basis[1]));
                    let rhs = h.offset - h.normal.dot(&origin);
                    if plane_normal.norm() <= 1e-12 {
                        if rhs < -1e-12 {
                            return 0.0; // halfspace excludes the whole plane
                        }
                        continue;
                    }
                    restricted.push(Halfspace::new(plane_normal, rhs));
                }
                crate::geom::polytope_slice_inradius(&restricted, tol).unwrap_or(0.0)
            };
            let (_, best) = golden_section_max(slice_r, lo, hi, 1e-10 * (1.0 + hi - lo));
            Ok(best)
        }
        _ => unreachable!("slice bases cover k < n only"),
    }
}

enum Objective {
    Projection,
    Slice,
}

/// Shared grid + refinement search over proper subspaces (k < n).
fn subspace_search(
    body: &PolytopeBody,
    k: usize,
    which: Objective,
    tol: &Tolerance,
) -> Result<(f64, SubspaceSample), GeomError> {
    let n = body.dim();
    let verts = body.vertices(tol)?;
    let eval = |basis: &[Point]| -> Result<f64, GeomError> {
        match which {
            Objective::Projection => projection_inradius(&verts, basis, tol),
            Objective::Slice => slice_sup_inradius(body, &verts, basis, tol),
        }
    };

    if n == 2 && k == 1 {
        let basis_of = |theta: f64| vec![Point::xy(theta.cos(), theta.sin())];
        let mut best = (f64::INFINITY, 0.0f64);
        for i in 0..ANGLE_GRID_2D {
            let theta = std::f64::consts::PI * i as f64 / ANGLE_GRID_2D as f64;
            let v = eval(&basis_of(theta))?;
            if v < best.0 {
                best = (v, theta);
            }
        }
        let step = std::f64::consts::PI / ANGLE_GRID_2D as f64;
        let (theta, value) = golden_section_min(
            |t| eval(&basis_of(t)).unwrap_or(f64::INFINITY),
            best.1 - step,
            best.1 + step,
            1e-12,
        );
        let value = value.min(best.0);
        return Ok((
            value,
            SubspaceSample { k, basis: basis_of(theta), refined: true },
        ));
    }

    // 3D: parametrize the line direction (k = 1) or the plane by its normal
    // (k = 2) over the hemisphere, then refine in a tangent chart.
    let dir_to_basis = |d: &Point| -> Vec<Point> {
        if k == 1 {
            vec![d.clone()]
        } else {
            let (e1, e2) = plane_basis(d);
            vec![e1, e2]
        }
    };
    let mut best_dir = Point::xyz(0.0, 0.0, 1.0);
    let mut best_val = f64::INFINITY;
    for d in fibonacci_hemisphere(SPHERE_GRID_3D) {
        let dir = Point::xyz(d[0], d[1], d[2]);
        let v = eval(&dir_to_basis(&dir))?;
        if v < best_val {
            best_val = v;
            best_dir = dir;
        }
    }
    let (t1, t2) = plane_basis(&best_dir);
    let chart = |ab: &[f64]| -> f64 {
        let d = best_dir.axpy(ab[0], &t1).axpy(ab[1], &t2);
        let d = d.normalized().expect("chart stays near the sphere");
        eval(&dir_to_basis(&d)).unwrap_or(f64::INFINITY)
    };
    let spacing = (4.0 / SPHERE_GRID_3D as f64).sqrt();
    let (ab, refined_val) = nelder_mead(chart, &[0.0, 0.0], spacing, 1e-11, 400);
    let (value, dir) = if refined_val < best_val {
        let d = best_dir.axpy(ab[0], &t1).axpy(ab[1], &t2).normalized().unwrap();
        (refined_val, d)
    } else {
        (best_val, best_dir)
    };
    Ok((value, SubspaceSample { k, basis: dir_to_basis(&dir), refined: true }))
}

fn identity_basis(n: usize) -> Vec<Point> {
    (0..n)
        .map(|i| {
            let mut c = vec![0.0; n];
            c[i] = 1.0;
            Point::from_slice(&c)
        })
        .collect()
}

/// `r^(k)`: infimum over k-subspaces of the projection inradius.
pub fn upper_intrinsic(body: &PolytopeBody, k: usize, tol: &Tolerance) -> Result<f64, GeomError> {
    upper_intrinsic_full(body, k, tol).map(|(v, _)| v)
}

/// `r^(k)` together with an orthonormal basis of the achieving subspace.
pub fn upper_intrinsic_with_subspace(
    body: &PolytopeBody,
    k: usize,
    tol: &Tolerance,
) -> Result<(f64, Vec<Point>), GeomError> {
    upper_intrinsic_full(body, k, tol).map(|(v, s)| (v, s.basis))
}

fn upper_intrinsic_full(
    body: &PolytopeBody,
    k: usize,
    tol: &Tolerance,
) -> Result<(f64, SubspaceSample), GeomError> {
    check_body(body, k)?;
    let n = body.dim();
    if k == n {
        let r = chebyshev_ball(body, tol)?.radius;
        return Ok((r, SubspaceSample { k, basis: identity_basis(n), refined: false }));
    }
    subspace_search(body, k, Objective::Projection, tol)
}

/// `r_(k)`: infimum over subspace directions of the best parallel-slice
/// inradius (equivalently the largest ball of any k-subspace that translates
/// into the body).
pub fn lower_intrinsic(body: &PolytopeBody, k: usize, tol: &Tolerance) -> Result<f64, GeomError> {
    lower_intrinsic_full(body, k, tol).map(|(v, _)| v)
}

fn lower_intrinsic_full(
    body: &PolytopeBody,
    k: usize,
    tol: &Tolerance,
) -> Result<(f64, SubspaceSample), GeomError> {
    check_body(body, k)?;
    let n = body.dim();
    if k == n {
        let r = chebyshev_ball(body, tol)?.radius;
        return Ok((r, SubspaceSample { k, basis: identity_basis(n), refined: false }));
    }
    subspace_search(body, k, Objective::Slice, tol)
}

/// Both radii at once, with achieving subspaces.
pub fn intrinsic_radii(
    body: &PolytopeBody,
    k: usize,
    tol: &Tolerance,
) -> Result<IntrinsicRadii, GeomError> {
    let (upper, upper_subspace) = upper_intrinsic_full(body, k, tol)?;
    let (lower, lower_subspace) = lower_intrinsic_full(body, k, tol)?;
    Ok(IntrinsicRadii { upper, lower, upper_subspace, lower_subspace })
}

/// Clearance of a candidate center inside a centered multi-plank: the
/// distance to the nearest complement cell (cells are explicit halfspace
/// intersections, so the distance is exact in 2D/3D).
fn clearance(plank: &MultiPlank, cells: &[Vec<Halfspace>], c: &Point) -> f64 {
    let _ = plank;
    cells
        .iter()
        .map(|hs| distance_to_polyhedron(hs, c, 1e-9).unwrap_or(f64::INFINITY))
        .fold(f64::INFINITY, f64::min)
}

/// Largest inscribed ball of a centered multi-plank, found by multi-start
/// local search over candidate centers. The reported radius sits within
/// `1e-3` of `r(V)`.
pub fn inscribed_ball(plank: &MultiPlank, tol: &Tolerance) -> Result<Ball, MultiPlankError> {
    let n = plank.dim();
    if !(2..=3).contains(&n) {
        return Err(MultiPlankError::Geom(GeomError::UnsupportedDimension(n)));
    }
    if plank.translation().norm() > tol.eps_geom {
        return Err(MultiPlankError::NotCentered(plank.translation().norm()));
    }
    let m = plank.generating_set().len();
    let cells: Vec<Vec<Halfspace>> =
        (0..m).map(|j| plank.complement_cell_halfspaces(j)).collect();
    let r = plank.inradius();
    let points = plank.generating_set().points();

    let mut seeds: Vec<Point> = vec![Point::zero(n)];
    for p in points {
        seeds.push(p.scale(0.5));
    }
    for i in 0..m {
        for j in i + 1..m {
            seeds.push((&points[i] + &points[j]).scale(0.5));
        }
    }

    let mut best_center = Point::zero(n);
    let mut best = f64::NEG_INFINITY;
    for seed in seeds {
        let (x, neg) = nelder_mead(
            |c| -clearance(plank, &cells, &Point::from_slice(c)),
            seed.coords(),
            0.25 * r.max(1e-6),
            1e-10,
            400,
        );
        let v = -neg;
        if v > best {
            best = v;
            best_center = Point::from_slice(&x);
        }
    }
    Ok(Ball::new(best_center, best))
}

/// The inscribed-ball radius of a centered multi-plank.
pub fn multiplank_inscribed_radius(
    plank: &MultiPlank,
    tol: &Tolerance,
) -> Result<f64, MultiPlankError> {
    inscribed_ball(plank, tol).map(|b| b.radius)
}
