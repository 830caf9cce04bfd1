use nalgebra::{DMatrix, DVector};

use super::hull::convex_hull_2d;
use super::lp;
use super::point::{cross2, Ball, Membership, Point, Tolerance};
use super::GeomError;

/// The halfspace `normal · x <= offset`. Normals are unit length once a
/// halfspace has passed through [`Halfspace::normalized`].
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub normal: Point,
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: Point, offset: f64) -> Self {
        Halfspace { normal, offset }
    }

    pub fn normalized(&self) -> Option<Halfspace> {
        let n = self.normal.norm();
        if n <= 0.0 {
            return None;
        }
        Some(Halfspace { normal: self.normal.scale(1.0 / n), offset: self.offset / n })
    }

    /// Signed slack: positive inside, negative outside (unit normal assumed).
    pub fn slack(&self, x: &Point) -> f64 {
        self.offset - self.normal.dot(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Rep {
    /// Counterclockwise strictly convex vertex list (2D only).
    Polygon(Vec<Point>),
    /// Intersection of halfspaces with unit normals.
    HRep(Vec<Halfspace>),
}

/// A convex body: a 2D polygon or an H-polytope in dimension 2 or 3.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeBody {
    dim: usize,
    rep: Rep,
    bounded: bool,
}

/// Signed area of a polygon given by its vertex cycle.
pub fn polygon_area(verts: &[Point]) -> f64 {
    let mut a = 0.0;
    for i in 0..verts.len() {
        let p = &verts[i];
        let q = &verts[(i + 1) % verts.len()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    a / 2.0
}

impl PolytopeBody {
    /// Build a convex 2D polygon body. Vertices may arrive in either
    /// orientation; collinear runs are pruned at `eps_geom` resolution.
    pub fn polygon(verts: Vec<Point>, tol: &Tolerance) -> Result<Self, GeomError> {
        if verts.iter().any(|v| v.dim() != 2) {
            return Err(GeomError::DimensionMismatch {
                expected: 2,
                got: verts.iter().map(|v| v.dim()).find(|&d| d != 2).unwrap_or(2),
            });
        }
        if verts.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        if verts.len() < 3 {
            return Err(GeomError::InvalidPolygon("fewer than 3 vertices"));
        }
        let mut vs = verts;
        if polygon_area(&vs) < 0.0 {
            vs.reverse();
        }
        let scale = super::linalg::diameter(&vs).max(1e-300);
        let area_eps = tol.eps_geom * scale * scale;
        // Prune repeated and collinear vertices.
        let mut pruned: Vec<Point> = Vec::with_capacity(vs.len());
        for v in vs.iter() {
            if pruned.last().map_or(false, |p: &Point| p.dist(v) <= tol.eps_geom * scale) {
                continue;
            }
            pruned.push(v.clone());
        }
        while pruned.len() > 1
            && pruned[0].dist(pruned.last().unwrap()) <= tol.eps_geom * scale
        {
            pruned.pop();
        }
        let mut out: Vec<Point> = Vec::with_capacity(pruned.len());
        let m = pruned.len();
        for i in 0..m {
            let prev = &pruned[(i + m - 1) % m];
            let cur = &pruned[i];
            let next = &pruned[(i + 1) % m];
            let c = cross2(&(cur - prev), &(next - cur));
            if c > area_eps {
                out.push(cur.clone());
            } else if c < -area_eps {
                return Err(GeomError::InvalidPolygon("not convex"));
            }
            // collinear: drop the middle vertex
        }
        if out.len() < 3 {
            return Err(GeomError::InvalidPolygon("degenerate after pruning"));
        }
        Ok(PolytopeBody { dim: 2, rep: Rep::Polygon(out), bounded: true })
    }

    /// Build from halfspaces; boundedness is established by LP probes along
    /// the coordinate axes.
    pub fn from_halfspaces(dim: usize, hs: Vec<Halfspace>) -> Result<Self, GeomError> {
        if !(2..=3).contains(&dim) {
            return Err(GeomError::UnsupportedDimension(dim));
        }
        let mut norm = Vec::with_capacity(hs.len());
        for h in &hs {
            if h.normal.dim() != dim {
                return Err(GeomError::DimensionMismatch { expected: dim, got: h.normal.dim() });
            }
            norm.push(h.normalized().ok_or(GeomError::InvalidPolygon("zero normal"))?);
        }
        let bounded = hrep_bounded(dim, &norm);
        Ok(PolytopeBody { dim, rep: Rep::HRep(norm), bounded })
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn box2d(x0: f64, x1: f64, y0: f64, y1: f64, tol: &Tolerance) -> Result<Self, GeomError> {
        Self::polygon(
            vec![
                Point::xy(x0, y0),
                Point::xy(x1, y0),
                Point::xy(x1, y1),
                Point::xy(x0, y1),
            ],
            tol,
        )
    }

    /// Axis-aligned box in 3D.
    pub fn box3d(lo: [f64; 3], hi: [f64; 3]) -> Result<Self, GeomError> {
        let mut hs = Vec::with_capacity(6);
        for a in 0..3 {
            let mut n = [0.0; 3];
            n[a] = 1.0;
            hs.push(Halfspace::new(Point::from_slice(&n), hi[a]));
            n[a] = -1.0;
            hs.push(Halfspace::new(Point::from_slice(&n), -lo[a]));
        }
        Self::from_halfspaces(3, hs)
    }

    /// Regular `n`-gon of circumradius `r` centered at the origin, first
    /// vertex at angle zero. A fine one approximates the disk.
    pub fn regular_polygon(n: usize, r: f64, tol: &Tolerance) -> Result<Self, GeomError> {
        if n < 3 {
            return Err(GeomError::InvalidPolygon("fewer than 3 vertices"));
        }
        let verts = (0..n)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                Point::xy(r * a.cos(), r * a.sin())
            })
            .collect();
        Self::polygon(verts, tol)
    }

    /// Regular tetrahedron with the given edge length, centered at the origin.
    pub fn regular_tetrahedron(edge: f64) -> Result<Self, GeomError> {
        let s = edge / (2.0 * 2f64.sqrt());
        let verts = [
            Point::xyz(s, s, s),
            Point::xyz(s, -s, -s),
            Point::xyz(-s, s, -s),
            Point::xyz(-s, -s, s),
        ];
        // Facet opposite vertex v has outward normal -v.
        let mut hs = Vec::with_capacity(4);
        for v in &verts {
            let n = (-v).normalized().unwrap();
            // offset: plane through the other three vertices
            let other = verts.iter().find(|u| !u.approx_eq(v, 1e-12)).unwrap();
            hs.push(Halfspace::new(n.clone(), n.dot(other)));
        }
        Self::from_halfspaces(3, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    /// The vertex cycle when this body is a polygon.
    pub fn polygon_vertices(&self) -> Option<&[Point]> {
        match &self.rep {
            Rep::Polygon(v) => Some(v),
            Rep::HRep(_) => None,
        }
    }

    /// Facet halfspaces with unit outward normals.
    pub fn halfspaces(&self) -> Vec<Halfspace> {
        match &self.rep {
            Rep::HRep(hs) => hs.clone(),
            Rep::Polygon(verts) => {
                let m = verts.len();
                (0..m)
                    .map(|i| {
                        let p = &verts[i];
                        let q = &verts[(i + 1) % m];
                        let e = q - p;
                        let n = Point::xy(e[1], -e[0]).normalized().expect("nonzero edge");
                        let off = n.dot(p);
                        Halfspace::new(n, off)
                    })
                    .collect()
            }
        }
    }

    /// Vertices of the body: the polygon cycle in 2D, or the enumerated
    /// (unordered) vertex set of a bounded 3D H-polytope.
    pub fn vertices(&self, tol: &Tolerance) -> Result<Vec<Point>, GeomError> {
        match &self.rep {
            Rep::Polygon(v) => Ok(v.clone()),
            Rep::HRep(hs) => {
                if !self.bounded {
                    return Err(GeomError::Unbounded);
                }
                match self.dim {
                    2 => {
                        let vs = enumerate_vertices(2, hs);
                        convex_hull_2d(&vs, tol.eps_geom)
                    }
                    3 => Ok(enumerate_vertices(3, hs)),
                    d => Err(GeomError::UnsupportedDimension(d)),
                }
            }
        }
    }

    /// Three-valued membership with the `eps_geom` band.
    pub fn membership(&self, x: &Point, tol: &Tolerance) -> Membership {
        let margin = self
            .halfspaces()
            .iter()
            .map(|h| h.slack(x))
            .fold(f64::INFINITY, f64::min);
        Membership::from_margin(margin, tol.eps_geom)
    }

    /// Closed containment (boundary counts).
    pub fn contains(&self, x: &Point, tol: &Tolerance) -> bool {
        self.membership(x, tol) != Membership::Outside
    }

    /// Axis-aligned bounding box of a bounded body.
    pub fn bbox(&self, tol: &Tolerance) -> Result<(Point, Point), GeomError> {
        let vs = self.vertices(tol)?;
        if vs.is_empty() {
            return Err(GeomError::EmptyInterior);
        }
        let mut lo = vs[0].clone();
        let mut hi = vs[0].clone();
        for v in &vs {
            let lo_c: Vec<f64> =
                lo.coords().iter().zip(v.coords()).map(|(a, b)| a.min(*b)).collect();
            let hi_c: Vec<f64> =
                hi.coords().iter().zip(v.coords()).map(|(a, b)| a.max(*b)).collect();
            lo = Point::from_slice(&lo_c);
            hi = Point::from_slice(&hi_c);
        }
        Ok((lo, hi))
    }
}

fn hrep_bounded(dim: usize, hs: &[Halfspace]) -> bool {
    let m = hs.len();
    let a: Vec<Vec<f64>> = hs.iter().map(|h| h.normal.coords().to_vec()).collect();
    let b: Vec<f64> = hs.iter().map(|h| h.offset).collect();
    let _ = m;
    for axis in 0..dim {
        for sign in [1.0, -1.0] {
            let mut c = vec![0.0; dim];
            c[axis] = sign;
            match lp::maximize(&c, &a, &b) {
                Ok(_) => {}
                Err(lp::LpError::Unbounded) => return false,
                Err(lp::LpError::Infeasible) => return true, // empty is bounded
                Err(lp::LpError::Numerical) => return false,
            }
        }
    }
    true
}

fn enumerate_vertices(dim: usize, hs: &[Halfspace]) -> Vec<Point> {
    let m = hs.len();
    let feas_eps = 1e-7;
    let mut out: Vec<Point> = Vec::new();
    let mut push_if_vertex = |p: Point| {
        if hs.iter().all(|h| h.slack(&p) >= -feas_eps)
            && !out.iter().any(|q| q.dist(&p) <= 1e-8)
        {
            out.push(p);
        }
    };
    let combos: Vec<Vec<usize>> = if dim == 2 {
        let mut v = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                v.push(vec![i, j]);
            }
        }
        v
    } else {
        let mut v = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    v.push(vec![i, j, k]);
                }
            }
        }
        v
    };
    for combo in combos {
        let a = DMatrix::from_fn(dim, dim, |r, c| hs[combo[r]].normal[c]);
        let b = DVector::from_fn(dim, |r, _| hs[combo[r]].offset);
        let lu = a.full_piv_lu();
        if let Some(x) = lu.solve(&b) {
            let p = Point::from_slice(x.as_slice());
            if p.is_finite() && p.norm() < 1e12 {
                push_if_vertex(p);
            }
        }
    }
    out
}

/// Largest inscribed ball of a bounded body with nonempty interior: solved as
/// a linear program over (center, radius). Polygons are converted to
/// halfspaces first so there is a single code path.
pub fn chebyshev_ball(body: &PolytopeBody, tol: &Tolerance) -> Result<Ball, GeomError> {
    if !body.is_bounded() {
        return Err(GeomError::Unbounded);
    }
    let hs = body.halfspaces();
    chebyshev_ball_hrep(body.dim(), &hs, tol)
}

/// Chebyshev ball of an explicit halfspace list (unit normals not required).
pub fn chebyshev_ball_hrep(
    dim: usize,
    halfspaces: &[Halfspace],
    tol: &Tolerance,
) -> Result<Ball, GeomError> {
    let mut a = Vec::with_capacity(halfspaces.len() + 1);
    let mut b = Vec::with_capacity(halfspaces.len() + 1);
    for h in halfspaces {
        let hn = h.normalized().ok_or(GeomError::InvalidPolygon("zero normal"))?;
        let mut row = hn.normal.coords().to_vec();
        row.push(1.0);
        a.push(row);
        b.push(hn.offset);
    }
    // r >= 0
    let mut row = vec![0.0; dim];
    row.push(-1.0);
    a.push(row);
    b.push(0.0);

    let mut c = vec![0.0; dim];
    c.push(1.0);
    let sol = lp::maximize(&c, &a, &b).map_err(|e| match e {
        lp::LpError::Unbounded => GeomError::Unbounded,
        lp::LpError::Infeasible => GeomError::EmptyInterior,
        other => GeomError::Lp(other),
    })?;
    let r = sol.objective;
    if r < tol.eps_geom {
        return Err(GeomError::EmptyInterior);
    }
    Ok(Ball::new(Point::from_slice(&sol.x[..dim]), r))
}

/// Inradius of a 2D halfspace intersection, `None` when the region has empty
/// interior (or is empty outright).
pub fn polytope_slice_inradius(halfspaces: &[Halfspace], tol: &Tolerance) -> Option<f64> {
    match chebyshev_ball_hrep(2, halfspaces, tol) {
        Ok(b) => Some(b.radius),
        Err(_) => None,
    }
}

/// Clip a convex polygon by one halfplane (Sutherland-Hodgman step). Returns
/// the possibly empty clipped vertex cycle.
pub fn clip_polygon(verts: &[Point], hs: &Halfspace, eps: f64) -> Vec<Point> {
    let hn = match hs.normalized() {
        Some(h) => h,
        None => return verts.to_vec(),
    };
    let n = verts.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let cur = &verts[i];
        let nxt = &verts[(i + 1) % n];
        let sc = hn.slack(cur);
        let sn = hn.slack(nxt);
        if sc >= -eps {
            out.push(cur.clone());
        }
        if (sc > eps && sn < -eps) || (sc < -eps && sn > eps) {
            let t = sc / (sc - sn);
            out.push(cur.axpy(t, &(nxt - cur)));
        }
    }
    // Remove duplicates introduced by clipping through vertices.
    let mut clean: Vec<Point> = Vec::with_capacity(out.len());
    for v in out {
        if clean.last().map_or(true, |p: &Point| p.dist(&v) > eps) {
            clean.push(v);
        }
    }
    if clean.len() > 1 && clean[0].dist(clean.last().unwrap()) <= eps {
        clean.pop();
    }
    clean
}

/// Parameter interval of `{origin + t dir}` inside an H-polytope. `None` if
/// the line misses the body.
pub fn chord_interval(
    halfspaces: &[Halfspace],
    origin: &Point,
    dir: &Point,
    eps: f64,
) -> Option<(f64, f64)> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for h in halfspaces {
        let denom = h.normal.dot(dir);
        let rhs = h.offset - h.normal.dot(origin);
        if denom.abs() <= eps {
            if rhs < -eps {
                return None;
            }
        } else if denom > 0.0 {
            hi = hi.min(rhs / denom);
        } else {
            lo = lo.max(rhs / denom);
        }
    }
    if lo > hi {
        None
    } else {
        Some((lo, hi))
    }
}

/// Euclidean distance from `x` to the polyhedron `{y : n_i . y <= b_i}` in
/// dimension 2 or 3, by enumerating candidate active sets. Returns `None`
/// when no feasible projection is found (empty polyhedron).
pub fn distance_to_polyhedron(halfspaces: &[Halfspace], x: &Point, eps: f64) -> Option<f64> {
    let dim = x.dim();
    let hs: Vec<Halfspace> = halfspaces.iter().filter_map(|h| h.normalized()).collect();
    let feasible = |p: &Point| hs.iter().all(|h| h.slack(p) >= -eps.max(1e-9));
    if feasible(x) {
        return Some(0.0);
    }
    let mut best: Option<f64> = None;
    let mut consider = |p: Point| {
        if feasible(&p) {
            let d = x.dist(&p);
            if best.map_or(true, |b| d < b) {
                best = Some(d);
            }
        }
    };
    // Single facets.
    for h in &hs {
        let s = h.slack(x);
        if s < 0.0 {
            consider(x.axpy(s, &h.normal));
        }
    }
    // Pairs: a vertex in 2D, a projection onto the intersection line in 3D.
    let m = hs.len();
    for i in 0..m {
        for j in i + 1..m {
            let rows = [&hs[i], &hs[j]];
            let a = DMatrix::from_fn(2, dim, |r, c| rows[r].normal[c]);
            let b = DVector::from_fn(2, |r, _| rows[r].offset - rows[r].normal.dot(x));
            let aat = &a * a.transpose();
            if let Some(lambda) = aat.full_piv_lu().solve(&b) {
                let mut p = x.clone();
                p = p.axpy(lambda[0], &rows[0].normal);
                p = p.axpy(lambda[1], &rows[1].normal);
                if p.is_finite() {
                    consider(p);
                }
            }
        }
    }
    if dim == 3 {
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let rows = [&hs[i], &hs[j], &hs[k]];
                    let a = DMatrix::from_fn(3, 3, |r, c| rows[r].normal[c]);
                    let b = DVector::from_fn(3, |r, _| rows[r].offset);
                    if let Some(v) = a.full_piv_lu().solve(&b) {
                        let p = Point::from_slice(v.as_slice());
                        if p.is_finite() && p.norm() < 1e12 {
                            consider(p);
                        }
                    }
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn unit_square_chebyshev() {
        let sq = PolytopeBody::box2d(-1.0, 1.0, -1.0, 1.0, &tol()).unwrap();
        let b = chebyshev_ball(&sq, &tol()).unwrap();
        assert!(b.center.approx_eq(&Point::xy(0.0, 0.0), 1e-9));
        assert_relative_eq!(b.radius, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn equilateral_triangle_inradius() {
        let h = 3f64.sqrt() / 2.0;
        let t = PolytopeBody::polygon(
            vec![Point::xy(0.0, 0.0), Point::xy(1.0, 0.0), Point::xy(0.5, h)],
            &tol(),
        )
        .unwrap();
        let b = chebyshev_ball(&t, &tol()).unwrap();
        // Inradius formula a / (2 sqrt(3)).
        let expect = 1.0 / (2.0 * 3f64.sqrt());
        assert_relative_eq!(b.radius, expect, epsilon = 1e-9);
        assert_relative_eq!(expect, 0.28868, epsilon = 1e-5);
    }

    #[test]
    fn degenerate_segment_errors() {
        // As halfspaces: x = 0 slab of zero width, 0 <= y <= 1.
        let hs = vec![
            Halfspace::new(Point::xy(1.0, 0.0), 0.0),
            Halfspace::new(Point::xy(-1.0, 0.0), 0.0),
            Halfspace::new(Point::xy(0.0, 1.0), 1.0),
            Halfspace::new(Point::xy(0.0, -1.0), 0.0),
        ];
        let seg = PolytopeBody::from_halfspaces(2, hs).unwrap();
        assert_eq!(chebyshev_ball(&seg, &tol()), Err(GeomError::EmptyInterior));
    }

    #[test]
    fn unbounded_body_errors() {
        let hs = vec![Halfspace::new(Point::xy(0.0, 1.0), 1.0)];
        let half = PolytopeBody::from_halfspaces(2, hs).unwrap();
        assert!(!half.is_bounded());
        assert_eq!(chebyshev_ball(&half, &tol()), Err(GeomError::Unbounded));
    }

    #[test]
    fn polygon_rejects_nonconvex() {
        let verts = vec![
            Point::xy(0.0, 0.0),
            Point::xy(2.0, 0.0),
            Point::xy(1.0, 0.2),
            Point::xy(1.0, 2.0),
        ];
        assert!(matches!(
            PolytopeBody::polygon(verts, &tol()),
            Err(GeomError::InvalidPolygon(_))
        ));
    }

    #[test]
    fn polygon_prunes_collinear() {
        let verts = vec![
            Point::xy(0.0, 0.0),
            Point::xy(1.0, 0.0),
            Point::xy(2.0, 0.0),
            Point::xy(2.0, 1.0),
            Point::xy(0.0, 1.0),
        ];
        let p = PolytopeBody::polygon(verts, &tol()).unwrap();
        assert_eq!(p.polygon_vertices().unwrap().len(), 4);
    }

    #[test]
    fn tetrahedron_vertices_and_inradius() {
        let t = PolytopeBody::regular_tetrahedron(1.0).unwrap();
        let vs = t.vertices(&tol()).unwrap();
        assert_eq!(vs.len(), 4);
        for i in 0..4 {
            for j in i + 1..4 {
                assert_relative_eq!(vs[i].dist(&vs[j]), 1.0, epsilon = 1e-9);
            }
        }
        let b = chebyshev_ball(&t, &tol()).unwrap();
        // Inradius of a regular tetrahedron: edge / (2 sqrt(6)).
        assert_relative_eq!(b.radius, 1.0 / (2.0 * 6f64.sqrt()), epsilon = 1e-9);
    }

    #[test]
    fn membership_banding() {
        let sq = PolytopeBody::box2d(0.0, 1.0, 0.0, 1.0, &tol()).unwrap();
        assert_eq!(sq.membership(&Point::xy(0.5, 0.5), &tol()), Membership::Inside);
        assert_eq!(sq.membership(&Point::xy(1.0, 0.5), &tol()), Membership::Boundary);
        assert_eq!(sq.membership(&Point::xy(1.5, 0.5), &tol()), Membership::Outside);
    }

    #[test]
    fn clip_square_by_diagonal() {
        let sq = PolytopeBody::box2d(0.0, 1.0, 0.0, 1.0, &tol()).unwrap();
        let verts = sq.polygon_vertices().unwrap().to_vec();
        let hs = Halfspace::new(Point::xy(1.0, 1.0), 1.0);
        let clipped = clip_polygon(&verts, &hs, 1e-12);
        let area = polygon_area(&clipped);
        assert_relative_eq!(area, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn chord_through_square() {
        let sq = PolytopeBody::box2d(-1.0, 1.0, -1.0, 1.0, &tol()).unwrap();
        let hs = sq.halfspaces();
        let (lo, hi) =
            chord_interval(&hs, &Point::xy(0.0, 0.5), &Point::xy(1.0, 0.0), 1e-12).unwrap();
        assert_relative_eq!(lo, -1.0, epsilon = 1e-12);
        assert_relative_eq!(hi, 1.0, epsilon = 1e-12);
        assert!(chord_interval(&hs, &Point::xy(0.0, 2.0), &Point::xy(1.0, 0.0), 1e-12).is_none());
    }

    #[test]
    fn distance_to_quadrant() {
        // Quadrant x >= 1, y >= 1 (as normals: -x <= -1, -y <= -1).
        let hs = vec![
            Halfspace::new(Point::xy(-1.0, 0.0), -1.0),
            Halfspace::new(Point::xy(0.0, -1.0), -1.0),
        ];
        let d = distance_to_polyhedron(&hs, &Point::xy(0.0, 0.0), 1e-9).unwrap();
        assert_relative_eq!(d, 2f64.sqrt(), epsilon = 1e-9);
        let d2 = distance_to_polyhedron(&hs, &Point::xy(0.5, 3.0), 1e-9).unwrap();
        assert_relative_eq!(d2, 0.5, epsilon = 1e-9);
        let d3 = distance_to_polyhedron(&hs, &Point::xy(2.0, 2.0), 1e-9).unwrap();
        assert_eq!(d3, 0.0);
    }

    #[test]
    fn distance_to_tetra_cell_3d() {
        let t = PolytopeBody::regular_tetrahedron(1.0).unwrap();
        let hs = t.halfspaces();
        // Point outside along a vertex direction: distance to the tetra.
        let vs = t.vertices(&tol()).unwrap();
        let far = vs[0].scale(3.0);
        let d = distance_to_polyhedron(&hs, &far, 1e-9).unwrap();
        assert_relative_eq!(d, vs[0].norm() * 2.0, epsilon = 1e-8);
    }
}
