//! Multi-planks: a generating set `V` whose minimum enclosing ball is
//! centered at the origin defines the open region
//!
//! `P = { x | for every j there is j' with |x| < |x - v_j + v_j'| }`,
//!
//! equivalently the complement of the shifted farthest-point Voronoi cells
//! `v_j + A_{-V}^j`. Multi-planks are kept implicit (generating set plus
//! membership predicates); the region is unbounded and non-convex, and every
//! property we verify is a predicate.

use thiserror::Error;

use crate::geom::{
    affine_rank, chebyshev_ball, min_enclosing_ball, Ball, GeomError, Halfspace, Membership,
    Point, PolytopeBody, Tolerance,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MultiPlankError {
    #[error("a generating set needs at least 2 points")]
    TooFewPoints,
    #[error("generating set is not centered: |meb center| = {0}")]
    NotCentered(f64),
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero vector among the plank normals")]
    ZeroVector,
    #[error("too many planks: {count} (Bang set size 2^{count} exceeds the cap of 2^{max})")]
    TooManyPlanks { count: usize, max: usize },
    #[error("rank {k} outside 1..={n}")]
    InvalidRank { k: usize, n: usize },
    #[error("contact extraction failed: {0}")]
    ContactExtraction(&'static str),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A finite point set together with its cached minimum enclosing ball.
/// `r(V)`, the ball's radius, is the inradius of every multi-plank the set
/// generates.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingSet {
    points: Vec<Point>,
    meb: Ball,
}

impl GeneratingSet {
    pub fn new(points: Vec<Point>, tol: &Tolerance) -> Result<Self, MultiPlankError> {
        if points.len() < 2 {
            return Err(MultiPlankError::TooFewPoints);
        }
        let meb = min_enclosing_ball(&points, tol.eps_geom)?;
        Ok(GeneratingSet { points, meb })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn meb(&self) -> &Ball {
        &self.meb
    }

    /// `r(V)`: the radius of the minimum enclosing ball.
    pub fn radius(&self) -> f64 {
        self.meb.radius
    }

    pub fn is_centered(&self, tol: &Tolerance) -> bool {
        self.meb.center.norm() <= tol.eps_geom * (1.0 + self.meb.radius)
    }

    /// Dimension of the affine hull of the points.
    pub fn rank(&self, tol: &Tolerance) -> usize {
        affine_rank(&self.points, tol.eps_geom).expect("nonempty by construction")
    }

    /// All indices attaining the farthest distance from `x`, ties within
    /// `eps` returned together.
    pub fn anti_voronoi_indices(&self, x: &Point, eps: f64) -> Vec<usize> {
        anti_voronoi_indices(&self.points, x, eps)
    }
}

/// All indices `j` maximizing `|x - v_j|` within `eps`.
pub fn anti_voronoi_indices(points: &[Point], x: &Point, eps: f64) -> Vec<usize> {
    let dists: Vec<f64> = points.iter().map(|p| x.dist(p)).collect();
    let dmax = dists.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    dists
        .iter()
        .enumerate()
        .filter(|(_, &d)| d >= dmax - eps)
        .map(|(j, _)| j)
        .collect()
}

/// Translate `points` so their minimum enclosing ball is origin-centered.
/// Returns the centered set and the shift that was applied.
pub fn center(points: &[Point], tol: &Tolerance) -> Result<(GeneratingSet, Point), MultiPlankError> {
    if points.len() < 2 {
        return Err(MultiPlankError::TooFewPoints);
    }
    let meb = min_enclosing_ball(points, tol.eps_geom)?;
    let shift = -&meb.center;
    let centered: Vec<Point> = points.iter().map(|p| p + &shift).collect();
    Ok((GeneratingSet::new(centered, tol)?, shift))
}

/// A multi-plank: a centered generating set, a translation vector, and the
/// open/closed flag of the defining construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPlank {
    gen: GeneratingSet,
    translation: Point,
    closed: bool,
}

impl MultiPlank {
    pub fn open(gen: GeneratingSet, tol: &Tolerance) -> Result<Self, MultiPlankError> {
        Self::with_flag(gen, false, tol)
    }

    pub fn closed(gen: GeneratingSet, tol: &Tolerance) -> Result<Self, MultiPlankError> {
        Self::with_flag(gen, true, tol)
    }

    fn with_flag(gen: GeneratingSet, closed: bool, tol: &Tolerance) -> Result<Self, MultiPlankError> {
        if !gen.is_centered(tol) {
            return Err(MultiPlankError::NotCentered(gen.meb.center.norm()));
        }
        let translation = Point::zero(gen.dim());
        Ok(MultiPlank { gen, translation, closed })
    }

    /// Center arbitrary points and build the centered multi-plank they
    /// generate (translation zero).
    pub fn from_points(
        points: &[Point],
        closed: bool,
        tol: &Tolerance,
    ) -> Result<Self, MultiPlankError> {
        let (gen, _) = center(points, tol)?;
        Self::with_flag(gen, closed, tol)
    }

    pub fn translated(mut self, t: Point) -> Result<Self, MultiPlankError> {
        if t.dim() != self.dim() {
            return Err(MultiPlankError::DimensionMismatch {
                expected: self.dim(),
                got: t.dim(),
            });
        }
        self.translation = t;
        Ok(self)
    }

    pub fn generating_set(&self) -> &GeneratingSet {
        &self.gen
    }

    pub fn translation(&self) -> &Point {
        &self.translation
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn dim(&self) -> usize {
        self.gen.dim()
    }

    /// The inradius `r(V)`.
    pub fn inradius(&self) -> f64 {
        self.gen.radius()
    }

    pub fn rank(&self, tol: &Tolerance) -> usize {
        self.gen.rank(tol)
    }

    fn check_dim(&self, x: &Point) -> Result<(), MultiPlankError> {
        if x.dim() != self.dim() {
            return Err(MultiPlankError::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// Signed margin of the defining predicate at `x` (in length units):
    /// `min_j max_{j' != j} (|x~ - v_j + v_j'| - |x~|)` with
    /// `x~ = x - translation`. The `j' = j` term is identically zero and
    /// carries no information, so it is excluded to keep the margin signed.
    /// Positive means strictly inside the open multi-plank.
    pub fn membership_margin(&self, x: &Point) -> f64 {
        let xt = x - &self.translation;
        let xn = xt.norm();
        let pts = &self.gen.points;
        let mut best = f64::INFINITY;
        for (j, vj) in pts.iter().enumerate() {
            let base = &xt - vj;
            let mut mj = f64::NEG_INFINITY;
            for (jp, vjp) in pts.iter().enumerate() {
                if jp == j {
                    continue;
                }
                let d = (&base + vjp).norm() - xn;
                if d > mj {
                    mj = d;
                    if mj >= best {
                        break; // cannot lower the running min
                    }
                }
            }
            if mj < best {
                best = mj;
            }
        }
        best
    }

    /// Membership by the quantifier definition: for every `j` some `j'` must
    /// make `|x| < |x - v_j + v_j'|` hold, three-valued with the `eps_geom`
    /// band. Boundary counts as contained for closed multi-planks.
    pub fn contains(&self, x: &Point, tol: &Tolerance) -> Result<Membership, MultiPlankError> {
        self.check_dim(x)?;
        Ok(Membership::from_margin(self.membership_margin(x), tol.eps_geom))
    }

    /// Membership via the anti-Voronoi reformulation: `x` is in the plank iff
    /// for every `j`, `-v_j` is not the farthest point of `-V` from
    /// `x - translation - v_j`.
    pub fn contains_via_cells(
        &self,
        x: &Point,
        tol: &Tolerance,
    ) -> Result<Membership, MultiPlankError> {
        self.check_dim(x)?;
        let xt = x - &self.translation;
        let xn = xt.norm();
        let pts = &self.gen.points;
        let neg: Vec<Point> = pts.iter().map(|p| -p).collect();
        // Depth of x~ - v_j in the cell A_{-V}^j: the cell demands
        // |y + v_j| >= |y + v_j'| for every j', so the depth is the smallest
        // slack over the nontrivial comparisons.
        let mut worst = f64::NEG_INFINITY;
        for (j, vj) in pts.iter().enumerate() {
            let y = &xt - vj;
            let depth = neg
                .iter()
                .enumerate()
                .filter(|(jp, _)| *jp != j)
                .map(|(_, nv)| xn - y.dist(nv))
                .fold(f64::INFINITY, f64::min);
            if depth > worst {
                worst = depth;
            }
        }
        // Strictly in some cell: outside the plank.
        Ok(Membership::from_margin(-worst, tol.eps_geom))
    }

    /// Containment in the set itself: `Boundary` counts for closed
    /// multi-planks only.
    pub fn covers(&self, x: &Point, tol: &Tolerance) -> bool {
        match Membership::from_margin(self.membership_margin(x), tol.eps_geom) {
            Membership::Inside => true,
            Membership::Boundary => self.closed,
            Membership::Outside => false,
        }
    }

    /// Halfspace description of the complement cell `v_j + A_{-V}^j`, in the
    /// plank's centered coordinates (subtract `translation` before testing):
    /// `<x, v_j' - v_j> <= -|v_j - v_j'|^2 / 2` over all `j'`.
    pub fn complement_cell_halfspaces(&self, j: usize) -> Vec<Halfspace> {
        let pts = &self.gen.points;
        let vj = &pts[j];
        pts.iter()
            .enumerate()
            .filter(|(jp, _)| *jp != j)
            .filter_map(|(_, vjp)| {
                let d = vjp - vj;
                let d2 = d.norm_sq();
                if d2 <= 0.0 {
                    return None; // duplicate generator, no constraint
                }
                Some(Halfspace::new(d, -d2 / 2.0))
            })
            .collect()
    }
}

/// The multi-plank generated by the Bang set of a plank family: all sign
/// combinations `sum_i (+-u_i)`. A single plank degenerates to `{u, -u}`,
/// the ordinary plank.
pub fn plank_union_multiplank(
    u: &[Point],
    tol: &Tolerance,
) -> Result<MultiPlank, MultiPlankError> {
    const MAX_PLANKS: usize = 12;
    if u.is_empty() {
        return Err(MultiPlankError::TooFewPoints);
    }
    if u.len() > MAX_PLANKS {
        return Err(MultiPlankError::TooManyPlanks { count: u.len(), max: MAX_PLANKS });
    }
    let dim = u[0].dim();
    for ui in u {
        if ui.dim() != dim {
            return Err(MultiPlankError::DimensionMismatch { expected: dim, got: ui.dim() });
        }
        if ui.norm() <= tol.eps_geom {
            return Err(MultiPlankError::ZeroVector);
        }
    }
    let mut points = Vec::with_capacity(1 << u.len());
    for mask in 0u32..(1u32 << u.len()) {
        let mut p = Point::zero(dim);
        for (i, ui) in u.iter().enumerate() {
            let sign = if mask & (1 << i) == 0 { 1.0 } else { -1.0 };
            p = p.axpy(sign, ui);
        }
        if !points.contains(&p) {
            points.push(p);
        }
    }
    MultiPlank::from_points(&points, false, tol)
}

/// Least-squares check that the origin is a strictly positive convex
/// combination of `subset`; returns the smallest barycentric weight.
fn zero_relint_weight(subset: &[&Point], scale: f64) -> Option<f64> {
    let k = subset[0].dim();
    let s = subset.len();
    let a = nalgebra::DMatrix::from_fn(k + 1, s, |r, c| if r < k { subset[c][r] } else { 1.0 });
    let mut b = nalgebra::DVector::zeros(k + 1);
    b[k] = 1.0;
    let svd = a.clone().svd(true, true);
    let lambda = svd.solve(&b, 1e-12).ok()?;
    let residual = (&a * &lambda - &b).norm();
    if residual > 1e-6 * (1.0 + scale) {
        return None;
    }
    let min_w = lambda.iter().copied().fold(f64::INFINITY, f64::min);
    if min_w > 1e-9 {
        Some(min_w)
    } else {
        None
    }
}

fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    if size > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        // advance
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] + (size - i) <= n - 1 {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Pick an affinely minimal contact subset certifying maximality: the origin
/// must lie in the relative interior of the chosen contact vectors' hull.
/// Subsets are scanned smallest-first; among candidates of the same size the
/// most balanced weights win, so the choice is deterministic.
fn minimal_certifying_subset(contacts: &[Point], r: f64) -> Option<Vec<usize>> {
    let n = contacts.len();
    let max_size = (contacts[0].dim() + 1).min(n);
    for size in 2..=max_size {
        let mut best: Option<(f64, Vec<usize>)> = None;
        for idx in combinations(n, size) {
            let subset: Vec<&Point> = idx.iter().map(|&i| &contacts[i]).collect();
            if let Some(w) = zero_relint_weight(&subset, r) {
                if best.as_ref().map_or(true, |(bw, _)| w > *bw) {
                    best = Some((w, idx));
                }
            }
        }
        if let Some((_, idx)) = best {
            return Some(idx);
        }
    }
    None
}

/// Place a bounded convex body inside a simple multi-plank of rank at most
/// `k` and inradius `r^(k)(C)`. The minimizing subspace comes from the same
/// search `upper_intrinsic` uses; contact points are feet of the inscribed
/// ball on the projection's boundary, pruned to a minimal subset with the
/// origin in its hull's relative interior.
pub fn simple_multiplank(
    body: &PolytopeBody,
    k: usize,
    tol: &Tolerance,
) -> Result<MultiPlank, MultiPlankError> {
    let n = body.dim();
    if k < 1 || k > n {
        return Err(MultiPlankError::InvalidRank { k, n });
    }
    if !body.is_bounded() {
        return Err(MultiPlankError::Geom(GeomError::Unbounded));
    }
    let (r, basis) = crate::inradii::upper_intrinsic_with_subspace(body, k, tol)
        .map_err(MultiPlankError::Geom)?;
    let verts = body.vertices(tol)?;
    // Coordinates of the projected body inside the subspace basis.
    let proj: Vec<Point> = verts
        .iter()
        .map(|v| Point::from_slice(&basis.iter().map(|b| b.dot(v)).collect::<Vec<_>>()))
        .collect();

    let (center_l, contacts_l): (Point, Vec<Point>) = match k {
        1 => {
            let lo = proj.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = proj.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            let c = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            (
                Point::from_slice(&[c]),
                vec![Point::from_slice(&[-half]), Point::from_slice(&[half])],
            )
        }
        _ => {
            // Inscribed ball of the projection inside subspace coordinates.
            let shape = if k == 2 {
                let hull = crate::geom::convex_hull_2d(&proj, tol.eps_geom)?;
                PolytopeBody::polygon(hull, tol)?
            } else {
                body.clone() // k == n == 3: the projection is the body itself
            };
            let ball = chebyshev_ball(&shape, tol)?;
            let feet_tol = 10.0 * tol.eps_opt * (1.0 + ball.radius);
            let mut contacts = Vec::new();
            for h in shape.halfspaces() {
                let slack = h.slack(&ball.center);
                if (slack - ball.radius).abs() <= feet_tol {
                    contacts.push(h.normal.scale(slack));
                }
            }
            if contacts.len() < 2 {
                return Err(MultiPlankError::ContactExtraction("fewer than 2 contact feet"));
            }
            (ball.center, contacts)
        }
    };

    let subset = minimal_certifying_subset(&contacts_l, r)
        .ok_or(MultiPlankError::ContactExtraction("no certifying subset"))?;
    let chosen: Vec<&Point> = subset.iter().map(|&i| &contacts_l[i]).collect();

    // Halfspace condition: every projected vertex must satisfy
    // <p - c, v> <= r^2 within the construction tolerance.
    let r2 = r * r;
    for p in &proj {
        for v in &chosen {
            let lhs = (p - &center_l).dot(v);
            if lhs > r2 + 1e-4 * (1.0 + r2) {
                return Err(MultiPlankError::ContactExtraction("halfspace condition violated"));
            }
        }
    }

    // Lift back to ambient coordinates.
    let lift = |q: &Point| -> Point {
        let mut out = Point::zero(n);
        for (i, b) in basis.iter().enumerate() {
            out = out.axpy(q[i], b);
        }
        out
    };
    let ambient_center = lift(&center_l);
    let ambient_contacts: Vec<Point> = chosen.iter().map(|v| lift(v)).collect();
    let plank = MultiPlank::from_points(&ambient_contacts, true, tol)?;
    plank.translated(ambient_center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{sample_body, sample_box};
    use approx::assert_relative_eq;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn pair_plank() -> MultiPlank {
        let gen =
            GeneratingSet::new(vec![Point::xy(1.0, 0.0), Point::xy(-1.0, 0.0)], &tol()).unwrap();
        MultiPlank::open(gen, &tol()).unwrap()
    }

    #[test]
    fn center_shifts_pair() {
        let (gen, shift) = center(&[Point::xy(0.0, 0.0), Point::xy(2.0, 0.0)], &tol()).unwrap();
        assert!(shift.approx_eq(&Point::xy(-1.0, 0.0), 1e-12));
        assert!(gen.points()[0].approx_eq(&Point::xy(-1.0, 0.0), 1e-12));
        assert!(gen.points()[1].approx_eq(&Point::xy(1.0, 0.0), 1e-12));
        assert!(gen.is_centered(&tol()));
    }

    #[test]
    fn center_noop_when_centered() {
        let pts = [Point::xy(1.0, 0.0), Point::xy(-1.0, 0.0)];
        let (gen, shift) = center(&pts, &tol()).unwrap();
        assert!(shift.norm() <= 1e-12);
        assert!(gen.points()[0].approx_eq(&pts[0], 1e-12));
    }

    #[test]
    fn center_equilateral_puts_circumcenter_at_origin() {
        let h = 3f64.sqrt() / 2.0;
        let pts = [
            Point::xy(3.0, 4.0),
            Point::xy(4.0, 4.0),
            Point::xy(3.5, 4.0 + h),
        ];
        let (gen, _) = center(&pts, &tol()).unwrap();
        let meb = min_enclosing_ball(gen.points(), 1e-9).unwrap();
        assert!(meb.center.norm() <= 1e-9);
    }

    #[test]
    fn center_rejects_single_point() {
        assert_eq!(
            center(&[Point::xy(0.0, 0.0)], &tol()).unwrap_err(),
            MultiPlankError::TooFewPoints
        );
    }

    #[test]
    fn pair_plank_membership() {
        let p = pair_plank();
        assert_eq!(p.contains(&Point::xy(0.5, 100.0), &tol()).unwrap(), Membership::Inside);
        assert_eq!(p.contains(&Point::xy(1.5, 0.0), &tol()).unwrap(), Membership::Outside);
        assert_eq!(p.contains(&Point::xy(1.0, 7.0), &tol()).unwrap(), Membership::Boundary);
    }

    #[test]
    fn plank_specialization_pointwise() {
        // For V = {u, -u}: inside iff -|u|^2 < <x, u> < |u|^2.
        let u = Point::xy(0.8, -0.3);
        let gen = GeneratingSet::new(vec![u.clone(), -&u], &tol()).unwrap();
        let p = MultiPlank::open(gen, &tol()).unwrap();
        let u2 = u.norm_sq();
        for pt in sample_box(&Point::xy(-3.0, -3.0), &Point::xy(3.0, 3.0), 2000, 5) {
            let s = pt.dot(&u);
            let expected = if s.abs() < u2 - 1e-7 {
                Some(Membership::Inside)
            } else if s.abs() > u2 + 1e-7 {
                Some(Membership::Outside)
            } else {
                None // too close to call either way
            };
            if let Some(e) = expected {
                assert_eq!(p.contains(&pt, &tol()).unwrap(), e, "at {pt:?}");
            }
        }
    }

    #[test]
    fn anti_voronoi_index_ties() {
        let gen =
            GeneratingSet::new(vec![Point::xy(1.0, 0.0), Point::xy(-1.0, 0.0)], &tol()).unwrap();
        assert_eq!(gen.anti_voronoi_indices(&Point::xy(5.0, 0.0), 1e-9), vec![1]);
        assert_eq!(gen.anti_voronoi_indices(&Point::xy(0.0, 3.0), 1e-9), vec![0, 1]);
        let three = GeneratingSet::new(
            (0..3)
                .map(|i| {
                    let a = 2.0 * std::f64::consts::PI * i as f64 / 3.0;
                    Point::xy(a.cos(), a.sin())
                })
                .collect(),
            &tol(),
        )
        .unwrap();
        assert_eq!(three.anti_voronoi_indices(&Point::xy(0.0, 0.0), 1e-9), vec![0, 1, 2]);
    }

    #[test]
    fn definitions_agree_on_pair_examples() {
        let p = pair_plank();
        for pt in [
            Point::xy(0.5, 100.0),
            Point::xy(1.5, 0.0),
            Point::xy(1.0, 7.0),
        ] {
            assert_eq!(
                p.contains(&pt, &tol()).unwrap(),
                p.contains_via_cells(&pt, &tol()).unwrap()
            );
        }
    }

    #[test]
    fn inradius_examples() {
        assert_relative_eq!(pair_plank().inradius(), 1.0, epsilon = 1e-12);
        let gen = GeneratingSet::new(
            vec![
                Point::xy(2.0, 0.0),
                Point::xy(0.0, 2.0),
                Point::xy(-2.0, 0.0),
                Point::xy(0.0, -2.0),
            ],
            &tol(),
        )
        .unwrap();
        assert_relative_eq!(
            MultiPlank::open(gen, &tol()).unwrap().inradius(),
            2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn bang_pair_inradius_sqrt2() {
        let p =
            plank_union_multiplank(&[Point::xy(1.0, 0.0), Point::xy(0.0, 1.0)], &tol()).unwrap();
        assert_eq!(p.generating_set().len(), 4);
        assert_relative_eq!(p.inradius(), 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn single_plank_degenerates_to_ordinary() {
        let p = plank_union_multiplank(&[Point::xy(1.0, 0.0)], &tol()).unwrap();
        assert_eq!(p.generating_set().len(), 2);
        assert_relative_eq!(p.inradius(), 1.0, epsilon = 1e-12);
        assert_eq!(p.contains(&Point::xy(0.5, 9.0), &tol()).unwrap(), Membership::Inside);
    }

    #[test]
    fn plank_union_rejects_bad_input() {
        assert!(matches!(
            plank_union_multiplank(&[], &tol()),
            Err(MultiPlankError::TooFewPoints)
        ));
        assert!(matches!(
            plank_union_multiplank(&[Point::xy(0.0, 0.0)], &tol()),
            Err(MultiPlankError::ZeroVector)
        ));
        let many: Vec<Point> = (0..13).map(|i| Point::xy(1.0 + i as f64, 1.0)).collect();
        assert!(matches!(
            plank_union_multiplank(&many, &tol()),
            Err(MultiPlankError::TooManyPlanks { .. })
        ));
    }

    #[test]
    fn plank_union_covers_both_planks_sampled() {
        let u = [Point::xy(1.0, 0.0), Point::xy(0.0, 1.0)];
        let p = plank_union_multiplank(&u, &tol()).unwrap();
        let samples = sample_box(&Point::xy(-4.0, -4.0), &Point::xy(4.0, 4.0), 20_000, 3);
        let mut checked = 0;
        for s in samples {
            let in_union = u.iter().any(|ui| {
                let v = s.dot(ui);
                v.abs() < ui.norm_sq() - 1e-9
            });
            if in_union {
                checked += 1;
                assert_ne!(
                    p.contains(&s, &tol()).unwrap(),
                    Membership::Outside,
                    "union point {s:?} escaped the Bang multi-plank"
                );
            }
        }
        assert!(checked > 5000);
    }

    #[test]
    fn uncentered_set_rejected() {
        let gen =
            GeneratingSet::new(vec![Point::xy(0.0, 0.0), Point::xy(2.0, 0.0)], &tol()).unwrap();
        assert!(matches!(
            MultiPlank::open(gen, &tol()),
            Err(MultiPlankError::NotCentered(_))
        ));
    }

    #[test]
    fn dimension_mismatch_detected() {
        let p = pair_plank();
        assert!(matches!(
            p.contains(&Point::xyz(0.0, 0.0, 0.0), &tol()),
            Err(MultiPlankError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn simple_multiplank_square_k1_is_plank() {
        let sq = PolytopeBody::box2d(-0.5, 0.5, -0.5, 0.5, &tol()).unwrap();
        let p = simple_multiplank(&sq, 1, &tol()).unwrap();
        assert_eq!(p.generating_set().len(), 2);
        assert_relative_eq!(p.inradius(), 0.5, epsilon = 1e-4);
        assert_eq!(p.rank(&tol()), 1);
        // The square itself must be covered (closed multi-plank).
        for s in sample_body(&sq, 2000, 1, &tol()) {
            assert!(p.covers(&s, &Tolerance::new(1e-6, 1e-3).unwrap()), "{s:?}");
        }
    }

    #[test]
    fn simple_multiplank_triangle_k2() {
        let h = 3f64.sqrt() / 2.0;
        let tri = PolytopeBody::polygon(
            vec![Point::xy(0.0, 0.0), Point::xy(1.0, 0.0), Point::xy(0.5, h)],
            &tol(),
        )
        .unwrap();
        let p = simple_multiplank(&tri, 2, &tol()).unwrap();
        // Inradius of a unit equilateral triangle: 1 / (2 sqrt(3)).
        assert_relative_eq!(p.inradius(), 1.0 / (2.0 * 3f64.sqrt()), epsilon = 1e-4);
        assert_eq!(p.rank(&tol()), 2);
        for s in sample_body(&tri, 5000, 2, &tol()) {
            assert!(p.covers(&s, &Tolerance::new(1e-6, 1e-3).unwrap()), "{s:?}");
        }
    }

    #[test]
    fn simple_multiplank_disk_k2() {
        let disk = PolytopeBody::regular_polygon(64, 1.0, &tol()).unwrap();
        let p = simple_multiplank(&disk, 2, &tol()).unwrap();
        assert!(p.generating_set().len() <= 3);
        assert_relative_eq!(p.inradius(), 1.0, epsilon = 2e-3);
    }

    #[test]
    fn simple_multiplank_rejects_bad_rank() {
        let sq = PolytopeBody::box2d(0.0, 1.0, 0.0, 1.0, &tol()).unwrap();
        assert!(matches!(
            simple_multiplank(&sq, 3, &tol()),
            Err(MultiPlankError::InvalidRank { .. })
        ));
    }
}
