//! Multi-planks in a normed plane.
//!
//! The norm is the gauge of a convex polygon containing the origin in its
//! interior; it need not be symmetric, so `||x|| != ||-x||` in general. Only
//! centered multi-planks exist here: the translation trick behind the
//! Euclidean covering theorem breaks in a normed space, while the escape
//! argument survives verbatim with the gauge in place of the norm.

use thiserror::Error;

use crate::experiments::{bang_set, EscapeReport, EscapeWitness};
use crate::geom::{
    chord_interval, lp, GeomError, Halfspace, Membership, Point, PolytopeBody, Tolerance,
};
use crate::multiplank::{GeneratingSet, MultiPlankError};
use crate::opt::{golden_section_max, golden_section_min, nelder_mead};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormedError {
    #[error("invalid gauge: {0}")]
    InvalidGauge(&'static str),
    #[error("generating set is not gauge-centered: a homothet of scale {best_scale} covers it (needs >= {r})")]
    NotCentered { best_scale: f64, r: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("gauges of the family differ")]
    GaugeMismatch,
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Plank(#[from] MultiPlankError),
}

/// A possibly asymmetric norm given by a convex polygon `B` with the origin
/// strictly inside: `||x|| = inf { r : x in r B }`, evaluated as the max of
/// the cached edge functionals.
#[derive(Debug, Clone, PartialEq)]
pub struct Gauge {
    polygon: Vec<Point>,
    functionals: Vec<Point>,
}

impl Gauge {
    pub fn new(polygon: Vec<Point>, tol: &Tolerance) -> Result<Self, NormedError> {
        let body = PolytopeBody::polygon(polygon, tol)
            .map_err(|_| NormedError::InvalidGauge("not a convex polygon"))?;
        let verts = body.polygon_vertices().expect("polygon rep").to_vec();
        let mut functionals = Vec::with_capacity(verts.len());
        for h in body.halfspaces() {
            if h.offset <= tol.eps_geom {
                return Err(NormedError::InvalidGauge("origin not strictly interior"));
            }
            functionals.push(h.normal.scale(1.0 / h.offset));
        }
        let g = Gauge { polygon: verts, functionals };
        for v in &g.polygon {
            if (g.norm(v) - 1.0).abs() > 1e3 * tol.eps_geom * (1.0 + v.norm()) {
                return Err(NormedError::InvalidGauge("vertex gauge is not 1"));
            }
        }
        Ok(g)
    }

    /// Regular polygon of circumradius 1: a fine one approximates the
    /// Euclidean disk (and hence the Euclidean norm).
    pub fn disk_approx(n: usize, tol: &Tolerance) -> Result<Self, NormedError> {
        let body = PolytopeBody::regular_polygon(n, 1.0, tol)?;
        Self::new(body.polygon_vertices().expect("polygon rep").to_vec(), tol)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.polygon
    }

    /// The gauge value `max_e <a_e, x>` (zero at the origin).
    pub fn norm(&self, x: &Point) -> f64 {
        self.functionals
            .iter()
            .map(|a| a.dot(x))
            .fold(0.0f64, f64::max)
    }

    /// Support function of the unit ball.
    pub fn support(&self, dir: &Point) -> f64 {
        self.polygon
            .iter()
            .map(|v| v.dot(dir))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Length of the chord of `B` through the origin in direction `u`
    /// (asymmetric: `1/||u|| + 1/||-u||`).
    pub fn chord_through_origin(&self, u: &Point) -> f64 {
        1.0 / self.norm(u) + 1.0 / self.norm(&-u)
    }
}

/// The gauge value of `x` under `B`.
pub fn gauge_norm(gauge: &Gauge, x: &Point) -> f64 {
    gauge.norm(x)
}

/// Outcome of the centering certificate search.
#[derive(Debug, Clone)]
pub struct CenteringCheck {
    pub holds: bool,
    /// The best covering homothet found: `best_center + best_scale * B`
    /// covers the points.
    pub best_center: Point,
    pub best_scale: f64,
}

/// The minimal covering homothet of the gauge ball: minimize the convex
/// objective `max_j ||v_j - t||` over translations by a grid search plus
/// local refinement. Returns `(center, scale)`.
pub fn gauge_enclosing_homothet(points: &[Point], gauge: &Gauge) -> (Point, f64) {
    let objective = |t: &[f64]| -> f64 {
        let tp = Point::xy(t[0], t[1]);
        points
            .iter()
            .map(|v| gauge.norm(&(v - &tp)))
            .fold(0.0f64, f64::max)
    };
    let lo_x = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
    let hi_x = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
    let lo_y = points.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min);
    let hi_y = points.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max);
    let pad = 0.5 * ((hi_x - lo_x) + (hi_y - lo_y)) + 1.0;
    let grid = 33;
    let mut best = (f64::INFINITY, [0.0f64; 2]);
    for i in 0..grid {
        for j in 0..grid {
            let t = [
                lo_x - pad + (hi_x - lo_x + 2.0 * pad) * i as f64 / (grid - 1) as f64,
                lo_y - pad + (hi_y - lo_y + 2.0 * pad) * j as f64 / (grid - 1) as f64,
            ];
            let v = objective(&t);
            if v < best.0 {
                best = (v, t);
            }
        }
    }
    let step = (hi_x - lo_x + 2.0 * pad).max(hi_y - lo_y + 2.0 * pad) / (grid - 1) as f64;
    let (t, v) = nelder_mead(objective, &best.1, step, 1e-12, 600);
    if v < best.0 {
        (Point::xy(t[0], t[1]), v)
    } else {
        (Point::xy(best.1[0], best.1[1]), best.0)
    }
}

/// Certify that no homothet of `B` smaller than `r B` covers the points.
pub fn normed_centering_check(
    points: &[Point],
    gauge: &Gauge,
    r: f64,
    tol: &Tolerance,
) -> CenteringCheck {
    let (best_center, best_scale) = gauge_enclosing_homothet(points, gauge);
    CenteringCheck { holds: best_scale >= r - tol.eps_opt, best_center, best_scale }
}

/// A centered normed multi-plank: generators of gauge norm at most `r` that
/// no smaller homothet of the gauge ball can cover.
#[derive(Debug, Clone)]
pub struct NormedMultiPlank {
    points: Vec<Point>,
    gauge: Gauge,
    r: f64,
}

impl NormedMultiPlank {
    pub fn new(points: Vec<Point>, gauge: Gauge, tol: &Tolerance) -> Result<Self, NormedError> {
        if points.len() < 2 {
            return Err(NormedError::Plank(MultiPlankError::TooFewPoints));
        }
        for p in &points {
            if p.dim() != 2 {
                return Err(NormedError::Plank(MultiPlankError::DimensionMismatch {
                    expected: 2,
                    got: p.dim(),
                }));
            }
        }
        let r = points.iter().map(|p| gauge.norm(p)).fold(0.0f64, f64::max);
        let check = normed_centering_check(&points, &gauge, r, tol);
        if !check.holds {
            return Err(NormedError::NotCentered { best_scale: check.best_scale, r });
        }
        Ok(NormedMultiPlank { points, gauge, r })
    }

    /// Translate the points by the center of their minimal covering homothet
    /// of the gauge ball, then build the centered plank they generate.
    /// Returns the plank and the shift that was applied.
    pub fn from_points_centered(
        points: &[Point],
        gauge: Gauge,
        tol: &Tolerance,
    ) -> Result<(Self, Point), NormedError> {
        let (center, _) = gauge_enclosing_homothet(points, &gauge);
        let shift = -&center;
        let shifted: Vec<Point> = points.iter().map(|p| p + &shift).collect();
        Ok((Self::new(shifted, gauge, tol)?, shift))
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    /// `r^B(P)`, the gauge inradius.
    pub fn inradius(&self) -> f64 {
        self.r
    }

    /// Signed gauge margin of the membership predicate, mirroring the
    /// Euclidean construction with the gauge in place of the norm.
    pub fn membership_margin(&self, x: &Point) -> f64 {
        let xn = self.gauge.norm(x);
        let mut best = f64::INFINITY;
        for (j, vj) in self.points.iter().enumerate() {
            let base = x - vj;
            let mut mj = f64::NEG_INFINITY;
            for (jp, vjp) in self.points.iter().enumerate() {
                if jp == j {
                    continue;
                }
                let d = self.gauge.norm(&(&base + vjp)) - xn;
                if d > mj {
                    mj = d;
                    if mj >= best {
                        break;
                    }
                }
            }
            if mj < best {
                best = mj;
            }
        }
        best
    }

    /// Three-valued membership: `x` is in the plank iff no `-v_j` is the
    /// gauge-farthest point of `-V` from `x - v_j`.
    pub fn contains(&self, x: &Point, tol: &Tolerance) -> Membership {
        Membership::from_margin(self.membership_margin(x), tol.eps_geom)
    }

    /// Depth of `x` in the shifted cell `v_j + A_{-V}^j` (gauge units);
    /// nonnegative means the closed cell contains `x`.
    pub fn cell_depth(&self, j: usize, x: &Point) -> f64 {
        let xn = self.gauge.norm(x);
        let base = x - &self.points[j];
        self.points
            .iter()
            .enumerate()
            .filter(|(jp, _)| *jp != j)
            .map(|(_, vjp)| xn - self.gauge.norm(&(&base + vjp)))
            .fold(f64::INFINITY, f64::min)
    }
}

fn check_2d_body(body: &PolytopeBody, k: usize) -> Result<(), NormedError> {
    if body.dim() != 2 {
        return Err(NormedError::InvalidParameter("normed radii are 2D only"));
    }
    if !(1..=2).contains(&k) {
        return Err(NormedError::InvalidParameter("k must be 1 or 2 in the plane"));
    }
    if !body.is_bounded() {
        return Err(NormedError::Geom(GeomError::Unbounded));
    }
    Ok(())
}

/// Largest `r` with a translate of `r B` inside the body (a linear program
/// over the translation and the scale).
fn largest_homothet_in(body: &PolytopeBody, gauge: &Gauge) -> Result<f64, NormedError> {
    let hs = body.halfspaces();
    let mut rows = Vec::with_capacity(hs.len() + 1);
    let mut rhs = Vec::with_capacity(hs.len() + 1);
    for h in &hs {
        rows.push(vec![h.normal[0], h.normal[1], gauge.support(&h.normal)]);
        rhs.push(h.offset);
    }
    rows.push(vec![0.0, 0.0, -1.0]);
    rhs.push(0.0);
    let sol = lp::maximize(&[0.0, 0.0, 1.0], &rows, &rhs).map_err(GeomError::Lp)?;
    Ok(sol.objective)
}

/// `r_(k)^B`: the largest `r` such that every k-dimensional section of `rB`
/// through the origin translates into the body. At `k = 2` this is the
/// largest inscribed homothet; at `k = 1` it is the worst ratio of the
/// body's maximal chord to the gauge ball's central chord over directions.
pub fn normed_lower_intrinsic(
    body: &PolytopeBody,
    k: usize,
    gauge: &Gauge,
    tol: &Tolerance,
) -> Result<f64, NormedError> {
    check_2d_body(body, k)?;
    if k == 2 {
        return largest_homothet_in(body, gauge);
    }
    let hs = body.halfspaces();
    let verts = body.vertices(tol)?;
    let ratio = |theta: f64| -> f64 {
        let u = Point::xy(theta.cos(), theta.sin());
        let w = crate::geom::perp2(&u);
        let lo = verts.iter().map(|v| v.dot(&w)).fold(f64::INFINITY, f64::min);
        let hi = verts.iter().map(|v| v.dot(&w)).fold(f64::NEG_INFINITY, f64::max);
        let chord = |s: f64| -> f64 {
            match chord_interval(&hs, &w.scale(s), &u, 1e-14) {
                Some((a, b)) => (b - a).max(0.0),
                None => 0.0,
            }
        };
        let (_, max_chord) = golden_section_max(chord, lo, hi, 1e-10 * (1.0 + hi - lo));
        max_chord / gauge.chord_through_origin(&u)
    };
    Ok(minimize_over_angles(ratio))
}

/// `r^(k)_B`: the largest `r` such that `rB` translates into `body + N` for
/// every codimension-k subspace `N`. At `k = 2` the only subspace is the
/// origin; at `k = 1` each line direction gives a slab-fitting ratio of
/// widths.
pub fn normed_upper_intrinsic(
    body: &PolytopeBody,
    k: usize,
    gauge: &Gauge,
    tol: &Tolerance,
) -> Result<f64, NormedError> {
    check_2d_body(body, k)?;
    if k == 2 {
        return largest_homothet_in(body, gauge);
    }
    let verts = body.vertices(tol)?;
    let ratio = |theta: f64| -> f64 {
        // Slab normal: the width of the body over the width of B.
        let w = Point::xy(theta.cos(), theta.sin());
        let hi = verts.iter().map(|v| v.dot(&w)).fold(f64::NEG_INFINITY, f64::max);
        let lo = verts.iter().map(|v| v.dot(&w)).fold(f64::INFINITY, f64::min);
        (hi - lo) / (gauge.support(&w) + gauge.support(&-&w))
    };
    Ok(minimize_over_angles(ratio))
}

fn minimize_over_angles(f: impl Fn(f64) -> f64) -> f64 {
    const GRID: usize = 720;
    let mut best = (f64::INFINITY, 0.0f64);
    for i in 0..GRID {
        let theta = std::f64::consts::PI * i as f64 / GRID as f64;
        let v = f(theta);
        if v < best.0 {
            best = (v, theta);
        }
    }
    let step = std::f64::consts::PI / GRID as f64;
    let (_, refined) = golden_section_min(&f, best.1 - step, best.1 + step, 1e-12);
    refined.min(best.0)
}

/// The escape step with the gauge in place of the Euclidean norm: every
/// gauge-farthest point of the shifted Bang set avoids the open interior of
/// every plank in the family.
pub fn normed_farthest_escape_check(
    planks: &[NormedMultiPlank],
    shift: &Point,
    tol: &Tolerance,
) -> Result<EscapeReport, NormedError> {
    if planks.is_empty() {
        return Err(NormedError::InvalidParameter("no multi-planks"));
    }
    let gauge = &planks[0].gauge;
    for p in planks {
        if p.gauge != *gauge {
            return Err(NormedError::GaugeMismatch);
        }
    }
    let sets: Vec<GeneratingSet> = planks
        .iter()
        .map(|p| GeneratingSet::new(p.points.clone(), tol))
        .collect::<Result<_, _>>()?;
    let bang = bang_set(&sets).map_err(|_| NormedError::InvalidParameter("Bang cap exceeded"))?;
    let shifted: Vec<Point> = bang.points.iter().map(|p| p - shift).collect();
    let max_norm = shifted
        .iter()
        .map(|p| gauge.norm(p))
        .fold(f64::NEG_INFINITY, f64::max);
    let mut witnesses = Vec::new();
    let mut ok = true;
    for p in &shifted {
        if gauge.norm(p) < max_norm - tol.eps_geom {
            continue;
        }
        let memberships: Vec<Membership> = planks.iter().map(|pl| pl.contains(p, tol)).collect();
        let margins: Vec<f64> = planks.iter().map(|pl| pl.membership_margin(p)).collect();
        if memberships.iter().any(|m| *m == Membership::Inside) {
            ok = false;
        }
        witnesses.push(EscapeWitness {
            point: p.clone(),
            norm: gauge.norm(p),
            memberships,
            margins,
        });
    }
    Ok(EscapeReport { max_norm, witnesses, ok })
}

/// Halfspace form of the polygon `t + rho * B`, used by tests that need the
/// covering side of the centering certificate.
pub fn homothet_halfspaces(gauge: &Gauge, t: &Point, rho: f64) -> Vec<Halfspace> {
    gauge
        .functionals
        .iter()
        .map(|a| Halfspace::new(a.clone(), rho + a.dot(t)))
        .collect()
}
