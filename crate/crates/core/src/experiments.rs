//! Theorem-level verifications: Bang sets and the farthest-point escape
//! property, covering inequality checks, the pizza-cutter simulator and its
//! bound, fan families with their half-angles, and the two-multi-plank disk
//! cover.
//!
//! Coverings of non-convex unbounded sets cannot be certified exactly, so
//! every covering verdict here is sampled: reports carry the budget and a
//! witness when one exists, and all sampling is seeded low-discrepancy so
//! reruns are bit-identical.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use thiserror::Error;

use crate::geom::{
    dist_to_fan, Fan, GeomError, Membership, Point, PolytopeBody, Tolerance,
};
use crate::inradii::{lower_intrinsic, upper_intrinsic};
use crate::multiplank::{GeneratingSet, MultiPlank, MultiPlankError};
use crate::sample::{sample_ball_2d, sample_body};

const BANG_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentsError {
    #[error("Bang set size {size} exceeds the cap of {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("covering not established: sampled fraction {fraction}")]
    CoveringNotEstablished { fraction: f64 },
    #[error("invalid fan family: {0}")]
    InvalidFanFamily(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Plank(#[from] MultiPlankError),
}

/// The Minkowski sum of the generating sets of a multi-plank family,
/// materialized in deterministic odometer order (first summand slowest).
#[derive(Debug, Clone)]
pub struct BangSet {
    pub summands: Vec<GeneratingSet>,
    pub points: Vec<Point>,
}

impl BangSet {
    pub fn size(&self) -> usize {
        self.points.len()
    }
}

/// Enumerate all sums picking one point per summand.
pub fn bang_set(sets: &[GeneratingSet]) -> Result<BangSet, ExperimentsError> {
    if sets.is_empty() {
        return Err(ExperimentsError::InvalidParameter("no generating sets"));
    }
    let dim = sets[0].dim();
    let mut size: u64 = 1;
    for s in sets {
        if s.dim() != dim {
            return Err(ExperimentsError::Plank(MultiPlankError::DimensionMismatch {
                expected: dim,
                got: s.dim(),
            }));
        }
        size = size.saturating_mul(s.len() as u64);
        if size > BANG_CAP {
            return Err(ExperimentsError::CapExceeded { size, cap: BANG_CAP });
        }
    }
    let mut points = Vec::with_capacity(size as usize);
    let mut idx = vec![0usize; sets.len()];
    loop {
        let mut p = Point::zero(dim);
        for (i, s) in sets.iter().enumerate() {
            p = &p + &s.points()[idx[i]];
        }
        points.push(p);
        // Odometer: last index fastest.
        let mut k = sets.len();
        loop {
            if k == 0 {
                return Ok(BangSet { summands: sets.to_vec(), points });
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sets[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// One norm maximizer of the shifted Bang set with its per-plank verdicts.
#[derive(Debug, Clone)]
pub struct EscapeWitness {
    pub point: Point,
    pub norm: f64,
    pub memberships: Vec<Membership>,
    pub margins: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct EscapeReport {
    pub max_norm: f64,
    pub witnesses: Vec<EscapeWitness>,
    /// True when no maximizer lies strictly inside any open multi-plank.
    pub ok: bool,
}

/// The escape step of the covering proof: the farthest point of the shifted
/// Bang set from the origin cannot lie strictly inside any of the centered
/// multi-planks. All maximizers within the tie band are checked.
pub fn farthest_escape_check(
    planks: &[MultiPlank],
    shift: &Point,
    tol: &Tolerance,
) -> Result<EscapeReport, ExperimentsError> {
    if planks.is_empty() {
        return Err(ExperimentsError::InvalidParameter("no multi-planks"));
    }
    for p in planks {
        if p.translation().norm() > tol.eps_geom * (1.0 + p.inradius()) {
            return Err(ExperimentsError::Plank(MultiPlankError::NotCentered(
                p.translation().norm(),
            )));
        }
    }
    let sets: Vec<GeneratingSet> =
        planks.iter().map(|p| p.generating_set().clone()).collect();
    let bang = bang_set(&sets)?;
    let shifted: Vec<Point> = bang.points.iter().map(|p| p - shift).collect();
    let max_norm = shifted.iter().map(|p| p.norm()).fold(f64::NEG_INFINITY, f64::max);
    let mut witnesses = Vec::new();
    let mut ok = true;
    for p in &shifted {
        if p.norm() < max_norm - tol.eps_geom {
            continue;
        }
        let memberships: Vec<Membership> = planks
            .iter()
            .map(|pl| pl.contains(p, tol))
            .collect::<Result<_, _>>()?;
        let margins: Vec<f64> = planks.iter().map(|pl| pl.membership_margin(p)).collect();
        if memberships.iter().any(|m| *m == Membership::Inside) {
            ok = false;
        }
        witnesses.push(EscapeWitness { point: p.clone(), norm: p.norm(), memberships, margins });
    }
    Ok(EscapeReport { max_norm, witnesses, ok })
}

/// A covering element: a multi-plank or a convex body.
#[derive(Debug, Clone)]
pub enum Cover {
    Plank(MultiPlank),
    Body(PolytopeBody),
}

impl Cover {
    pub fn covers(&self, x: &Point, tol: &Tolerance) -> bool {
        match self {
            Cover::Plank(p) => p.covers(x, tol),
            Cover::Body(b) => b.contains(x, tol),
        }
    }

    /// The quantity this element contributes to the covering inequality:
    /// `r(V)` for a multi-plank, `r^(k)` for a convex body.
    pub fn inequality_lhs(&self, k: usize, tol: &Tolerance) -> Result<f64, ExperimentsError> {
        match self {
            Cover::Plank(p) => Ok(p.inradius()),
            Cover::Body(b) => Ok(upper_intrinsic(b, k, tol)?),
        }
    }
}

/// A covering experiment: the body, the covering family, the rank bound
/// `k`, and the sampling budget/seed.
#[derive(Debug, Clone)]
pub struct CoveringInstance {
    pub body: PolytopeBody,
    pub covers: Vec<Cover>,
    pub k: usize,
    pub budget: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct CoverageReport {
    pub fraction: f64,
    pub samples: usize,
    pub uncovered: Option<Point>,
}

/// Classify low-discrepancy samples of the body against the covering union.
pub fn verify_covering(inst: &CoveringInstance, tol: &Tolerance) -> CoverageReport {
    let pts = sample_body(&inst.body, inst.budget, inst.seed, tol);
    let flags: Vec<bool> = pts
        .par_iter()
        .map(|p| inst.covers.iter().any(|c| c.covers(p, tol)))
        .collect();
    let covered = flags.iter().filter(|f| **f).count();
    let uncovered = flags.iter().position(|f| !f).map(|i| pts[i].clone());
    CoverageReport {
        fraction: if pts.is_empty() { 0.0 } else { covered as f64 / pts.len() as f64 },
        samples: pts.len(),
        uncovered,
    }
}

#[derive(Debug, Clone)]
pub struct PantsReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub coverage: CoverageReport,
}

/// The covering inequality: once the sampled covering is established, the
/// summed inradii of the covering family must dominate the lower intrinsic
/// inradius of the covered body.
pub fn verify_pants_inequality(
    inst: &CoveringInstance,
    tol: &Tolerance,
) -> Result<PantsReport, ExperimentsError> {
    let coverage = verify_covering(inst, tol);
    if coverage.fraction < 1.0 {
        return Err(ExperimentsError::CoveringNotEstablished { fraction: coverage.fraction });
    }
    let mut lhs = 0.0;
    for c in &inst.covers {
        lhs += c.inequality_lhs(inst.k, tol)?;
    }
    let rhs = lower_intrinsic(&inst.body, inst.k, tol)?;
    Ok(PantsReport { lhs, rhs, holds: lhs >= rhs - tol.eps_opt, coverage })
}

#[derive(Debug, Clone)]
pub struct PizzaResult {
    pub radius: f64,
    pub center: Point,
    pub certified_gap: f64,
    pub evaluations: u64,
}

struct PizzaNode {
    ub: f64,
    order: u64,
    cx: f64,
    cy: f64,
    half: f64,
}

impl PartialEq for PizzaNode {
    fn eq(&self, other: &Self) -> bool {
        self.ub == other.ub && self.order == other.order
    }
}
impl Eq for PizzaNode {}
impl PartialOrd for PizzaNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PizzaNode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ub
            .total_cmp(&other.ub)
            .then_with(|| other.order.cmp(&self.order))
    }
}

const PIZZA_TARGET_GAP: f64 = 5e-5;

/// Largest disk avoiding all fans inside the unit disk: maximize
/// `f(x) = min(1 - |x|, min_i dist(x, fan_i))`. `f` is 1-Lipschitz, so a
/// branch-and-bound over squares certifies a global gap: every surviving
/// square's value is at most `f(center) + sqrt(2) * half`. Runs until the
/// certified gap drops below `5e-5` or the evaluation budget is exhausted,
/// then polishes the best center locally.
pub fn pizza_best_piece(fans: &[Fan], budget: usize) -> PizzaResult {
    let ray_dirs: Vec<(f64, f64, Vec<(f64, f64)>)> = fans
        .iter()
        .map(|f| {
            let dirs = (0..f.arms).map(|j| f.ray_dir(j)).collect();
            (f.apex[0], f.apex[1], dirs)
        })
        .collect();
    let eval = |x: f64, y: f64| -> f64 {
        let mut best = 1.0 - (x * x + y * y).sqrt();
        for (ax, ay, dirs) in &ray_dirs {
            let px = x - ax;
            let py = y - ay;
            let mut d2min = f64::INFINITY;
            for (ux, uy) in dirs {
                let t = (px * ux + py * uy).max(0.0);
                let dx = px - t * ux;
                let dy = py - t * uy;
                let d2 = dx * dx + dy * dy;
                if d2 < d2min {
                    d2min = d2;
                }
            }
            let d = d2min.sqrt();
            if d < best {
                best = d;
            }
        }
        best
    };

    let mut evals: u64 = 0;
    let mut best = eval(0.0, 0.0);
    let mut best_center = (0.0f64, 0.0f64);
    evals += 1;

    let mut heap: BinaryHeap<PizzaNode> = BinaryHeap::new();
    let mut order: u64 = 0;
    let root_f = best;
    heap.push(PizzaNode { ub: root_f + 2f64.sqrt(), order, cx: 0.0, cy: 0.0, half: 1.0 });

    let mut remaining_ub = f64::NEG_INFINITY;
    while let Some(node) = heap.pop() {
        if node.ub <= best + PIZZA_TARGET_GAP {
            remaining_ub = node.ub;
            break;
        }
        if evals as usize >= budget {
            remaining_ub = node.ub;
            break;
        }
        let h = node.half / 2.0;
        for (sx, sy) in [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)] {
            let cx = node.cx + sx * h;
            let cy = node.cy + sy * h;
            let fc = eval(cx, cy);
            evals += 1;
            if fc > best {
                best = fc;
                best_center = (cx, cy);
            }
            let ub = fc + 2f64.sqrt() * h;
            if ub > best {
                order += 1;
                heap.push(PizzaNode { ub, order, cx, cy, half: h });
            }
        }
    }
    if remaining_ub == f64::NEG_INFINITY {
        remaining_ub = best; // heap drained: nothing above the incumbent
    }

    // Local polish sharpens the incumbent (the certificate only improves).
    let (polished, fneg) = crate::opt::nelder_mead(
        |p| -eval(p[0], p[1]),
        &[best_center.0, best_center.1],
        1e-3,
        1e-13,
        200,
    );
    evals += 200;
    if -fneg > best {
        best = -fneg;
        best_center = (polished[0], polished[1]);
    }

    PizzaResult {
        radius: best,
        center: Point::xy(best_center.0, best_center.1),
        certified_gap: (remaining_ub - best).max(0.0),
        evaluations: evals,
    }
}

/// The guaranteed piece inradius when `n_fans` m-fans cut the unit disk:
/// `sin(pi/m) / (N + sin(pi/m))`.
pub fn pizza_bound(m: usize, n_fans: usize) -> Result<f64, ExperimentsError> {
    if m < 2 {
        return Err(ExperimentsError::InvalidParameter("fan needs at least 2 arms"));
    }
    if n_fans < 1 {
        return Err(ExperimentsError::InvalidParameter("need at least one fan"));
    }
    let s = (std::f64::consts::PI / m as f64).sin();
    Ok(s / (n_fans as f64 + s))
}

/// The multi-plank equal to the open `rbar`-neighborhood of a centered fan:
/// generated by `m` points of length `rbar / sin(pi/m)` in the sector
/// bisector directions.
pub fn fan_neighborhood_multiplank(
    fan: &Fan,
    rbar: f64,
    tol: &Tolerance,
) -> Result<MultiPlank, ExperimentsError> {
    if fan.apex.norm() > tol.eps_geom {
        return Err(ExperimentsError::InvalidParameter("fan must be centered at the origin"));
    }
    if !(rbar > 0.0) {
        return Err(ExperimentsError::InvalidParameter("rbar must be positive"));
    }
    let alpha = std::f64::consts::PI / fan.arms as f64;
    let len = rbar / alpha.sin();
    let points: Vec<Point> = (0..fan.arms)
        .map(|j| {
            let a = fan.rotation + alpha + 2.0 * std::f64::consts::PI * j as f64 / fan.arms as f64;
            Point::xy(len * a.cos(), len * a.sin())
        })
        .collect();
    Ok(MultiPlank::from_points(&points, false, tol)?)
}

/// Fan families with closed-form spherical half-angles.
#[derive(Debug, Clone)]
pub enum FanFamily {
    /// `m` coplanar half-planes at equal dihedral angles `2 pi / m`.
    MFan(usize),
    /// Rays through the codimension-2 skeleton of the regular n-simplex.
    RegularSimplex(usize),
    /// The type-A Coxeter reflection arrangement in dimension n.
    CoxeterA(usize),
    /// An explicit orbit of unit vectors: half the minimal pairwise geodesic
    /// distance.
    Orbit(Vec<Point>),
}

/// The spherical inradius of the regions a fan family cuts out of the unit
/// sphere.
pub fn fan_half_angle(family: &FanFamily) -> Result<f64, ExperimentsError> {
    match family {
        FanFamily::MFan(m) => {
            if *m < 2 {
                return Err(ExperimentsError::InvalidFanFamily("m-fan needs m >= 2"));
            }
            Ok(std::f64::consts::PI / *m as f64)
        }
        FanFamily::RegularSimplex(n) => {
            if *n < 2 {
                return Err(ExperimentsError::InvalidFanFamily("simplex fan needs n >= 2"));
            }
            Ok((1.0 / *n as f64).acos())
        }
        FanFamily::CoxeterA(n) => {
            if *n < 2 {
                return Err(ExperimentsError::InvalidFanFamily("Coxeter A_n needs n >= 2"));
            }
            let n = *n as f64;
            Ok((3.0 / (2.0 * (n - 1.0) * n * (n + 1.0))).sqrt().acos())
        }
        FanFamily::Orbit(points) => {
            if points.len() < 2 {
                return Err(ExperimentsError::InvalidFanFamily("orbit needs >= 2 points"));
            }
            let mut units = Vec::with_capacity(points.len());
            for p in points {
                if (p.norm() - 1.0).abs() > 1e-6 {
                    return Err(ExperimentsError::InvalidFanFamily("orbit points must be unit"));
                }
                units.push(p.normalized().expect("unit point"));
            }
            let mut min_geo = f64::INFINITY;
            for i in 0..units.len() {
                for j in i + 1..units.len() {
                    if units[i].dist(&units[j]) <= 1e-9 {
                        continue; // coincident orbit points
                    }
                    let c = units[i].dot(&units[j]).clamp(-1.0, 1.0);
                    min_geo = min_geo.min(c.acos());
                }
            }
            if !min_geo.is_finite() {
                return Err(ExperimentsError::InvalidFanFamily("orbit points all coincide"));
            }
            Ok(0.5 * min_geo)
        }
    }
}

/// Fast complement-cell tables for the sharpness experiment: the two
/// multi-planks have up to 40 generators, so membership goes through the
/// precomputed halfspace form of the cells.
struct CellTable {
    m: usize,
    /// Per cell j: (wx, wy, beta) rows meaning `<x, w> >= beta` keeps x in
    /// the cell; scanning starts at the antipodal generator, which is the
    /// most likely separator.
    rows: Vec<Vec<(f64, f64, f64)>>,
}

impl CellTable {
    fn new(points: &[Point]) -> Self {
        let m = points.len();
        let mut rows = Vec::with_capacity(m);
        for j in 0..m {
            let mut r = Vec::with_capacity(m - 1);
            for off in 0..m {
                let jp = (j + m / 2 + off) % m;
                if jp == j {
                    continue;
                }
                let w = &points[j] - &points[jp];
                let b = w.norm_sq() / 2.0;
                if b > 0.0 {
                    r.push((w[0], w[1], b));
                }
            }
            rows.push(r);
        }
        CellTable { m, rows }
    }

    /// Closed coverage: false only when x sits strictly inside some cell.
    fn covers(&self, x: f64, y: f64, band: f64) -> bool {
        'cells: for j in 0..self.m {
            for (wx, wy, b) in &self.rows[j] {
                if x * wx + y * wy < b - band {
                    continue 'cells; // escaped cell j
                }
            }
            return false; // strictly inside cell j
        }
        true
    }
}

#[derive(Debug, Clone)]
pub struct SharpnessReport {
    pub covers: bool,
    pub fraction: f64,
    pub witness: Option<Point>,
}

fn sharpness_planks(n_points: usize, r: f64) -> (Vec<Point>, Vec<Point>) {
    let step = 2.0 * std::f64::consts::PI / n_points as f64;
    let at = |j: usize, rot: f64| {
        let a = step * j as f64 + rot;
        Point::xy(r * a.cos(), r * a.sin())
    };
    let p1 = (0..n_points).map(|j| at(j, 0.0)).collect();
    let p2 = (0..n_points).map(|j| at(j, step / 2.0)).collect();
    (p1, p2)
}

/// The sharpness construction: two multi-planks generated by `n_points`
/// points equidistributed on the circle of radius `r`, the second rotated by
/// half a step. Reports whether they cover the unit disk at the sampling
/// budget.
pub fn sharpness_two_multiplanks(
    n_points: usize,
    r: f64,
    budget: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<SharpnessReport, ExperimentsError> {
    if n_points < 3 {
        return Err(ExperimentsError::InvalidParameter("need at least 3 circle points"));
    }
    if !(0.0 < r && r < 1.0) {
        return Err(ExperimentsError::InvalidParameter("radius must lie in (0, 1)"));
    }
    let (p1, p2) = sharpness_planks(n_points, r);
    let (t1, t2) = (CellTable::new(&p1), CellTable::new(&p2));
    let samples = sample_ball_2d(&Point::xy(0.0, 0.0), 1.0, budget, seed);
    let band = tol.eps_geom;
    let flags: Vec<bool> = samples
        .par_iter()
        .map(|s| t1.covers(s[0], s[1], band) || t2.covers(s[0], s[1], band))
        .collect();
    let covered = flags.iter().filter(|f| **f).count();
    let witness = flags.iter().position(|f| !f).map(|i| samples[i].clone());
    Ok(SharpnessReport {
        covers: witness.is_none(),
        fraction: covered as f64 / samples.len().max(1) as f64,
        witness,
    })
}

/// Smallest covering radius of the two-multi-plank construction at the given
/// sampling resolution, found by bisection over `r`. Coverage is monotone in
/// `r` per sample (multi-planks are star-shaped about the origin and scale
/// linearly), so bisection against a fixed sample set is sound.
pub fn sharpness_min_covering_radius(
    n_points: usize,
    budget: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<f64, ExperimentsError> {
    let mut lo = 0.5;
    let mut hi = 0.999;
    let top = sharpness_two_multiplanks(n_points, hi, budget, seed, tol)?;
    if !top.covers {
        return Err(ExperimentsError::InvalidParameter(
            "construction fails to cover even near radius 1",
        ));
    }
    while hi - lo > 1e-5 {
        let mid = 0.5 * (lo + hi);
        if sharpness_two_multiplanks(n_points, mid, budget, seed, tol)?.covers {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn gen(points: Vec<Point>) -> GeneratingSet {
        GeneratingSet::new(points, &tol()).unwrap()
    }

    #[test]
    fn bang_pairs() {
        let v1 = gen(vec![Point::xy(1.0, 0.0), Point::xy(-1.0, 0.0)]);
        let v2 = gen(vec![Point::xy(0.0, 1.0), Point::xy(0.0, -1.0)]);
        let x = bang_set(&[v1, v2]).unwrap();
        let expect = [
            Point::xy(1.0, 1.0),
            Point::xy(1.0, -1.0),
            Point::xy(-1.0, 1.0),
            Point::xy(-1.0, -1.0),
        ];
        assert_eq!(x.points, expect.to_vec());
    }

    #[test]
    fn bang_single_set_is_identity() {
        let v = gen(vec![Point::xy(0.3, 0.4), Point::xy(-0.5, 0.2)]);
        let x = bang_set(std::slice::from_ref(&v)).unwrap();
        assert_eq!(x.points, v.points().to_vec());
    }

    #[test]
    fn bang_triple_matches_nested_loops() {
        let sets = [
            gen(vec![Point::xy(1.0, 0.0), Point::xy(-1.0, 0.0)]),
            gen(vec![Point::xy(0.0, 1.0), Point::xy(0.0, -1.0)]),
            gen(vec![Point::xy(0.5, 0.5), Point::xy(-0.5, -0.5)]),
        ];
        let x = bang_set(&sets).unwrap();
        let mut brute = Vec::new();
        for a in sets[0].points() {
            for b in sets[1].points() {
                for c in sets[2].points() {
                    brute.push(&(a + b) + c);
                }
            }
        }
        assert_eq!(x.points, brute);
    }

    #[test]
    fn bang_cap_enforced() {
        let big: Vec<Point> = (0..101)
            .map(|i| Point::xy(i as f64 * 0.01, (i % 7) as f64 * 0.01 + 0.01))
            .collect();
        let g = gen(big);
        let r = bang_set(&[g.clone(), g.clone(), g]);
        assert!(matches!(r, Err(ExperimentsError::CapExceeded { .. })));
    }

    fn plank(points: Vec<Point>) -> MultiPlank {
        MultiPlank::from_points(&points, false, &tol()).unwrap()
    }

    #[test]
    fn escape_single_plank_boundary() {
        let p = plank(vec![Point::xy(1.0, 0.0), Point::xy(-1.0, 0.0)]);
        let report =
            farthest_escape_check(std::slice::from_ref(&p), &Point::xy(0.0, 0.0), &tol())
                .unwrap();
        assert!(report.ok);
        assert_eq!(report.witnesses.len(), 2);
        for w in &report.witnesses {
            assert_eq!(w.memberships[0], Membership::Boundary);
        }
    }

    #[test]
    fn escape_two_orthogonal_planks_shifted() {
        let p1 = plank(vec![Point::xy(1.0, 0.0), Point::xy(-1.0, 0.0)]);
        let p2 = plank(vec![Point::xy(0.0, 1.0), Point::xy(0.0, -1.0)]);
        let report =
            farthest_escape_check(&[p1, p2], &Point::xy(0.3, -0.2), &tol()).unwrap();
        assert!(report.ok);
        // The unique farthest Bang corner is outside both planks.
        assert_eq!(report.witnesses.len(), 1);
        for m in &report.witnesses[0].memberships {
            assert_eq!(*m, Membership::Outside);
        }
    }

    #[test]
    fn escape_rejects_uncentered() {
        let p = plank(vec![Point::xy(1.0, 0.0), Point::xy(-1.0, 0.0)])
            .translated(Point::xy(3.0, 0.0))
            .unwrap();
        assert!(matches!(
            farthest_escape_check(&[p], &Point::xy(0.0, 0.0), &tol()),
            Err(ExperimentsError::Plank(MultiPlankError::NotCentered(_)))
        ));
    }

    #[test]
    fn covering_disk_by_two_planks() {
        let disk = PolytopeBody::regular_polygon(64, 1.0, &tol()).unwrap();
        let up = plank(vec![Point::xy(0.0, 0.8), Point::xy(0.0, -0.8)])
            .translated(Point::xy(0.0, 0.5))
            .unwrap();
        let down = plank(vec![Point::xy(0.0, 0.8), Point::xy(0.0, -0.8)])
            .translated(Point::xy(0.0, -0.5))
            .unwrap();
        let inst = CoveringInstance {
            body: disk,
            covers: vec![Cover::Plank(up), Cover::Plank(down)],
            k: 1,
            budget: 5000,
            seed: 2,
        };
        let rep = verify_covering(&inst, &tol());
        assert_eq!(rep.fraction, 1.0);
        assert!(rep.uncovered.is_none());
    }

    #[test]
    fn covering_detects_gap() {
        let sq = PolytopeBody::box2d(-0.5, 0.5, -0.5, 0.5, &tol()).unwrap();
        let thin = plank(vec![Point::xy(0.0, 0.4), Point::xy(0.0, -0.4)]);
        let inst = CoveringInstance {
            body: sq,
            covers: vec![Cover::Plank(thin)],
            k: 1,
            budget: 5000,
            seed: 3,
        };
        let rep = verify_covering(&inst, &tol());
        assert!(rep.fraction < 1.0);
        let w = rep.uncovered.expect("witness required");
        assert!(w[1].abs() > 0.16 - 1e-9);
    }

    #[test]
    fn pants_equality_anchor_two_planks_on_square() {
        // Two closed horizontal planks of half-width 0.25 tile the unit
        // square: the Bang equality case at k = 1.
        let sq = PolytopeBody::box2d(-0.5, 0.5, -0.5, 0.5, &tol()).unwrap();
        let mk = |y: f64| {
            MultiPlank::from_points(
                &[Point::xy(0.0, 0.25), Point::xy(0.0, -0.25)],
                true,
                &tol(),
            )
            .unwrap()
            .translated(Point::xy(0.0, y))
            .unwrap()
        };
        let inst = CoveringInstance {
            body: sq,
            covers: vec![Cover::Plank(mk(0.25)), Cover::Plank(mk(-0.25))],
            k: 1,
            budget: 10_000,
            seed: 4,
        };
        let rep = verify_pants_inequality(&inst, &tol()).unwrap();
        assert_relative_eq!(rep.lhs, 0.5, epsilon = 1e-12);
        assert_relative_eq!(rep.rhs, 0.5, epsilon = 1e-6);
        assert!(rep.holds);
    }

    #[test]
    fn pants_refuses_without_coverage() {
        let sq = PolytopeBody::box2d(-0.5, 0.5, -0.5, 0.5, &tol()).unwrap();
        let thin = plank(vec![Point::xy(0.0, 0.1), Point::xy(0.0, -0.1)]);
        let inst = CoveringInstance {
            body: sq,
            covers: vec![Cover::Plank(thin)],
            k: 1,
            budget: 2000,
            seed: 5,
        };
        assert!(matches!(
            verify_pants_inequality(&inst, &tol()),
            Err(ExperimentsError::CoveringNotEstablished { .. })
        ));
    }

    #[test]
    fn pants_subadditivity_square_split() {
        // Split the unit square along a diagonal-ish chord into two bodies.
        let sq = PolytopeBody::box2d(-0.5, 0.5, -0.5, 0.5, &tol()).unwrap();
        let verts = sq.polygon_vertices().unwrap().to_vec();
        let hs = crate::geom::Halfspace::new(Point::xy(1.0, 0.3), 0.05);
        let flip = crate::geom::Halfspace::new(Point::xy(-1.0, -0.3), -0.05);
        let a = crate::geom::clip_polygon(&verts, &hs, 1e-12);
        let b = crate::geom::clip_polygon(&verts, &flip, 1e-12);
        let pa = PolytopeBody::polygon(a, &tol()).unwrap();
        let pb = PolytopeBody::polygon(b, &tol()).unwrap();
        for k in [1usize, 2] {
            let inst = CoveringInstance {
                body: sq.clone(),
                covers: vec![Cover::Body(pa.clone()), Cover::Body(pb.clone())],
                k,
                budget: 5000,
                seed: 6,
            };
            let rep = verify_pants_inequality(&inst, &tol()).unwrap();
            assert!(rep.holds, "k = {k}: {} < {}", rep.lhs, rep.rhs);
        }
    }

    #[test]
    fn pizza_no_fans_gives_unit_disk() {
        let r = pizza_best_piece(&[], 1000);
        assert_relative_eq!(r.radius, 1.0, epsilon = 1e-9);
        assert!(r.certified_gap <= PIZZA_TARGET_GAP + 1e-12);
    }

    #[test]
    fn pizza_single_line_half_disk() {
        // One 2-fan through the center: the best piece is the inscribed disk
        // of a half-disk, radius 1/2.
        let fan = Fan::centered(2, 0.0).unwrap();
        let r = pizza_best_piece(&[fan], 100_000);
        assert_relative_eq!(r.radius, 0.5, epsilon = 1e-4);
    }

    #[test]
    fn pizza_centered_fans_achieve_bound() {
        for m in [2usize, 3, 5] {
            let fan = Fan::centered(m, 0.4).unwrap();
            let r = pizza_best_piece(&[fan], 100_000);
            let bound = pizza_bound(m, 1).unwrap();
            assert_relative_eq!(r.radius, bound, epsilon = 1e-4);
            assert!(r.radius >= bound - r.certified_gap - 1e-9);
        }
    }

    #[test]
    fn pizza_bound_values() {
        assert_relative_eq!(pizza_bound(2, 1).unwrap(), 0.5, epsilon = 1e-15);
        let b32 = pizza_bound(3, 2).unwrap();
        // Independent evaluation of the same expression.
        let s = (std::f64::consts::PI / 3.0).sin();
        assert_relative_eq!(b32, s / (2.0 + s), epsilon = 1e-15);
        assert_relative_eq!(b32, 0.30217, epsilon = 1e-5);
        assert!(pizza_bound(1, 1).is_err());
        // Monotone decreasing in both arguments.
        assert!(pizza_bound(4, 1).unwrap() > pizza_bound(6, 1).unwrap());
        assert!(pizza_bound(4, 1).unwrap() > pizza_bound(4, 2).unwrap());
    }

    #[test]
    fn fan_neighborhood_of_line_is_slab() {
        let fan = Fan::centered(2, 0.0).unwrap();
        let p = fan_neighborhood_multiplank(&fan, 0.3, &tol()).unwrap();
        let pts = p.generating_set().points();
        assert_eq!(pts.len(), 2);
        assert_relative_eq!(p.inradius(), 0.3, epsilon = 1e-12);
        let mut ys: Vec<f64> = pts.iter().map(|q| q[1]).collect();
        ys.sort_by(f64::total_cmp);
        assert_relative_eq!(ys[0], -0.3, epsilon = 1e-12);
        assert_relative_eq!(ys[1], 0.3, epsilon = 1e-12);
    }

    #[test]
    fn fan_neighborhood_membership_matches_distance() {
        for m in [2usize, 3, 4] {
            let fan = Fan::centered(m, 0.7).unwrap();
            let rbar = 0.2;
            let p = fan_neighborhood_multiplank(&fan, rbar, &tol()).unwrap();
            assert_relative_eq!(
                p.inradius(),
                rbar / (std::f64::consts::PI / m as f64).sin(),
                epsilon = 1e-12
            );
            for s in crate::sample::sample_box(
                &Point::xy(-2.0, -2.0),
                &Point::xy(2.0, 2.0),
                10_000,
                m as u64,
            ) {
                let d = dist_to_fan(&s, &fan);
                if (d - rbar).abs() < 1e-7 {
                    continue; // boundary band
                }
                let inside = p.contains(&s, &tol()).unwrap();
                if d < rbar {
                    assert_ne!(inside, Membership::Outside, "{s:?} at distance {d}");
                } else {
                    assert_ne!(inside, Membership::Inside, "{s:?} at distance {d}");
                }
            }
        }
    }

    #[test]
    fn fan_half_angle_closed_forms() {
        assert_relative_eq!(
            fan_half_angle(&FanFamily::MFan(4)).unwrap(),
            std::f64::consts::PI / 4.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            fan_half_angle(&FanFamily::RegularSimplex(3)).unwrap(),
            (1f64 / 3.0).acos(),
            epsilon = 1e-15
        );
        assert_relative_eq!((1f64 / 3.0).acos(), 1.23096, epsilon = 1e-5);
        assert_relative_eq!(
            fan_half_angle(&FanFamily::CoxeterA(3)).unwrap(),
            0.25f64.acos(),
            epsilon = 1e-15
        );
        assert_relative_eq!(0.25f64.acos(), 1.31812, epsilon = 1e-5);
    }

    #[test]
    fn fan_half_angle_orbit_matches_mfan() {
        for m in [3usize, 4, 6] {
            let orbit: Vec<Point> = (0..m)
                .map(|i| {
                    let a = 2.0 * std::f64::consts::PI * i as f64 / m as f64 + 0.2;
                    Point::xy(a.cos(), a.sin())
                })
                .collect();
            let got = fan_half_angle(&FanFamily::Orbit(orbit)).unwrap();
            let expect = fan_half_angle(&FanFamily::MFan(m)).unwrap();
            assert_relative_eq!(got, expect, epsilon = 1e-9);
        }
    }

    #[test]
    fn fan_half_angle_rejects_bad_input() {
        assert!(fan_half_angle(&FanFamily::MFan(1)).is_err());
        assert!(fan_half_angle(&FanFamily::Orbit(vec![Point::xy(2.0, 0.0)])).is_err());
    }

    #[test]
    fn sharpness_covers_at_large_radius() {
        let rep = sharpness_two_multiplanks(3, 0.9, 10_000, 7, &tol()).unwrap();
        assert!(rep.covers, "fraction {}", rep.fraction);
    }

    #[test]
    fn sharpness_fails_below_half() {
        let rep = sharpness_two_multiplanks(12, 0.3, 10_000, 8, &tol()).unwrap();
        assert!(!rep.covers);
        let w = rep.witness.unwrap();
        assert!(w.norm() > 0.3, "witness should sit beyond the generators");
    }

    #[test]
    fn sharpness_cell_table_agrees_with_membership() {
        let (p1, _) = sharpness_planks(8, 0.7);
        let table = CellTable::new(&p1);
        let plank = MultiPlank::from_points(&p1, true, &tol()).unwrap();
        for s in crate::sample::sample_box(&Point::xy(-1.5, -1.5), &Point::xy(1.5, 1.5), 5000, 9)
        {
            let via_table = table.covers(s[0], s[1], tol().eps_geom);
            let via_plank = plank.covers(&s, &tol());
            let margin = plank.membership_margin(&s).abs();
            if margin > 1e-7 {
                assert_eq!(via_table, via_plank, "at {s:?}");
            }
        }
    }
}
