//! Farthest-point Delaunay triangulations and the stratum decomposition of a
//! multi-plank.
//!
//! A triangulation of `conv V` is anti-Delaunay when every cell has the full
//! sphere property: the ball through the cell's vertices contains all of `V`.
//! Translating each top cell so its circumcenter sits at the origin yields
//! non-overlapping simplices `S_sigma`; the multi-plank decomposes into
//! strata attached to the cells of the triangulation, and membership reduces
//! to locating the nearest point on the union of the `S_sigma`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::geom::{
    circumcenter, convex_hull_2d_indices, cross2, GeomError, Membership, Point, Tolerance,
};
use crate::multiplank::{MultiPlank, MultiPlankError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StratifyError {
    #[error("generating set has affine rank {rank}, need {needed}")]
    RankDeficient { rank: usize, needed: usize },
    #[error("degenerate triangulation cell")]
    DegenerateCell,
    #[error("{0}")]
    Unsupported(&'static str),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Plank(#[from] MultiPlankError),
}

/// Farthest-point Delaunay triangulation of the extreme points of a 2D set.
/// Cells carry indices into the original point list; triples and the cell
/// list are sorted so cocircular tie-breaking is reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct FarthestDelaunay {
    /// Extreme point indices in counterclockwise hull order.
    pub hull: Vec<usize>,
    /// Triangles as ascending index triples, lexicographically sorted.
    pub cells: Vec<[usize; 3]>,
    /// Shared-edge map: ascending vertex pair to adjacent cell positions.
    pub adjacency: BTreeMap<(usize, usize), Vec<usize>>,
}

fn circumball_of(
    points: &[Point],
    tri: &[usize; 3],
    eps: f64,
) -> Result<(Point, f64), StratifyError> {
    let vs = [
        points[tri[0]].clone(),
        points[tri[1]].clone(),
        points[tri[2]].clone(),
    ];
    let c = circumcenter(&vs, eps).map_err(|_| StratifyError::DegenerateCell)?;
    let r = c.dist(&vs[0]);
    Ok((c, r))
}

/// Greedy lexicographically-minimal triangulation of a convex polygon whose
/// vertices all lie on one circle: repeatedly cut the triangle spanned by the
/// three smallest labels. Any triangle of a cocircular face is valid, so the
/// smallest-label triple always extends to a triangulation.
fn canonical_cocircular(poly: &[usize], out: &mut Vec<[usize; 3]>) {
    if poly.len() < 3 {
        return;
    }
    if poly.len() == 3 {
        let mut t = [poly[0], poly[1], poly[2]];
        t.sort_unstable();
        out.push(t);
        return;
    }
    let mut by_label: Vec<usize> = (0..poly.len()).collect();
    by_label.sort_by_key(|&p| poly[p]);
    let mut cut: Vec<usize> = by_label[..3].to_vec();
    cut.sort_unstable(); // positions around the polygon
    let mut t = [poly[cut[0]], poly[cut[1]], poly[cut[2]]];
    t.sort_unstable();
    out.push(t);
    // Recurse on the up-to-three chains between consecutive cut positions.
    for w in 0..3 {
        let a = cut[w];
        let b = cut[(w + 1) % 3];
        let chain: Vec<usize> = if w < 2 {
            (a..=b).map(|p| poly[p]).collect()
        } else {
            (a..poly.len()).chain(0..=b).map(|p| poly[p]).collect()
        };
        canonical_cocircular(&chain, out);
    }
}

/// Build the farthest-point Delaunay triangulation of the extreme points:
/// start from a fan, run reversed Lawson flips (flip while the opposite
/// vertex falls strictly outside a circumball), then re-triangulate each
/// cocircular face canonically so ties break to the lexicographically
/// smallest triples.
pub fn farthest_delaunay_2d(
    points: &[Point],
    tol: &Tolerance,
) -> Result<FarthestDelaunay, StratifyError> {
    let rank = crate::geom::affine_rank(points, tol.eps_geom)?;
    if rank < 2 {
        return Err(StratifyError::RankDeficient { rank, needed: 2 });
    }
    let hull = convex_hull_2d_indices(points, tol.eps_geom)?;
    let h = hull.len();
    debug_assert!(h >= 3);

    // Work in hull positions; convert to point indices at the end.
    let mut tris: Vec<[usize; 3]> = (1..h - 1).map(|i| [0, i, i + 1]).collect();
    let scale = crate::geom::diameter(points).max(1e-300);
    let flip_band = 1e-11 * (1.0 + scale);

    let mut passes = 0usize;
    loop {
        passes += 1;
        if passes > 20 * h * h + 100 {
            return Err(StratifyError::Unsupported("flip sequence did not settle"));
        }
        let mut edge_map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (ti, t) in tris.iter().enumerate() {
            for e in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                let key = (e.0.min(e.1), e.0.max(e.1));
                edge_map.entry(key).or_default().push(ti);
            }
        }
        let mut flipped = false;
        for (edge, owners) in &edge_map {
            if owners.len() != 2 {
                continue;
            }
            let (t1, t2) = (owners[0], owners[1]);
            let c_opp = *tris[t1].iter().find(|v| **v != edge.0 && **v != edge.1).unwrap();
            let d_opp = *tris[t2].iter().find(|v| **v != edge.0 && **v != edge.1).unwrap();
            let tri1 = [hull[tris[t1][0]], hull[tris[t1][1]], hull[tris[t1][2]]];
            let (c, r) = circumball_of(points, &tri1, tol.eps_geom)?;
            if c.dist(&points[hull[d_opp]]) > r + flip_band {
                tris[t1] = [c_opp, d_opp, edge.0];
                tris[t2] = [c_opp, d_opp, edge.1];
                flipped = true;
                break;
            }
        }
        if !flipped {
            break;
        }
    }

    // Group triangles into cocircular faces (union-find over shared edges
    // whose four vertices are cocircular within the band).
    let cocirc_band = tol.eps_geom * (1.0 + scale);
    let mut parent: Vec<usize> = (0..tris.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    {
        let mut edge_map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (ti, t) in tris.iter().enumerate() {
            for e in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                let key = (e.0.min(e.1), e.0.max(e.1));
                edge_map.entry(key).or_default().push(ti);
            }
        }
        for owners in edge_map.values() {
            if owners.len() != 2 {
                continue;
            }
            let (t1, t2) = (owners[0], owners[1]);
            let tri1 = [hull[tris[t1][0]], hull[tris[t1][1]], hull[tris[t1][2]]];
            let (c, r) = circumball_of(points, &tri1, tol.eps_geom)?;
            let d_opp = tris[t2]
                .iter()
                .find(|v| !tris[t1].contains(v))
                .copied()
                .unwrap();
            if (c.dist(&points[hull[d_opp]]) - r).abs() <= cocirc_band {
                let (a, b) = (find(&mut parent, t1), find(&mut parent, t2));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for ti in 0..tris.len() {
        let root = find(&mut parent, ti);
        groups.entry(root).or_default().push(ti);
    }

    let mut cells: Vec<[usize; 3]> = Vec::with_capacity(tris.len());
    for (_, members) in groups {
        if members.len() == 1 {
            let t = tris[members[0]];
            let mut cell = [hull[t[0]], hull[t[1]], hull[t[2]]];
            cell.sort_unstable();
            cells.push(cell);
            continue;
        }
        // The face polygon: hull positions used by the group, in cyclic order.
        let mut used: Vec<usize> = members.iter().flat_map(|&ti| tris[ti]).collect();
        used.sort_unstable();
        used.dedup();
        let poly: Vec<usize> = used.iter().map(|&p| hull[p]).collect();
        canonical_cocircular(&poly, &mut cells);
    }
    cells.sort_unstable();

    // Verify the full sphere property for every cell against every point.
    let verify_band = tol.eps_geom * (1.0 + scale) * 4.0;
    for cell in &cells {
        let (c, r) = circumball_of(points, cell, tol.eps_geom)?;
        for p in points {
            if c.dist(p) > r + verify_band {
                return Err(StratifyError::Unsupported("full sphere property violated"));
            }
        }
    }

    let mut adjacency: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for e in [(cell[0], cell[1]), (cell[1], cell[2]), (cell[0], cell[2])] {
            adjacency.entry(e).or_default().push(ci);
        }
    }
    Ok(FarthestDelaunay { hull, cells, adjacency })
}

/// A top cell translated so the origin is equidistant from its vertices.
#[derive(Debug, Clone)]
pub struct CenteredSimplex {
    pub cell: usize,
    /// Translated vertices, one per cell vertex (matching the sorted triple).
    pub vertices: [Point; 3],
    pub circumcenter: Point,
    pub circumradius: f64,
}

/// Translate every top cell by minus its circumcenter and verify pairwise
/// interior-disjointness on a barycentric sample grid.
pub fn centered_simplices(
    fd: &FarthestDelaunay,
    points: &[Point],
    tol: &Tolerance,
) -> Result<Vec<CenteredSimplex>, StratifyError> {
    let mut out = Vec::with_capacity(fd.cells.len());
    for (ci, cell) in fd.cells.iter().enumerate() {
        let (c, r) = circumball_of(points, cell, tol.eps_geom)?;
        let vertices = [
            &points[cell[0]] - &c,
            &points[cell[1]] - &c,
            &points[cell[2]] - &c,
        ];
        out.push(CenteredSimplex { cell: ci, vertices, circumcenter: c, circumradius: r });
    }
    // Interior disjointness, sampled on a small barycentric grid.
    let grid: Vec<[f64; 3]> = {
        let mut g = Vec::new();
        let n = 5;
        for i in 1..n {
            for j in 1..(n - i) {
                let k = n - i - j;
                g.push([i as f64 / n as f64, j as f64 / n as f64, k as f64 / n as f64]);
            }
        }
        g
    };
    let scale = crate::geom::diameter(points).max(1e-300);
    let eps = tol.eps_geom * (1.0 + scale);
    for a in 0..out.len() {
        for b in 0..out.len() {
            if a == b {
                continue;
            }
            for w in &grid {
                let p = out[a].vertices[0]
                    .scale(w[0])
                    .axpy(w[1], &out[a].vertices[1])
                    .axpy(w[2], &out[a].vertices[2]);
                if point_in_triangle_margin(&p, &out[b].vertices) > eps {
                    return Err(StratifyError::Unsupported(
                        "centered simplices overlap in their interiors",
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Signed distance-like margin: positive when `p` is strictly inside the
/// triangle, negative outside (scaled by edge lengths).
fn point_in_triangle_margin(p: &Point, tri: &[Point; 3]) -> f64 {
    let orient = cross2(&(&tri[1] - &tri[0]), &(&tri[2] - &tri[0]));
    let sign = if orient >= 0.0 { 1.0 } else { -1.0 };
    let mut margin = f64::INFINITY;
    for i in 0..3 {
        let a = &tri[i];
        let b = &tri[(i + 1) % 3];
        let e = b - a;
        let len = e.norm().max(1e-300);
        let c = sign * cross2(&e, &(p - a)) / len;
        margin = margin.min(c);
    }
    margin
}

/// A cell of the triangulation complex: top simplex, edge, or vertex. Edge
/// and vertex variants carry indices into the stratification's edge list and
/// the original point list respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellRef {
    Simplex(usize),
    Edge(usize),
    Vertex(usize),
}

impl CellRef {
    pub fn dim(&self) -> usize {
        match self {
            CellRef::Simplex(_) => 2,
            CellRef::Edge(_) => 1,
            CellRef::Vertex(_) => 0,
        }
    }
}

/// An edge of the complex with its adjacent top cells.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeInfo {
    pub verts: (usize, usize),
    pub cells: Vec<usize>,
}

/// One `(relint T, normal cone)` pair of a stratum, attached to a particular
/// top cell. Cone rays are outward normal generators at the face.
#[derive(Debug, Clone)]
pub struct StratumPiece {
    pub simplex: usize,
    pub face: Vec<Point>,
    pub cone_rays: Vec<Point>,
}

/// The full stratum data for one cell of the complex.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub cell: CellRef,
    pub pieces: Vec<StratumPiece>,
}

/// Full-rank 2D stratification data.
#[derive(Debug, Clone)]
pub struct Strat2d {
    pub fd: FarthestDelaunay,
    pub points: Vec<Point>,
    pub simplices: Vec<CenteredSimplex>,
    pub edges: Vec<EdgeInfo>,
    pub strata: Vec<Stratum>,
    pub vertex_strata: Vec<Stratum>,
}

enum StratInner {
    Full2d(Strat2d),
    /// Rank-1 set: the multi-plank is a slab around the orthogonal
    /// complement of the generator line.
    Slab { axis: Point, halfwidth: f64 },
    /// Rank-2 set in 3D: membership splits off the plane of the generators.
    PlaneIn3d { basis: [Point; 2], inner: Box<Strat2d> },
}

/// Stratification of a centered multi-plank. Classification queries require
/// the full-rank 2D case; membership also works for rank-deficient sets via
/// the orthogonal product structure.
pub struct Stratification {
    translation: Point,
    inner: StratInner,
}

fn build_strat2d(points: &[Point], tol: &Tolerance) -> Result<Strat2d, StratifyError> {
    let fd = farthest_delaunay_2d(points, tol)?;
    let simplices = centered_simplices(&fd, points, tol)?;

    let mut edge_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edges: Vec<EdgeInfo> = Vec::new();
    for (key, cells) in &fd.adjacency {
        edge_ids.insert(*key, edges.len());
        edges.push(EdgeInfo { verts: *key, cells: cells.clone() });
    }

    // Outward normal of the edge (a, b) of a centered simplex.
    let edge_normal = |s: &CenteredSimplex, ia: usize, ib: usize, iopp: usize| -> Point {
        let a = &s.vertices[ia];
        let b = &s.vertices[ib];
        let opp = &s.vertices[iopp];
        let e = b - a;
        let n = crate::geom::perp2(&e);
        let n = n.normalized().expect("nondegenerate edge");
        if n.dot(&(opp - a)) > 0.0 {
            -&n
        } else {
            n
        }
    };

    let mut strata: Vec<Stratum> = Vec::new();
    for (ci, _) in fd.cells.iter().enumerate() {
        strata.push(Stratum {
            cell: CellRef::Simplex(ci),
            pieces: vec![StratumPiece {
                simplex: ci,
                face: simplices[ci].vertices.to_vec(),
                cone_rays: Vec::new(),
            }],
        });
    }
    for (ei, edge) in edges.iter().enumerate() {
        let mut pieces = Vec::new();
        for &ci in &edge.cells {
            let cell = &fd.cells[ci];
            let s = &simplices[ci];
            let ia = cell.iter().position(|v| *v == edge.verts.0).unwrap();
            let ib = cell.iter().position(|v| *v == edge.verts.1).unwrap();
            let iopp = 3 - ia - ib;
            pieces.push(StratumPiece {
                simplex: ci,
                face: vec![s.vertices[ia].clone(), s.vertices[ib].clone()],
                cone_rays: vec![edge_normal(s, ia, ib, iopp)],
            });
        }
        strata.push(Stratum { cell: CellRef::Edge(ei), pieces });
    }
    let mut vertex_strata: Vec<Stratum> = Vec::new();
    for &v in &fd.hull {
        let mut pieces = Vec::new();
        for (ci, cell) in fd.cells.iter().enumerate() {
            let Some(iv) = cell.iter().position(|w| *w == v) else { continue };
            let s = &simplices[ci];
            let others: Vec<usize> = (0..3).filter(|i| *i != iv).collect();
            let rays = vec![
                edge_normal(s, iv, others[0], others[1]),
                edge_normal(s, iv, others[1], others[0]),
            ];
            pieces.push(StratumPiece {
                simplex: ci,
                face: vec![s.vertices[iv].clone()],
                cone_rays: rays,
            });
        }
        vertex_strata.push(Stratum { cell: CellRef::Vertex(v), pieces });
    }

    Ok(Strat2d {
        fd,
        points: points.to_vec(),
        simplices,
        edges,
        strata,
        vertex_strata,
    })
}

impl Strat2d {
    /// Signed margin of `x` against one `(relint T) + N(T)` piece, in length
    /// units: positive strictly inside the piece's region.
    fn piece_margin(&self, piece: &StratumPiece, x: &Point) -> f64 {
        let tri = &self.simplices[piece.simplex].vertices;
        match piece.face.len() {
            3 => point_in_triangle_margin(x, tri),
            2 => {
                let a = &piece.face[0];
                let b = &piece.face[1];
                let e = b - a;
                let len = e.norm().max(1e-300);
                let t = (x - a).dot(&e) / (len * len);
                let n = &piece.cone_rays[0];
                let along = (x - a).dot(n);
                (t * len).min((1.0 - t) * len).min(along)
            }
            1 => {
                let a = &piece.face[0];
                let d = x - a;
                // Constraints of the vertex normal cone: <d, v - a> <= 0 for
                // the other two simplex vertices v.
                let mut margin = f64::INFINITY;
                for v in tri.iter() {
                    if v.approx_eq(a, 1e-15) {
                        continue;
                    }
                    let u = (v - a).normalized().expect("nondegenerate simplex");
                    margin = margin.min(-d.dot(&u));
                }
                margin
            }
            _ => f64::NEG_INFINITY,
        }
    }

    /// Signed margin of `x` against a full stratum: the worst piece margin.
    fn stratum_margin(&self, stratum: &Stratum, x: &Point) -> f64 {
        stratum
            .pieces
            .iter()
            .map(|p| self.piece_margin(p, x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Find the stratum containing `x` by evaluating the stratum regions,
    /// which partition the plane. Ties within the band resolve to the
    /// highest-dimensional face. Returns the cell plus flags recording
    /// whether a vertex stratum or a positive-dimensional stratum was within
    /// the band (used for membership banding).
    fn classify(&self, x: &Point, eps: f64) -> (CellRef, bool, bool) {
        let mut best_overall: Option<(f64, CellRef)> = None;
        let mut chosen: Option<(usize, f64, CellRef)> = None;
        let mut near_vertex = false;
        let mut near_positive = false;
        for stratum in self.strata.iter().chain(self.vertex_strata.iter()) {
            let m = self.stratum_margin(stratum, x);
            if best_overall.as_ref().map_or(true, |(bm, _)| m > *bm) {
                best_overall = Some((m, stratum.cell));
            }
            if m >= -eps {
                match stratum.cell {
                    CellRef::Vertex(_) => near_vertex = true,
                    _ => near_positive = true,
                }
                let d = stratum.cell.dim();
                let better = match &chosen {
                    None => true,
                    Some((cd, cm, _)) => d > *cd || (d == *cd && m > *cm),
                };
                if better {
                    chosen = Some((d, m, stratum.cell));
                }
            }
        }
        let cell = chosen
            .map(|(_, _, c)| c)
            .unwrap_or_else(|| best_overall.expect("strata exist").1);
        (cell, near_vertex, near_positive)
    }
}

impl Stratification {
    /// Build the stratification of a multi-plank. Full-rank 2D sets get the
    /// triangulation machinery; rank-deficient sets fall back to the product
    /// structure (membership only). A full-rank 3D set is unsupported here;
    /// use the direct membership predicates instead.
    pub fn build(plank: &MultiPlank, tol: &Tolerance) -> Result<Self, StratifyError> {
        let n = plank.dim();
        let points = plank.generating_set().points();
        let rank = plank.rank(tol);
        let translation = plank.translation().clone();
        let inner = match (n, rank) {
            (2, 2) => StratInner::Full2d(build_strat2d(points, tol)?),
            (_, 1) => {
                let basis = crate::geom::orthonormal_span(points, tol.eps_geom)?;
                StratInner::Slab {
                    axis: basis.into_iter().next().ok_or(StratifyError::DegenerateCell)?,
                    halfwidth: plank.inradius(),
                }
            }
            (3, 2) => {
                let basis = crate::geom::orthonormal_span(points, tol.eps_geom)?;
                let b: [Point; 2] = [basis[0].clone(), basis[1].clone()];
                let proj: Vec<Point> = points
                    .iter()
                    .map(|p| Point::xy(p.dot(&b[0]), p.dot(&b[1])))
                    .collect();
                StratInner::PlaneIn3d { basis: b, inner: Box::new(build_strat2d(&proj, tol)?) }
            }
            (3, 3) => {
                return Err(StratifyError::Unsupported(
                    "3D stratification is not constructed; use direct membership",
                ))
            }
            (_, r) => return Err(StratifyError::RankDeficient { rank: r, needed: 1 }),
        };
        Ok(Stratification { translation, inner })
    }

    /// The full-rank 2D data, when available.
    pub fn full2d(&self) -> Option<&Strat2d> {
        match &self.inner {
            StratInner::Full2d(s) => Some(s),
            _ => None,
        }
    }

    /// Locate the unique stratum containing `x` (full-rank 2D only). The
    /// strata partition the plane, so the region predicates decide; ties
    /// within `eps_geom` resolve to the highest-dimensional face.
    pub fn classify_stratum(&self, x: &Point, tol: &Tolerance) -> Result<CellRef, StratifyError> {
        match &self.inner {
            StratInner::Full2d(s) => {
                let xt = x - &self.translation;
                Ok(s.classify(&xt, tol.eps_geom).0)
            }
            _ => Err(StratifyError::Unsupported(
                "stratum classification requires a full-rank 2D stratification",
            )),
        }
    }

    /// Membership through the stratification: points in strata of dimension
    /// at least 1 are inside, vertex strata (the shifted anti-Voronoi cells)
    /// are outside. Rank-deficient sets split off the orthogonal complement
    /// of the generator span.
    pub fn contains_via_strata(
        &self,
        x: &Point,
        tol: &Tolerance,
    ) -> Result<Membership, StratifyError> {
        let xt = x - &self.translation;
        match &self.inner {
            StratInner::Full2d(s) => Ok(locate_membership(s, &xt, tol)),
            StratInner::Slab { axis, halfwidth } => {
                let v = xt.dot(axis).abs();
                Ok(Membership::from_margin(halfwidth - v, tol.eps_geom))
            }
            StratInner::PlaneIn3d { basis, inner } => {
                let p = Point::xy(xt.dot(&basis[0]), xt.dot(&basis[1]));
                Ok(locate_membership(inner, &p, tol))
            }
        }
    }

    /// Direct evaluation of the stratum formula for tests and rendering:
    /// `x` lies in the stratum of `cell` iff for every top cell containing
    /// it, `x` decomposes as a relative-interior point of the translated
    /// face plus an outward-cone vector.
    pub fn stratum_contains(
        &self,
        cell: &CellRef,
        x: &Point,
        tol: &Tolerance,
    ) -> Result<bool, StratifyError> {
        let StratInner::Full2d(s) = &self.inner else {
            return Err(StratifyError::Unsupported(
                "stratum predicates require a full-rank 2D stratification",
            ));
        };
        let xt = x - &self.translation;
        let stratum = match cell {
            CellRef::Simplex(i) => &s.strata[*i],
            CellRef::Edge(i) => &s.strata[s.simplices.len() + *i],
            CellRef::Vertex(v) => {
                let pos = s
                    .fd
                    .hull
                    .iter()
                    .position(|w| w == v)
                    .ok_or(StratifyError::Unsupported("not a hull vertex"))?;
                &s.vertex_strata[pos]
            }
        };
        Ok(s.stratum_margin(stratum, &xt) > tol.eps_geom)
    }
}

fn locate_membership(s: &Strat2d, xt: &Point, tol: &Tolerance) -> Membership {
    let (_, near_vertex, near_positive) = s.classify(xt, tol.eps_geom);
    match (near_vertex, near_positive) {
        (true, true) => Membership::Boundary,
        (true, false) => Membership::Outside,
        (false, true) => Membership::Inside,
        // Numerical crack between strata: call it boundary.
        (false, false) => Membership::Boundary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn equispaced(m: usize) -> Vec<Point> {
        (0..m)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
                Point::xy(a.cos(), a.sin())
            })
            .collect()
    }

    #[test]
    fn three_points_one_triangle() {
        let pts = equispaced(3);
        let fd = farthest_delaunay_2d(&pts, &tol()).unwrap();
        assert_eq!(fd.cells, vec![[0, 1, 2]]);
    }

    #[test]
    fn square_corners_lex_diagonal() {
        let pts = vec![
            Point::xy(1.0, 1.0),
            Point::xy(-1.0, 1.0),
            Point::xy(-1.0, -1.0),
            Point::xy(1.0, -1.0),
        ];
        let fd = farthest_delaunay_2d(&pts, &tol()).unwrap();
        assert_eq!(fd.cells, vec![[0, 1, 2], [0, 2, 3]]);
        // Both circumballs contain all four cocircular corners.
        for cell in &fd.cells {
            let (c, r) = circumball_of(&pts, cell, 1e-9).unwrap();
            for p in &pts {
                assert!(c.dist(p) <= r + 1e-9);
            }
        }
    }

    #[test]
    fn interior_point_excluded_and_brute_force_agreement() {
        // A convex quadrilateral plus an interior point: only the four
        // extreme points are triangulated; the chosen triangulation must be
        // the lexicographically smallest among all valid ones, checked by
        // brute force over both diagonals.
        let pts = vec![
            Point::xy(0.0, 0.0),
            Point::xy(2.0, 0.3),
            Point::xy(2.2, 2.0),
            Point::xy(-0.3, 1.7),
            Point::xy(1.0, 1.0),
        ];
        let fd = farthest_delaunay_2d(&pts, &tol()).unwrap();
        assert_eq!(fd.hull.len(), 4);
        assert!(!fd.hull.contains(&4));
        for cell in &fd.cells {
            let (c, r) = circumball_of(&pts, cell, 1e-9).unwrap();
            for p in &pts {
                assert!(c.dist(p) <= r + 1e-7, "full sphere violated at {p:?}");
            }
        }
        // Brute force: candidate triangulations of the quadrilateral.
        let hull = fd.hull.clone();
        let diag1 = vec![
            sorted3([hull[0], hull[1], hull[2]]),
            sorted3([hull[0], hull[2], hull[3]]),
        ];
        let diag2 = vec![
            sorted3([hull[0], hull[1], hull[3]]),
            sorted3([hull[1], hull[2], hull[3]]),
        ];
        let valid = |cand: &Vec<[usize; 3]>| {
            cand.iter().all(|cell| {
                let (c, r) = circumball_of(&pts, cell, 1e-9).unwrap();
                pts.iter().all(|p| c.dist(p) <= r + 1e-9)
            })
        };
        let mut best: Option<Vec<[usize; 3]>> = None;
        for mut cand in [diag1, diag2] {
            cand.sort_unstable();
            if valid(&cand) && best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
        assert_eq!(fd.cells, best.expect("some triangulation is valid"));
    }

    fn sorted3(mut t: [usize; 3]) -> [usize; 3] {
        t.sort_unstable();
        t
    }

    #[test]
    fn rank_deficient_rejected() {
        let pts = vec![Point::xy(0.0, 0.0), Point::xy(1.0, 0.0), Point::xy(2.0, 0.0)];
        assert!(matches!(
            farthest_delaunay_2d(&pts, &tol()),
            Err(StratifyError::RankDeficient { .. })
        ));
    }

    #[test]
    fn centered_simplices_equilateral_unchanged() {
        let pts = equispaced(3);
        let fd = farthest_delaunay_2d(&pts, &tol()).unwrap();
        let cs = centered_simplices(&fd, &pts, &tol()).unwrap();
        assert_eq!(cs.len(), 1);
        assert!(cs[0].circumcenter.norm() <= 1e-12);
        for (i, v) in cs[0].vertices.iter().enumerate() {
            assert!(v.approx_eq(&pts[fd.cells[0][i]], 1e-12));
        }
    }

    #[test]
    fn centered_simplices_square_share_hypotenuse_midpoint() {
        let pts = vec![
            Point::xy(1.0, 1.0),
            Point::xy(-1.0, 1.0),
            Point::xy(-1.0, -1.0),
            Point::xy(1.0, -1.0),
        ];
        let fd = farthest_delaunay_2d(&pts, &tol()).unwrap();
        let cs = centered_simplices(&fd, &pts, &tol()).unwrap();
        assert_eq!(cs.len(), 2);
        for s in &cs {
            // Right triangle: circumcenter is the hypotenuse midpoint, which
            // for these corner triangles is the square's center.
            assert!(s.circumcenter.norm() <= 1e-12);
            let d0 = s.vertices[0].norm();
            for v in &s.vertices {
                assert_relative_eq!(v.norm(), d0, epsilon = 1e-12);
            }
        }
        // Opposite sides: the vertices off the shared diagonal (corners 1 and
        // 3, local positions 1 and 2 of the sorted cells) point oppositely.
        let v1 = &cs[0].vertices[1]; // corner 1 of cell [0, 1, 2]
        let v2 = &cs[1].vertices[2]; // corner 3 of cell [0, 2, 3]
        assert!(v1.dot(v2) < 0.0);
    }

    #[test]
    fn centered_simplices_equidistant_on_random_hull() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let pts: Vec<Point> = (0..6)
                .map(|_| Point::xy(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let Ok(fd) = farthest_delaunay_2d(&pts, &tol()) else { continue };
            let cs = centered_simplices(&fd, &pts, &tol()).unwrap();
            for s in &cs {
                let d0 = s.vertices[0].norm();
                for v in &s.vertices {
                    assert_relative_eq!(v.norm(), d0, epsilon = 1e-9);
                }
                assert!(s.circumradius >= 0.0);
            }
        }
    }

    fn plank_of(points: Vec<Point>) -> MultiPlank {
        MultiPlank::from_points(&points, false, &tol()).unwrap()
    }

    #[test]
    fn classify_interior_edge_vertex() {
        let plank = plank_of(equispaced(3));
        let strat = Stratification::build(&plank, &tol()).unwrap();
        // Origin sits inside the single centered triangle.
        assert_eq!(
            strat.classify_stratum(&Point::xy(0.0, 0.0), &tol()).unwrap(),
            CellRef::Simplex(0)
        );
        // Far along the outward normal of an edge: the edge stratum. Edge
        // (v0, v1) midpoint direction, pushed far out.
        let pts = equispaced(3);
        let mid = (&pts[0] + &pts[1]).scale(0.5);
        let far = mid.scale(6.0);
        let got = strat.classify_stratum(&far, &tol()).unwrap();
        match got {
            CellRef::Edge(e) => {
                let s2 = strat.full2d().unwrap();
                assert_eq!(s2.edges[e].verts, (0, 1));
            }
            other => panic!("expected the (0,1) edge stratum, got {other:?}"),
        }
        // Far beyond a vertex inside its normal cone: the vertex stratum.
        let beyond = pts[0].scale(4.0);
        assert_eq!(strat.classify_stratum(&beyond, &tol()).unwrap(), CellRef::Vertex(0));
    }

    #[test]
    fn strata_membership_examples() {
        let plank = plank_of(equispaced(3));
        let strat = Stratification::build(&plank, &tol()).unwrap();
        assert_eq!(
            strat.contains_via_strata(&Point::xy(0.0, 0.0), &tol()).unwrap(),
            Membership::Inside
        );
        let v0 = &equispaced(3)[0];
        assert_eq!(
            strat.contains_via_strata(&v0.scale(2.0), &tol()).unwrap(),
            Membership::Outside
        );
    }

    #[test]
    fn strata_agree_with_direct_membership() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for trial in 0..8 {
            let m = 3 + (trial % 4);
            let raw: Vec<Point> = (0..m)
                .map(|_| Point::xy(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let Ok(plank) = MultiPlank::from_points(&raw, false, &tol()) else { continue };
            if plank.rank(&tol()) != 2 {
                continue;
            }
            let strat = Stratification::build(&plank, &tol()).unwrap();
            for pt in crate::sample::sample_box(
                &Point::xy(-3.0, -3.0),
                &Point::xy(3.0, 3.0),
                2000,
                trial as u64,
            ) {
                let direct = plank.contains(&pt, &tol()).unwrap();
                let via = strat.contains_via_strata(&pt, &tol()).unwrap();
                if direct != Membership::Boundary && via != Membership::Boundary {
                    assert_eq!(direct, via, "disagreement at {pt:?} on trial {trial}");
                }
            }
        }
    }

    #[test]
    fn stratum_formula_matches_classification() {
        let plank = plank_of(equispaced(5));
        let strat = Stratification::build(&plank, &tol()).unwrap();
        for pt in crate::sample::sample_box(&Point::xy(-4.0, -4.0), &Point::xy(4.0, 4.0), 500, 9) {
            let cell = strat.classify_stratum(&pt, &tol()).unwrap();
            // The direct stratum formula must agree (skip banded cases where
            // the point is essentially on a stratum boundary).
            if strat.stratum_contains(&cell, &pt, &tol()).unwrap() {
                continue;
            }
            // Allow boundary-band disagreements only.
            let margin = plank.membership_margin(&pt).abs();
            assert!(margin <= 1e-6, "classification mismatch at {pt:?} -> {cell:?}");
        }
    }

    #[test]
    fn rank1_slab_membership() {
        let plank = plank_of(vec![Point::xy(0.5, 0.5), Point::xy(-0.5, -0.5)]);
        let strat = Stratification::build(&plank, &tol()).unwrap();
        for pt in crate::sample::sample_box(&Point::xy(-2.0, -2.0), &Point::xy(2.0, 2.0), 1500, 4) {
            let direct = plank.contains(&pt, &tol()).unwrap();
            let via = strat.contains_via_strata(&pt, &tol()).unwrap();
            if direct != Membership::Boundary && via != Membership::Boundary {
                assert_eq!(direct, via, "slab disagreement at {pt:?}");
            }
        }
        assert!(matches!(
            strat.classify_stratum(&Point::xy(0.0, 0.0), &tol()),
            Err(StratifyError::Unsupported(_))
        ));
    }

    #[test]
    fn rank2_in_3d_membership_via_product() {
        // Generators in the z = 0 plane of R^3.
        let pts = vec![
            Point::xyz(1.0, 0.0, 0.0),
            Point::xyz(-0.5, 3f64.sqrt() / 2.0, 0.0),
            Point::xyz(-0.5, -(3f64.sqrt()) / 2.0, 0.0),
        ];
        let plank = plank_of(pts);
        let strat = Stratification::build(&plank, &tol()).unwrap();
        for pt in crate::sample::sample_box(
            &Point::xyz(-2.0, -2.0, -2.0),
            &Point::xyz(2.0, 2.0, 2.0),
            1500,
            6,
        ) {
            let direct = plank.contains(&pt, &tol()).unwrap();
            let via = strat.contains_via_strata(&pt, &tol()).unwrap();
            if direct != Membership::Boundary && via != Membership::Boundary {
                assert_eq!(direct, via, "product disagreement at {pt:?}");
            }
        }
    }

    #[test]
    fn full_rank_3d_unsupported() {
        let pts = vec![
            Point::xyz(1.0, 0.0, 0.0),
            Point::xyz(0.0, 1.0, 0.0),
            Point::xyz(0.0, 0.0, 1.0),
            Point::xyz(-0.5, -0.5, -0.5),
        ];
        let plank = plank_of(pts);
        assert!(matches!(
            Stratification::build(&plank, &tol()),
            Err(StratifyError::Unsupported(_))
        ));
    }

    #[test]
    fn circumradius_at_least_generating_radius() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(100);
        for _ in 0..10 {
            let raw: Vec<Point> = (0..6)
                .map(|_| Point::xy(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let Ok(plank) = MultiPlank::from_points(&raw, false, &tol()) else { continue };
            if plank.rank(&tol()) != 2 {
                continue;
            }
            let strat = Stratification::build(&plank, &tol()).unwrap();
            let s2 = strat.full2d().unwrap();
            let r = plank.inradius();
            for s in &s2.simplices {
                assert!(s.circumradius >= r - 1e-9);
            }
        }
    }

    #[test]
    fn cocircular_circle_points_get_fan_triangulation() {
        // All points on one circle: every triangulation is valid, so the
        // canonical choice is the fan from the smallest index.
        let pts = equispaced(7);
        let fd = farthest_delaunay_2d(&pts, &tol()).unwrap();
        let expected: Vec<[usize; 3]> = (1..6).map(|i| [0, i, i + 1]).collect();
        assert_eq!(fd.cells, expected);
    }
}
