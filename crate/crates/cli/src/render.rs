//! SVG rendering of 2D scenes. The multi-plank region is drawn as the zero
//! contour of the signed membership-margin field (marching squares on a
//! clipped viewport), which works identically for Euclidean and gauge
//! membership. Output bytes are deterministic for a fixed scene and flags.

use std::fmt::Write as _;

use multiplank::geom::Point;
use multiplank::stratify::Stratification;

use crate::commands::Opts;
use crate::scene::Scene;
use crate::CliError;

const CANVAS: f64 = 800.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Zero-contour segments of a scalar field over `[x0, x1] x [y0, y1]`,
/// sampled on a `res x res` cell grid. Saddle cells split on the center
/// average, deterministically.
pub fn margin_contour(
    f: &dyn Fn(f64, f64) -> f64,
    bounds: (f64, f64, f64, f64),
    res: usize,
) -> Vec<[f64; 4]> {
    let (x0, y0, x1, y1) = bounds;
    let nx = res + 1;
    let dx = (x1 - x0) / res as f64;
    let dy = (y1 - y0) / res as f64;
    let mut values = vec![0.0f64; nx * nx];
    for j in 0..nx {
        for i in 0..nx {
            values[j * nx + i] = f(x0 + i as f64 * dx, y0 + j as f64 * dy);
        }
    }
    let at = |i: usize, j: usize| values[j * nx + i];
    let mut segments = Vec::new();
    for j in 0..res {
        for i in 0..res {
            let v00 = at(i, j);
            let v10 = at(i + 1, j);
            let v11 = at(i + 1, j + 1);
            let v01 = at(i, j + 1);
            let gx = x0 + i as f64 * dx;
            let gy = y0 + j as f64 * dy;
            let lerp = |a: f64, b: f64| a / (a - b);
            let mut pts: Vec<(u8, f64, f64)> = Vec::with_capacity(4);
            if (v00 > 0.0) != (v10 > 0.0) {
                pts.push((0, gx + dx * lerp(v00, v10), gy));
            }
            if (v10 > 0.0) != (v11 > 0.0) {
                pts.push((1, gx + dx, gy + dy * lerp(v10, v11)));
            }
            if (v01 > 0.0) != (v11 > 0.0) {
                pts.push((2, gx + dx * lerp(v01, v11), gy + dy));
            }
            if (v00 > 0.0) != (v01 > 0.0) {
                pts.push((3, gx, gy + dy * lerp(v00, v01)));
            }
            match pts.len() {
                2 => segments.push([pts[0].1, pts[0].2, pts[1].1, pts[1].2]),
                4 => {
                    let center = 0.25 * (v00 + v10 + v11 + v01);
                    // Edge order is bottom, right, top, left.
                    let pair = |a: usize, b: usize, segs: &mut Vec<[f64; 4]>| {
                        segs.push([pts[a].1, pts[a].2, pts[b].1, pts[b].2]);
                    };
                    if (center > 0.0) == (v00 > 0.0) {
                        pair(0, 1, &mut segments);
                        pair(2, 3, &mut segments);
                    } else {
                        pair(0, 3, &mut segments);
                        pair(1, 2, &mut segments);
                    }
                }
                _ => {}
            }
        }
    }
    segments
}

/// Count connected contour components by snapping endpoints to a grid.
pub fn contour_components(segments: &[[f64; 4]], snap: f64) -> usize {
    use std::collections::BTreeMap;
    let key = |x: f64, y: f64| ((x / snap).round() as i64, (y / snap).round() as i64);
    let mut ids: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut parent: Vec<usize> = Vec::new();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut node = |k: (i64, i64), parent: &mut Vec<usize>, ids: &mut BTreeMap<(i64, i64), usize>| {
        *ids.entry(k).or_insert_with(|| {
            parent.push(parent.len());
            parent.len() - 1
        })
    };
    for s in segments {
        let a = node(key(s[0], s[1]), &mut parent, &mut ids);
        let b = node(key(s[2], s[3]), &mut parent, &mut ids);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut roots: Vec<usize> = (0..parent.len()).map(|i| find(&mut parent, i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

struct Mapper {
    x0: f64,
    y0: f64,
    scale: f64,
}

impl Mapper {
    fn x(&self, wx: f64) -> f64 {
        (wx - self.x0) * self.scale
    }
    fn y(&self, wy: f64) -> f64 {
        CANVAS - (wy - self.y0) * self.scale
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.4}")
}

pub fn render_scene(scene: &Scene, opts: &Opts) -> Result<String, CliError> {
    if scene.dim != 2 {
        return Err(CliError::input("render is a 2D command"));
    }
    let tol = &opts.tol;
    let planks = scene.planks(opts.closed, tol)?;
    let fans = scene.fan_list()?;
    let gauge = scene.gauge_polygon(tol)?;
    let mut bodies = Vec::new();
    for (name, _) in scene.bodies.iter() {
        bodies.push((name.clone(), scene.required_body(name, tol)?));
    }

    // Viewport: everything the scene mentions, padded.
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut absorb = |p: &Point| {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    };
    for plank in &planks {
        let r = 2.5 * plank.inradius().max(0.5);
        let t = plank.translation();
        absorb(&Point::xy(t[0] - r, t[1] - r));
        absorb(&Point::xy(t[0] + r, t[1] + r));
    }
    for (_, body) in &bodies {
        if let Ok((blo, bhi)) = body.bbox(tol) {
            absorb(&blo);
            absorb(&bhi);
        }
    }
    for fan in &fans {
        absorb(&Point::xy(fan.apex[0] - 2.0, fan.apex[1] - 2.0));
        absorb(&Point::xy(fan.apex[0] + 2.0, fan.apex[1] + 2.0));
    }
    if let Some(g) = &gauge {
        for v in g.vertices() {
            absorb(&v.scale(1.5));
        }
    }
    if lo[0] > hi[0] {
        lo = [-2.0, -2.0];
        hi = [2.0, 2.0];
    }
    let cx = 0.5 * (lo[0] + hi[0]);
    let cy = 0.5 * (lo[1] + hi[1]);
    let half = 0.55 * ((hi[0] - lo[0]).max(hi[1] - lo[1])).max(1e-3);
    let bounds = (cx - half, cy - half, cx + half, cy + half);
    let map = Mapper { x0: bounds.0, y0: bounds.1, scale: CANVAS / (2.0 * half) };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">",
        c = CANVAS
    );
    let _ = writeln!(svg, "<rect width=\"{c}\" height=\"{c}\" fill=\"#ffffff\"/>", c = CANVAS);

    // Axes.
    let _ = writeln!(svg, "<g id=\"axes\" stroke=\"#d0d0d0\" stroke-width=\"1\">");
    let _ = writeln!(
        svg,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        fmt(map.x(bounds.0)),
        fmt(map.y(0.0)),
        fmt(map.x(bounds.2)),
        fmt(map.y(0.0))
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        fmt(map.x(0.0)),
        fmt(map.y(bounds.1)),
        fmt(map.x(0.0)),
        fmt(map.y(bounds.3))
    );
    let _ = writeln!(svg, "</g>");

    // Bodies.
    let _ = writeln!(svg, "<g id=\"bodies\" fill=\"#f0f4fa\" stroke=\"#51616e\" stroke-width=\"1.5\">");
    for (_, body) in &bodies {
        if let Some(verts) = body.polygon_vertices() {
            let pts: Vec<String> =
                verts.iter().map(|v| format!("{},{}", fmt(map.x(v[0])), fmt(map.y(v[1])))).collect();
            let _ = writeln!(svg, "<polygon points=\"{}\"/>", pts.join(" "));
        }
    }
    let _ = writeln!(svg, "</g>");

    // Multi-plank contours.
    let _ = writeln!(svg, "<g id=\"multiplank\" fill=\"none\" stroke-width=\"2\">");
    for (i, plank) in planks.iter().enumerate() {
        let field = |x: f64, y: f64| plank.membership_margin(&Point::xy(x, y));
        let segs = margin_contour(&field, bounds, opts.resolution);
        let mut d = String::new();
        for s in &segs {
            let _ = write!(
                d,
                "M{} {} L{} {} ",
                fmt(map.x(s[0])),
                fmt(map.y(s[1])),
                fmt(map.x(s[2])),
                fmt(map.y(s[3]))
            );
        }
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(svg, "<path stroke=\"{color}\" d=\"{}\"/>", d.trim_end());
    }
    let _ = writeln!(svg, "</g>");

    // Stratification skeleton.
    if opts.strata {
        let _ = writeln!(svg, "<g id=\"strata\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 3\">");
        let ray_len = 4.0 * half;
        for plank in &planks {
            let Ok(strat) = Stratification::build(plank, tol) else { continue };
            let Some(s2) = strat.full2d() else { continue };
            let t = plank.translation();
            for s in &s2.simplices {
                for (a, b) in [(0usize, 1usize), (1, 2), (0, 2)] {
                    let pa = &s.vertices[a] + t;
                    let pb = &s.vertices[b] + t;
                    let _ = writeln!(
                        svg,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                        fmt(map.x(pa[0])),
                        fmt(map.y(pa[1])),
                        fmt(map.x(pb[0])),
                        fmt(map.y(pb[1]))
                    );
                }
            }
            for stratum in &s2.vertex_strata {
                for piece in &stratum.pieces {
                    let apex = &piece.face[0] + t;
                    for ray in &piece.cone_rays {
                        let tip = apex.axpy(ray_len, ray);
                        let _ = writeln!(
                            svg,
                            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                            fmt(map.x(apex[0])),
                            fmt(map.y(apex[1])),
                            fmt(map.x(tip[0])),
                            fmt(map.y(tip[1]))
                        );
                    }
                }
            }
        }
        let _ = writeln!(svg, "</g>");
    }

    // Fans.
    let _ = writeln!(svg, "<g id=\"fans\" stroke=\"#333333\" stroke-width=\"1.5\">");
    for fan in &fans {
        for j in 0..fan.arms {
            let (ux, uy) = fan.ray_dir(j);
            let tip = Point::xy(fan.apex[0] + 4.0 * half * ux, fan.apex[1] + 4.0 * half * uy);
            let _ = writeln!(
                svg,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                fmt(map.x(fan.apex[0])),
                fmt(map.y(fan.apex[1])),
                fmt(map.x(tip[0])),
                fmt(map.y(tip[1]))
            );
        }
    }
    let _ = writeln!(svg, "</g>");

    // Gauge polygon.
    if let Some(g) = &gauge {
        let _ = writeln!(svg, "<g id=\"gauge\" fill=\"none\" stroke=\"#117733\" stroke-width=\"1.5\">");
        let pts: Vec<String> = g
            .vertices()
            .iter()
            .map(|v| format!("{},{}", fmt(map.x(v[0])), fmt(map.y(v[1]))))
            .collect();
        let _ = writeln!(svg, "<polygon points=\"{}\"/>", pts.join(" "));
        let _ = writeln!(svg, "</g>");
    }

    // Minimum enclosing circles and generating points.
    let _ = writeln!(svg, "<g id=\"meb\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"2 2\">");
    for plank in &planks {
        let t = plank.translation();
        let _ = writeln!(
            svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            fmt(map.x(t[0])),
            fmt(map.y(t[1])),
            fmt(plank.inradius() * map.scale)
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "<g id=\"points\" fill=\"#000000\">");
    for plank in &planks {
        let t = plank.translation();
        for p in plank.generating_set().points() {
            let q = p + t;
            let _ = writeln!(
                svg,
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\"/>",
                fmt(map.x(q[0])),
                fmt(map.y(q[1]))
            );
        }
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contour_of_disk_margin() {
        // f > 0 inside the unit circle: the contour approximates it.
        let f = |x: f64, y: f64| 1.0 - (x * x + y * y).sqrt();
        let segs = margin_contour(&f, (-2.0, -2.0, 2.0, 2.0), 128);
        assert!(!segs.is_empty());
        for s in &segs {
            for (x, y) in [(s[0], s[1]), (s[2], s[3])] {
                let r = (x * x + y * y).sqrt();
                assert!((r - 1.0).abs() < 0.05, "contour point off the circle: {r}");
            }
        }
        assert_eq!(contour_components(&segs, 1e-3), 1);
    }

    #[test]
    fn contour_components_of_two_blobs() {
        let f = |x: f64, y: f64| {
            let d1 = 0.5 - ((x - 1.0).powi(2) + y * y).sqrt();
            let d2 = 0.5 - ((x + 1.0).powi(2) + y * y).sqrt();
            d1.max(d2)
        };
        let segs = margin_contour(&f, (-3.0, -3.0, 3.0, 3.0), 128);
        assert_eq!(contour_components(&segs, 1e-3), 2);
    }
}
