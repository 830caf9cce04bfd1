use super::point::Point;

/// An m-fan in the plane: `m >= 2` rays from one apex with equal angles
/// `2*pi/m` between consecutive rays. `rotation` is the direction of the
/// first ray.
#[derive(Debug, Clone, PartialEq)]
pub struct Fan {
    pub apex: Point,
    pub arms: usize,
    pub rotation: f64,
}

impl Fan {
    pub fn new(apex: Point, arms: usize, rotation: f64) -> Option<Self> {
        if arms < 2 || apex.dim() != 2 || !apex.is_finite() || !rotation.is_finite() {
            return None;
        }
        Some(Fan { apex, arms, rotation })
    }

    pub fn centered(arms: usize, rotation: f64) -> Option<Self> {
        Self::new(Point::xy(0.0, 0.0), arms, rotation)
    }

    /// Unit direction of ray `j`.
    pub fn ray_dir(&self, j: usize) -> (f64, f64) {
        let a = self.rotation + 2.0 * std::f64::consts::PI * j as f64 / self.arms as f64;
        (a.cos(), a.sin())
    }
}

/// Distance from a point to the nearest ray of the fan.
pub fn dist_to_fan(x: &Point, fan: &Fan) -> f64 {
    debug_assert_eq!(x.dim(), 2);
    let px = x[0] - fan.apex[0];
    let py = x[1] - fan.apex[1];
    let mut best = f64::INFINITY;
    for j in 0..fan.arms {
        let (ux, uy) = fan.ray_dir(j);
        let t = (px * ux + py * uy).max(0.0);
        let dx = px - t * ux;
        let dy = py - t * uy;
        let d2 = dx * dx + dy * dy;
        if d2 < best {
            best = d2;
        }
    }
    best.sqrt()
}
