use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use smallvec::SmallVec;

/// A point (or vector) in `R^n`. Geometric constructions require `2 <= n <= 3`;
/// membership predicates accept any `n >= 2`.
#[derive(Clone, PartialEq)]
pub struct Point {
    coords: SmallVec<[f64; 3]>,
}

impl Point {
    pub fn new(coords: impl Into<SmallVec<[f64; 3]>>) -> Self {
        Point { coords: coords.into() }
    }

    pub fn from_slice(coords: &[f64]) -> Self {
        Point { coords: SmallVec::from_slice(coords) }
    }

    pub fn xy(x: f64, y: f64) -> Self {
        Point { coords: SmallVec::from_slice(&[x, y]) }
    }

    pub fn xyz(x: f64, y: f64, z: f64) -> Self {
        Point { coords: SmallVec::from_slice(&[x, y, z]) }
    }

    pub fn zero(dim: usize) -> Self {
        Point { coords: SmallVec::from_elem(0.0, dim) }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub fn dot(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist_sq(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn scale(&self, s: f64) -> Point {
        Point { coords: self.coords.iter().map(|c| c * s).collect() }
    }

    /// `self + s * other`, the only compound update the algorithms need.
    pub fn axpy(&self, s: f64, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + s * b)
                .collect(),
        }
    }

    pub fn normalized(&self) -> Option<Point> {
        let n = self.norm();
        if n <= 0.0 {
            None
        } else {
            Some(self.scale(1.0 / n))
        }
    }

    pub fn approx_eq(&self, other: &Point, eps: f64) -> bool {
        self.dim() == other.dim() && self.dist(other) <= eps
    }
}

impl Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point{:?}", self.coords.as_slice())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Point> for &Point {
            type Output = Point;
            fn $method(self, rhs: &Point) -> Point {
                debug_assert_eq!(self.dim(), rhs.dim());
                Point {
                    coords: self
                        .coords
                        .iter()
                        .zip(&rhs.coords)
                        .map(|(a, b)| a $op b)
                        .collect(),
                }
            }
        }
        impl $trait<Point> for Point {
            type Output = Point;
            fn $method(self, rhs: Point) -> Point {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Point> for Point {
            type Output = Point;
            fn $method(self, rhs: &Point) -> Point {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);

impl Mul<f64> for &Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        self.scale(s)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        self.scale(-1.0)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        self.scale(-1.0)
    }
}

/// 2D cross product (z-component of the 3D cross of the embedded vectors).
pub fn cross2(a: &Point, b: &Point) -> f64 {
    debug_assert_eq!(a.dim(), 2);
    debug_assert_eq!(b.dim(), 2);
    a[0] * b[1] - a[1] * b[0]
}

/// Counterclockwise rotation of a 2D vector by 90 degrees.
pub fn perp2(p: &Point) -> Point {
    debug_assert_eq!(p.dim(), 2);
    Point::xy(-p[1], p[0])
}

/// A Euclidean ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Ball { center, radius }
    }

    /// Closed containment with slack `eps`.
    pub fn contains(&self, p: &Point, eps: f64) -> bool {
        self.center.dist(p) <= self.radius + eps
    }
}

/// Three-valued membership verdict. `Boundary` means the point lies within
/// the `eps_geom` band of the defining inequalities; closed sets count it as
/// contained, open sets do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

impl Membership {
    /// Classify a signed margin: positive deep inside, negative deep outside.
    pub fn from_margin(margin: f64, eps: f64) -> Membership {
        if margin > eps {
            Membership::Inside
        } else if margin < -eps {
            Membership::Outside
        } else {
            Membership::Boundary
        }
    }
}

/// Numerical slack shared across the crate: `eps_geom` bounds geometric
/// predicate bands, `eps_opt` bounds optimizer convergence.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerance {
    pub eps_geom: f64,
    pub eps_opt: f64,
}

impl Tolerance {
    /// Requires `0 < eps_geom < eps_opt < 1`.
    pub fn new(eps_geom: f64, eps_opt: f64) -> Option<Self> {
        if 0.0 < eps_geom && eps_geom < eps_opt && eps_opt < 1.0 {
            Some(Tolerance { eps_geom, eps_opt })
        } else {
            None
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps_geom: 1e-9, eps_opt: 1e-6 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_arithmetic() {
        let a = Point::xy(1.0, 2.0);
        let b = Point::xy(3.0, -1.0);
        assert_eq!((&a + &b).coords(), &[4.0, 1.0]);
        assert_eq!((&a - &b).coords(), &[-2.0, 3.0]);
        assert_eq!(a.dot(&b), 1.0);
        assert_eq!(cross2(&a, &b), -7.0);
        assert_eq!(perp2(&Point::xy(1.0, 0.0)), Point::xy(0.0, 1.0));
    }

    #[test]
    fn membership_banding() {
        assert_eq!(Membership::from_margin(1e-3, 1e-9), Membership::Inside);
        assert_eq!(Membership::from_margin(-1e-3, 1e-9), Membership::Outside);
        assert_eq!(Membership::from_margin(1e-12, 1e-9), Membership::Boundary);
    }

    #[test]
    fn tolerance_ordering_enforced() {
        assert!(Tolerance::new(1e-9, 1e-6).is_some());
        assert!(Tolerance::new(1e-6, 1e-9).is_none());
        assert!(Tolerance::new(0.0, 0.5).is_none());
        assert!(Tolerance::new(1e-3, 1.0).is_none());
    }
}
