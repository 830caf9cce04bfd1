//! Exact-tolerance Euclidean primitives shared by every other module.

mod fan;
mod hull;
mod linalg;
mod meb;
mod point;
mod polytope;

pub mod lp;

pub use fan::{dist_to_fan, Fan};
pub use hull::{convex_hull_2d, convex_hull_2d_indices};
pub use linalg::{affine_rank, circumcenter, diameter, orthonormal_span};
pub use meb::min_enclosing_ball;
pub use point::{cross2, perp2, Ball, Membership, Point, Tolerance};
pub use polytope::{
    chebyshev_ball, chebyshev_ball_hrep, chord_interval, clip_polygon, distance_to_polyhedron,
    polygon_area, polytope_slice_inradius, Halfspace, PolytopeBody,
};

use thiserror::Error;

/// Errors from the geometric primitives.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("empty input point set")]
    EmptyInput,
    #[error("points have mixed dimensions")]
    MixedDimensions,
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {0} is outside the supported range for this construction")]
    UnsupportedDimension(usize),
    #[error("degenerate simplex: vertices are affinely dependent")]
    DegenerateSimplex,
    #[error("body is unbounded")]
    Unbounded,
    #[error("body has empty interior")]
    EmptyInterior,
    #[error("invalid polygon: {0}")]
    InvalidPolygon(&'static str),
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("linear program failed: {0}")]
    Lp(#[from] lp::LpError),
}
