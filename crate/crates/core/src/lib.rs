//! Multi-planks and their covering inequalities.
//!
//! A multi-plank is the complement of the union of shifted farthest-point
//! Voronoi cells of a finite generating set. This crate builds them, computes
//! their anti-Voronoi/anti-Delaunay structure and intrinsic inradii, and
//! verifies the covering inequalities they satisfy (Bang/Kadets interpolation,
//! pizza-cutter bounds) numerically at desk scale in 2D and 3D.
//!
//! Modules map onto the main concepts:
//! - [`geom`]: Euclidean primitives (points, balls, polytopes, enclosing
//!   balls, Chebyshev centers, hulls, fans).
//! - [`multiplank`]: generating sets and multi-plank membership by both
//!   equivalent definitions.
//! - [`stratify`]: farthest-point Delaunay triangulations and the stratum
//!   decomposition of a full-rank 2D multi-plank.
//! - [`inradii`]: upper/lower intrinsic inradii of convex bodies and the
//!   inscribed-ball radius of a multi-plank.
//! - [`experiments`]: Bang sets, farthest-point escape, covering checks,
//!   the pizza-cutter simulator, fan families, and the two-multi-plank disk
//!   cover.
//! - [`normed`]: the same machinery over asymmetric polygonal gauges in 2D.

pub mod experiments;
pub mod geom;
pub mod inradii;
pub mod multiplank;
pub mod normed;
pub mod stratify;

mod opt;
pub mod sample;

pub use geom::{Ball, Fan, GeomError, Halfspace, Membership, Point, PolytopeBody, Tolerance};
pub use multiplank::{GeneratingSet, MultiPlank, MultiPlankError};

pub use sample::{halton, sample_ball_2d, sample_body, sample_box, unit_dirs_2d, unit_dirs_3d};
