//! Geometric hitting sets for segments, rays and lines of few orientations.
//!
//! The crate collects exact solvers, constant-factor approximations and
//! LP-rounding schemes for hitting sets of axis-parallel and few-slope
//! objects, all over exact rational coordinates. An exact branch-and-bound
//! [`oracle`] and the random and 3SAT-based [`instance`] generators back the
//! test suite.
//!
//! | module | problem |
//! |---|---|
//! | [`stab1d`] | intervals on a line (exact sweep) |
//! | [`lines`] | lines of two slopes (exact) and three slopes (7/5 greedy) |
//! | [`hrvl`] | vertical lines + horizontal rays (exact) |
//! | [`vlhs`] | vertical lines or downward rays + horizontal segments (5/3) |
//! | [`lp`] | unions of segments via LP rounding (4, 10/3, k·r) |
//! | [`trifree`] | non-overlapping triangle-free segments (3, linear time) |

pub mod geom;
pub mod hrvl;
pub mod instance;
pub mod lines;
pub mod lp;
pub mod matching;
pub mod oracle;
pub mod solution;
pub mod solve;
pub mod stab1d;
pub mod trifree;
pub mod vlhs;

pub use geom::{intersect, GeomObject, IntersectionResult, Orientation, Point, Rational};
pub use instance::{Instance, ObjectUnion};
pub use solution::{HitPoint, HitRole, HittingSet};
