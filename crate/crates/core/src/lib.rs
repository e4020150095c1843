//! Geometry kernel for unit-radius disc-polygons and their random hulls.
//!
//! The crate has three layers:
//! - `geom`, `disc_polygon`, `caps`, `hull`: the deterministic geometry
//!   (spindles, disc-caps, clipping, spindle-convex hulls);
//! - `sampling`: seedable, splittable uniform sampling inside regions;
//! - `experiments`: the Monte Carlo harness estimating vertex counts and
//!   missed areas of random disc-polygons, plus the cross-checks tying the
//!   estimators together.
//!
//! Everything runs at radius 1; inputs with a different radius are rescaled
//! once at the I/O boundary (`io`).

pub mod caps;
pub mod disc_polygon;
pub mod error;
pub mod experiments;
pub mod geom;
pub mod hull;
pub mod io;
pub mod sampling;

pub use caps::{cap_pair, disc_cap, normal_cones, support_point, t_star, DiscCap, NormalCone};
pub use disc_polygon::{reuleaux_triangle, regular_disc_polygon, Arc, DiscPolygon};
pub use error::{GeomError, PolyError};
pub use geom::{
    angle_of, min_enclosing_circle, segment_area, unit_disc_centers_through, Circle, Point,
    EPS_GEOM, EPS_TEST,
};
pub use hull::{missed_area, oracle_is_vertex, r_hull, HullResult};
pub use sampling::{sample_uniform, Region, RngStream, SmoothDisc};
