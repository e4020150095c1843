//! Error types for the geometry kernel and the experiment harness.

use thiserror::Error;

/// Failures of the low-level geometric constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("chord of length {chord} is degenerate")]
    DegenerateChord { chord: f64 },
    #[error("chord of length {chord} exceeds the unit diameter 2")]
    ChordTooLong { chord: f64 },
    #[error("empty point set")]
    EmptyInput,
    #[error("vector of norm {norm} is not a unit vector")]
    NotUnit { norm: f64 },
    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: f64 },
}

/// Failures of disc-polygon operations and hull construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("point set is not contained in a unit-radius circle (enclosing radius {radius})")]
    NotInUnitDisc { radius: f64 },
    #[error("cap height {t} is outside (0, {t_star}]")]
    HeightOutOfRange { t: f64, t_star: f64 },
    #[error("query point lies outside the disc-polygon")]
    PointsOutside,
    #[error("cap chord directions are degenerate (|u1 x u2| = {cross})")]
    DegenerateCap { cross: f64 },
    #[error("invalid disc-polygon: {reason}")]
    Invalid { reason: String },
    #[error("region has zero area")]
    ZeroArea,
    #[error("boundary is not 1-convex: minimum curvature {kappa_min} must exceed 1/r = {inv_r}")]
    NotRConvex { kappa_min: f64, inv_r: f64 },
}
