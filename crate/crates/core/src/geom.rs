//! Scalar and circle primitives shared by the rest of the kernel.
//!
//! Everything here works at radius 1; callers rescale their inputs once at
//! the boundary of the system.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::GeomError;

/// Tolerance for geometric constructions (circle centers, splits, merges).
pub const EPS_GEOM: f64 = 1e-12;
/// Tolerance for membership and containment tests.
pub const EPS_TEST: f64 = 1e-9;

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector at angle `phi` measured from the positive x-axis.
    pub fn from_angle(phi: f64) -> Self {
        Point::new(phi.cos(), phi.sin())
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product; positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Rotation by +90 degrees.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A circle given by center and radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Self {
        Circle { center, radius }
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.center.dist(p) <= self.radius + tol
    }
}

/// Normalize an angle into `[0, 2*pi)`.
pub fn normalize_angle(phi: f64) -> f64 {
    let mut a = phi % TAU;
    if a < 0.0 {
        a += TAU;
    }
    if a >= TAU {
        a = 0.0;
    }
    a
}

/// Counterclockwise angular distance from `from` to `to`, in `[0, 2*pi)`.
pub fn ccw_delta(from: f64, to: f64) -> f64 {
    normalize_angle(to - from)
}

/// Angle of a unit vector, in `[0, 2*pi)`.
///
/// Fails with `NotUnit` when `u` is farther than `EPS_TEST` from the unit
/// circle.
pub fn angle_of(u: Point) -> Result<f64, GeomError> {
    let n = u.norm();
    if (n - 1.0).abs() > EPS_TEST {
        return Err(GeomError::NotUnit { norm: n });
    }
    Ok(normalize_angle(u.y.atan2(u.x)))
}

/// Centers of the two unit circles passing through `x` and `y`.
///
/// The first center lies to the left of the directed line `x -> y`, the
/// second to the right; for a diameter chord (`|x - y| = 2`) both coincide
/// with the midpoint.
pub fn unit_disc_centers_through(x: Point, y: Point) -> Result<(Point, Point), GeomError> {
    let chord = x.dist(y);
    if chord <= 1e-14 {
        return Err(GeomError::DegenerateChord { chord });
    }
    if chord > 2.0 + EPS_GEOM {
        return Err(GeomError::ChordTooLong { chord });
    }
    let mid = (x + y) * 0.5;
    let dir = (y - x) * (1.0 / chord);
    let half = (chord * 0.5).min(1.0);
    let offset = (1.0 - half * half).max(0.0).sqrt();
    let n = dir.perp();
    Ok((mid + n * offset, mid - n * offset))
}

/// Area of the circular segment of a unit circle cut off by a chord of the
/// given length: `(theta - sin(theta)) / 2` with `theta = 2*asin(chord/2)`.
pub fn segment_area(chord: f64) -> Result<f64, GeomError> {
    if !(0.0..=2.0 + EPS_GEOM).contains(&chord) {
        return Err(GeomError::OutOfRange {
            what: "chord",
            value: chord,
        });
    }
    let half = (chord * 0.5).min(1.0);
    let theta = 2.0 * half.asin();
    Ok(segment_area_from_sweep(theta))
}

/// Segment area of a unit arc with the given sweep angle.
pub fn segment_area_from_sweep(sweep: f64) -> f64 {
    0.5 * (sweep - sweep.sin())
}

/// Intersection points of two unit circles centered at `c1` and `c2`.
///
/// Returns `None` when the circles are disjoint, (near-)coincident, or
/// separated beyond tolerance; otherwise the two crossings, which coincide
/// at exact tangency.
pub fn unit_circle_intersections(c1: Point, c2: Point) -> Option<(Point, Point)> {
    let d = c1.dist(c2);
    if d <= EPS_GEOM || d > 2.0 + EPS_GEOM {
        return None;
    }
    let dir = (c2 - c1) * (1.0 / d);
    let a = (d * 0.5).min(1.0);
    let h = (1.0 - a * a).max(0.0).sqrt();
    let base = c1 + dir * (d * 0.5);
    let off = dir.perp() * h;
    Some((base + off, base - off))
}

/// Smallest circle enclosing all points.
///
/// Incremental Welzl-style construction with a deterministic internal
/// shuffle, so results depend only on the input order. Expected linear time.
pub fn min_enclosing_circle(points: &[Point]) -> Result<Circle, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    let mut pts = points.to_vec();
    // Deterministic Fisher-Yates so the expected-linear bound holds without
    // depending on ambient RNG state.
    let mut state: u64 = 0x9e3779b97f4a7c15;
    for i in (1..pts.len()).rev() {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let j = (state >> 33) as usize % (i + 1);
        pts.swap(i, j);
    }

    let mut c = Circle::new(pts[0], 0.0);
    for i in 1..pts.len() {
        if !c.contains(pts[i], EPS_GEOM) {
            c = circle_with_one_boundary(&pts[..i], pts[i]);
        }
    }
    Ok(c)
}

fn circle_with_one_boundary(points: &[Point], p: Point) -> Circle {
    let mut c = Circle::new(p, 0.0);
    for i in 0..points.len() {
        if !c.contains(points[i], EPS_GEOM) {
            c = if c.radius == 0.0 {
                diameter_circle(p, points[i])
            } else {
                circle_with_two_boundary(&points[..i], p, points[i])
            };
        }
    }
    c
}

fn circle_with_two_boundary(points: &[Point], p: Point, q: Point) -> Circle {
    let circ = diameter_circle(p, q);
    let pq = q - p;
    let mut left: Option<Circle> = None;
    let mut right: Option<Circle> = None;
    for &r in points {
        if circ.contains(r, EPS_GEOM) {
            continue;
        }
        let cross = pq.cross(r - p);
        let Some(c) = circumcircle(p, q, r) else {
            continue;
        };
        let side = pq.cross(c.center - p);
        if cross > 0.0 && left.map_or(true, |l| side > pq.cross(l.center - p)) {
            left = Some(c);
        } else if cross < 0.0 && right.map_or(true, |rg| side < pq.cross(rg.center - p)) {
            right = Some(c);
        }
    }
    match (left, right) {
        (None, None) => circ,
        (Some(l), None) => l,
        (None, Some(r)) => r,
        (Some(l), Some(r)) => {
            if l.radius <= r.radius {
                l
            } else {
                r
            }
        }
    }
}

fn diameter_circle(a: Point, b: Point) -> Circle {
    let c = (a + b) * 0.5;
    Circle::new(c, c.dist(a).max(c.dist(b)))
}

fn circumcircle(a: Point, b: Point, c: Point) -> Option<Circle> {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if d == 0.0 {
        return None;
    }
    let a2 = a.norm_sq();
    let b2 = b.norm_sq();
    let c2 = c.norm_sq();
    let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    let center = Point::new(ux, uy);
    let r = center.dist(a).max(center.dist(b)).max(center.dist(c));
    Some(Circle::new(center, r))
}

/// Slope and intercept of the least-squares line through `(x, y)` pairs.
pub fn ols_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

pub const UNIT_DISC_AREA: f64 = PI;
