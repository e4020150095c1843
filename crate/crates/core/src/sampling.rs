//! Deterministic uniform sampling inside disc-polygons and smooth regions.
//!
//! Randomness comes from ChaCha8 keyed by a 64-bit seed, with one
//! independent stream per trial (`set_stream`). The same `(seed, stream_id)`
//! pair reproduces the same draws on every platform and under any degree of
//! parallelism, which is what makes the experiment harness byte-stable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::disc_polygon::DiscPolygon;
use crate::error::PolyError;
use crate::geom::Point;

/// A named position in the global stream space: `seed` selects the key,
/// `stream_id` the per-trial stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngStream { seed, stream_id }
    }

    /// The generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// A smooth convex region given by a parametric boundary.
///
/// Only boundaries with minimum curvature above 1 slide freely in a unit
/// circle, which the sampling and experiment layers require.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothDisc {
    Circle { radius: f64 },
    Ellipse { a: f64, b: f64 },
}

impl SmoothDisc {
    pub fn area(&self) -> f64 {
        match *self {
            SmoothDisc::Circle { radius } => std::f64::consts::PI * radius * radius,
            SmoothDisc::Ellipse { a, b } => std::f64::consts::PI * a * b,
        }
    }

    pub fn contains(&self, q: Point) -> bool {
        match *self {
            SmoothDisc::Circle { radius } => q.norm_sq() <= radius * radius,
            SmoothDisc::Ellipse { a, b } => {
                let u = q.x / a;
                let v = q.y / b;
                u * u + v * v <= 1.0
            }
        }
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        match *self {
            SmoothDisc::Circle { radius } => {
                (Point::new(-radius, -radius), Point::new(radius, radius))
            }
            SmoothDisc::Ellipse { a, b } => (Point::new(-a, -b), Point::new(a, b)),
        }
    }

    /// Boundary point at parameter `theta` in `[0, 2*pi)`.
    pub fn boundary(&self, theta: f64) -> Point {
        match *self {
            SmoothDisc::Circle { radius } => Point::from_angle(theta) * radius,
            SmoothDisc::Ellipse { a, b } => Point::new(a * theta.cos(), b * theta.sin()),
        }
    }

    /// Parametrization speed `|gamma'(theta)|`.
    pub fn speed(&self, theta: f64) -> f64 {
        match *self {
            SmoothDisc::Circle { radius } => radius,
            SmoothDisc::Ellipse { a, b } => {
                let s = theta.sin();
                let c = theta.cos();
                (a * a * s * s + b * b * c * c).sqrt()
            }
        }
    }

    /// Curvature at parameter `theta`.
    pub fn curvature(&self, theta: f64) -> f64 {
        match *self {
            SmoothDisc::Circle { radius } => 1.0 / radius,
            SmoothDisc::Ellipse { a, b } => {
                let s = theta.sin();
                let c = theta.cos();
                a * b / (a * a * s * s + b * b * c * c).powf(1.5)
            }
        }
    }

    /// Minimum boundary curvature (attained at the flattest point).
    pub fn min_curvature(&self) -> f64 {
        match *self {
            SmoothDisc::Circle { radius } => 1.0 / radius,
            SmoothDisc::Ellipse { a, b } => a.min(b) / (a.max(b) * a.max(b)),
        }
    }

    pub fn validate(&self) -> Result<(), PolyError> {
        let ok = match *self {
            SmoothDisc::Circle { radius } => radius.is_finite() && radius > 0.0,
            SmoothDisc::Ellipse { a, b } => a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(PolyError::ZeroArea)
        }
    }
}

/// Either kind of sampling region.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Poly(DiscPolygon),
    Smooth(SmoothDisc),
}

impl Region {
    pub fn area(&self) -> f64 {
        match self {
            Region::Poly(p) => p.area(),
            Region::Smooth(s) => s.area(),
        }
    }

    pub fn contains(&self, q: Point) -> bool {
        match self {
            Region::Poly(p) => p.contains(q),
            Region::Smooth(s) => s.contains(q),
        }
    }

    /// Tight axis-aligned bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        match self {
            Region::Poly(p) => p.bounding_box(),
            Region::Smooth(s) => s.bounding_box(),
        }
    }
}

/// Draw `n` i.i.d. uniform points from the region by rejection from its
/// tight bounding box.
pub fn sample_uniform(region: &Region, stream: RngStream, n: usize) -> Result<Vec<Point>, PolyError> {
    if region.area() <= 0.0 {
        return Err(PolyError::ZeroArea);
    }
    let (lo, hi) = region.bounding_box();
    let w = hi.x - lo.x;
    let h = hi.y - lo.y;
    let mut rng = stream.rng();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let q = Point::new(lo.x + rng.gen::<f64>() * w, lo.y + rng.gen::<f64>() * h);
        if region.contains(q) {
            out.push(q);
        }
    }
    Ok(out)
}
