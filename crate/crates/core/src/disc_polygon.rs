//! Disc-polygons: convex regions bounded by unit circular arcs.
//!
//! One representation covers every region the kernel touches: hulls,
//! spindles, clipped remainders and the degenerate single-point and empty
//! cases. A disc-polygon with `k >= 2` vertices is exactly the intersection
//! of its `k` edge discs, which is what membership, clipping and the cap
//! machinery lean on.

use std::f64::consts::TAU;

use crate::error::{GeomError, PolyError};
use crate::geom::{
    ccw_delta, normalize_angle, segment_area_from_sweep, unit_circle_intersections,
    unit_disc_centers_through, Point, EPS_GEOM, EPS_TEST,
};

/// Points closer than this are treated as the same vertex when stitching
/// clipped boundaries.
const MERGE_EPS: f64 = 1e-10;

/// One directed boundary arc from `start` to `end`, counterclockwise around
/// `center`. Sweeps are always in `(0, pi]` for outward-bulging arcs.
#[derive(Debug, Clone, Copy)]
pub struct Arc {
    pub start: Point,
    pub end: Point,
    pub center: Point,
    pub start_angle: f64,
    pub sweep: f64,
}

impl Arc {
    /// Point on the arc at the given angular offset from the start.
    pub fn point_at(&self, offset: f64) -> Point {
        self.center + Point::from_angle(self.start_angle + offset)
    }
}

/// A unit-radius disc-polygon, including the degenerate cases.
#[derive(Debug, Clone, PartialEq)]
pub enum DiscPolygon {
    /// Empty region (e.g. a clipping result with empty interior).
    Empty,
    /// A single point; the hull of one sample.
    Point(Point),
    /// `k >= 2` vertices in counterclockwise order. `centers[i]` is the
    /// center of the unit arc from `vertices[i]` to `vertices[i+1 mod k]`
    /// and lies on the inner (left) side of that directed chord.
    Arcs {
        vertices: Vec<Point>,
        centers: Vec<Point>,
    },
}

impl DiscPolygon {
    /// Number of vertices (0 for the empty region).
    pub fn f0(&self) -> usize {
        match self {
            DiscPolygon::Empty => 0,
            DiscPolygon::Point(_) => 1,
            DiscPolygon::Arcs { vertices, .. } => vertices.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, DiscPolygon::Empty)
    }

    pub fn vertices(&self) -> &[Point] {
        match self {
            DiscPolygon::Empty => &[],
            DiscPolygon::Point(p) => std::slice::from_ref(p),
            DiscPolygon::Arcs { vertices, .. } => vertices,
        }
    }

    pub fn arc_centers(&self) -> &[Point] {
        match self {
            DiscPolygon::Arcs { centers, .. } => centers,
            _ => &[],
        }
    }

    /// Mean of the vertices. Interior point for any valid disc-polygon.
    pub fn centroid(&self) -> Point {
        let vs = self.vertices();
        if vs.is_empty() {
            return Point::default();
        }
        let mut acc = Point::default();
        for v in vs {
            acc = acc + *v;
        }
        acc * (1.0 / vs.len() as f64)
    }

    /// The boundary arcs in counterclockwise order.
    pub fn arcs(&self) -> Vec<Arc> {
        let DiscPolygon::Arcs { vertices, centers } = self else {
            return Vec::new();
        };
        let k = vertices.len();
        (0..k)
            .map(|i| {
                let start = vertices[i];
                let end = vertices[(i + 1) % k];
                let center = centers[i];
                let start_angle = normalize_angle((start.y - center.y).atan2(start.x - center.x));
                let end_angle = (end.y - center.y).atan2(end.x - center.x);
                let mut sweep = ccw_delta(start_angle, end_angle);
                // A diameter chord sweeps exactly pi; anything that wraps
                // past pi is roundoff on such a chord.
                if sweep > std::f64::consts::PI + 1e-6 {
                    sweep = 0.0;
                }
                Arc {
                    start,
                    end,
                    center,
                    start_angle,
                    sweep,
                }
            })
            .collect()
    }

    /// Area: shoelace over the vertex polygon plus one circular segment per
    /// edge arc.
    pub fn area(&self) -> f64 {
        let DiscPolygon::Arcs { vertices, .. } = self else {
            return 0.0;
        };
        let k = vertices.len();
        let mut shoelace = 0.0;
        for i in 0..k {
            shoelace += vertices[i].cross(vertices[(i + 1) % k]);
        }
        let mut area = 0.5 * shoelace;
        for arc in self.arcs() {
            area += segment_area_from_sweep(arc.sweep);
        }
        area.max(0.0)
    }

    /// Membership: inside all edge discs (closed, with `EPS_TEST` slack).
    pub fn contains(&self, q: Point) -> bool {
        match self {
            DiscPolygon::Empty => false,
            DiscPolygon::Point(p) => p.dist(q) <= EPS_TEST,
            DiscPolygon::Arcs { centers, .. } => {
                centers.iter().all(|c| c.dist(q) <= 1.0 + EPS_TEST)
            }
        }
    }

    /// Distance from `q` to the region (0 when inside).
    pub fn dist_to(&self, q: Point) -> f64 {
        match self {
            DiscPolygon::Empty => f64::INFINITY,
            DiscPolygon::Point(p) => p.dist(q),
            DiscPolygon::Arcs { .. } => {
                if self.contains(q) {
                    return 0.0;
                }
                let mut best = f64::INFINITY;
                for arc in self.arcs() {
                    let g = q - arc.center;
                    let phi = normalize_angle(g.y.atan2(g.x));
                    let off = ccw_delta(arc.start_angle, phi);
                    let d = if off <= arc.sweep {
                        (g.norm() - 1.0).abs()
                    } else {
                        q.dist(arc.start).min(q.dist(arc.end))
                    };
                    best = best.min(d);
                }
                best
            }
        }
    }

    /// Tight axis-aligned bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        match self {
            DiscPolygon::Empty => (Point::default(), Point::default()),
            DiscPolygon::Point(p) => (*p, *p),
            DiscPolygon::Arcs { vertices, .. } => {
                let mut lo = vertices[0];
                let mut hi = vertices[0];
                let mut push = |p: Point| {
                    lo.x = lo.x.min(p.x);
                    lo.y = lo.y.min(p.y);
                    hi.x = hi.x.max(p.x);
                    hi.y = hi.y.max(p.y);
                };
                for v in vertices {
                    push(*v);
                }
                for arc in self.arcs() {
                    // Arc extrema sit where the tangent is axis-parallel.
                    for (dir, axis) in [
                        (0.0, Point::new(1.0, 0.0)),
                        (0.25 * TAU, Point::new(0.0, 1.0)),
                        (0.5 * TAU, Point::new(-1.0, 0.0)),
                        (0.75 * TAU, Point::new(0.0, -1.0)),
                    ] {
                        if ccw_delta(arc.start_angle, dir) <= arc.sweep {
                            push(arc.center + axis);
                        }
                    }
                }
                (lo, hi)
            }
        }
    }

    /// Evenly spaced boundary samples (`m` per arc), used by test oracles.
    pub fn boundary_samples(&self, m: usize) -> Vec<Point> {
        let arcs = self.arcs();
        let mut out = Vec::with_capacity(arcs.len() * m);
        for arc in &arcs {
            for j in 0..m {
                out.push(arc.point_at(arc.sweep * j as f64 / m as f64));
            }
        }
        out
    }

    /// The spindle of two points: the intersection of the two unit discs
    /// through them. Degenerates to a single point when `x == y`; a diameter
    /// chord yields the full unit disc (the two edge discs coincide).
    pub fn spindle(x: Point, y: Point) -> Result<DiscPolygon, GeomError> {
        if x.dist(y) <= 1e-14 {
            return Ok(DiscPolygon::Point(x));
        }
        let (left_xy, _) = unit_disc_centers_through(x, y)?;
        let (left_yx, _) = unit_disc_centers_through(y, x)?;
        Ok(canonical_arcs(vec![x, y], vec![left_xy, left_yx]))
    }

    /// Build from counterclockwise vertices, recomputing the outward-bulging
    /// arc centers. Accepts clockwise input by reversing it. Validates the
    /// disc-polygon invariants.
    pub fn from_vertices_ccw(mut vertices: Vec<Point>) -> Result<DiscPolygon, PolyError> {
        vertices.dedup_by(|a, b| a.dist(*b) <= MERGE_EPS);
        if vertices.len() > 1 && vertices[0].dist(*vertices.last().unwrap()) <= MERGE_EPS {
            vertices.pop();
        }
        for v in &vertices {
            if !v.is_finite() {
                return Err(PolyError::Invalid {
                    reason: "non-finite vertex coordinates".into(),
                });
            }
        }
        match vertices.len() {
            0 => {
                return Err(PolyError::Invalid {
                    reason: "no vertices".into(),
                })
            }
            1 => return Ok(DiscPolygon::Point(vertices[0])),
            2 => return DiscPolygon::spindle(vertices[0], vertices[1]).map_err(PolyError::from),
            _ => {}
        }
        let k = vertices.len();
        let mut shoelace = 0.0;
        for i in 0..k {
            shoelace += vertices[i].cross(vertices[(i + 1) % k]);
        }
        if shoelace < 0.0 {
            vertices.reverse();
        }
        let mut centers = Vec::with_capacity(k);
        for i in 0..k {
            let (left, _) = unit_disc_centers_through(vertices[i], vertices[(i + 1) % k])?;
            centers.push(left);
        }
        let poly = canonical_arcs(vertices, centers);
        poly.validate()?;
        Ok(poly)
    }

    /// Check the structural invariants: arcs of unit radius bulging outward,
    /// every vertex inside every edge disc, and a simple convex boundary
    /// whose Gauss map winds exactly once.
    pub fn validate(&self) -> Result<(), PolyError> {
        let DiscPolygon::Arcs { vertices, centers } = self else {
            return Ok(());
        };
        let k = vertices.len();
        if centers.len() != k || k < 2 {
            return Err(PolyError::Invalid {
                reason: "vertex/center count mismatch".into(),
            });
        }
        for i in 0..k {
            let a = vertices[i];
            let b = vertices[(i + 1) % k];
            let c = centers[i];
            let chord = a.dist(b);
            if chord <= MERGE_EPS {
                return Err(PolyError::Invalid {
                    reason: format!("duplicate consecutive vertices at index {i}"),
                });
            }
            if chord > 2.0 + EPS_TEST {
                return Err(PolyError::Invalid {
                    reason: format!("edge chord {chord} exceeds the unit diameter"),
                });
            }
            if (c.dist(a) - 1.0).abs() > EPS_TEST || (c.dist(b) - 1.0).abs() > EPS_TEST {
                return Err(PolyError::Invalid {
                    reason: format!("arc center {i} is not at unit distance from its chord"),
                });
            }
            if (b - a).cross(c - a) < -EPS_TEST {
                return Err(PolyError::Invalid {
                    reason: format!("arc {i} bulges inward"),
                });
            }
            for (j, v) in vertices.iter().enumerate() {
                if c.dist(*v) > 1.0 + EPS_TEST {
                    return Err(PolyError::Invalid {
                        reason: format!("vertex {j} lies outside edge disc {i}"),
                    });
                }
            }
        }
        // Gauss map: arc sweeps plus vertex cone widths must cover the
        // circle exactly once.
        let mut total = 0.0;
        let arcs = self.arcs();
        for i in 0..k {
            let prev = &arcs[(i + k - 1) % k];
            let cur = &arcs[i];
            total += cur.sweep;
            let in_normal = normalize_angle(prev.start_angle + prev.sweep);
            let width = ccw_delta(in_normal, cur.start_angle);
            total += if width > TAU - 1e-6 { 0.0 } else { width };
        }
        if (total - TAU).abs() > 1e-6 {
            return Err(PolyError::Invalid {
                reason: format!("Gauss map winds {total} instead of 2*pi"),
            });
        }
        Ok(())
    }

    /// Intersection with the closed unit disc centered at `c`.
    ///
    /// The result is again a disc-polygon; the empty marker is returned when
    /// the intersection has empty interior.
    pub fn intersect_with_disc(&self, c: Point) -> DiscPolygon {
        match self {
            DiscPolygon::Empty => DiscPolygon::Empty,
            DiscPolygon::Point(p) => {
                if p.dist(c) <= 1.0 + EPS_TEST {
                    DiscPolygon::Point(*p)
                } else {
                    DiscPolygon::Empty
                }
            }
            DiscPolygon::Arcs { .. } => self.clip_arcs(c),
        }
    }

    fn clip_arcs(&self, c: Point) -> DiscPolygon {
        #[derive(Debug)]
        struct Piece {
            start: Point,
            end: Point,
            center: Point,
        }
        let arcs = self.arcs();
        let mut pieces: Vec<Piece> = Vec::with_capacity(arcs.len() + 2);
        let mut any_outside = false;

        for arc in &arcs {
            let d = arc.center.dist(c);
            if d <= EPS_GEOM {
                // The clip circle coincides with this edge circle; the whole
                // arc lies on the clip boundary and is kept.
                pieces.push(Piece {
                    start: arc.start,
                    end: arc.end,
                    center: arc.center,
                });
                continue;
            }
            // Angular offsets (from the arc start) where the clip circle
            // crosses this edge circle, restricted to the open arc.
            let mut splits: Vec<(f64, Point)> = Vec::new();
            if let Some((q1, q2)) = unit_circle_intersections(arc.center, c) {
                for q in [q1, q2] {
                    let g = q - arc.center;
                    let off = ccw_delta(arc.start_angle, normalize_angle(g.y.atan2(g.x)));
                    if off > EPS_GEOM && off < arc.sweep - EPS_GEOM {
                        splits.push((off, q));
                    }
                }
            }
            splits.sort_by(|a, b| a.0.total_cmp(&b.0));
            splits.dedup_by(|a, b| (a.0 - b.0).abs() <= EPS_GEOM);

            let mut bounds: Vec<(f64, Point)> = Vec::with_capacity(splits.len() + 2);
            bounds.push((0.0, arc.start));
            bounds.extend(splits);
            bounds.push((arc.sweep, arc.end));
            for w in bounds.windows(2) {
                let (off0, p0) = w[0];
                let (off1, p1) = w[1];
                let mid = arc.point_at(0.5 * (off0 + off1));
                if mid.dist(c) <= 1.0 + EPS_GEOM {
                    pieces.push(Piece {
                        start: p0,
                        end: p1,
                        center: arc.center,
                    });
                } else {
                    any_outside = true;
                }
            }
        }

        if !any_outside {
            return self.clone();
        }
        if pieces.is_empty() {
            return DiscPolygon::Empty;
        }

        // Stitch the kept boundary pieces, bridging each gap with an arc of
        // the clip circle (counterclockwise around `c`).
        let mut vertices: Vec<Point> = Vec::with_capacity(pieces.len() + 2);
        let mut centers: Vec<Point> = Vec::with_capacity(pieces.len() + 2);
        let m = pieces.len();
        for j in 0..m {
            let piece = &pieces[j];
            let next = &pieces[(j + 1) % m];
            vertices.push(piece.start);
            centers.push(piece.center);
            if piece.end.dist(next.start) > MERGE_EPS {
                vertices.push(piece.end);
                centers.push(c);
            }
        }
        // Drop zero-length arcs left over from splits at existing vertices.
        let mut i = 0;
        while vertices.len() >= 2 && i < vertices.len() {
            let j = (i + 1) % vertices.len();
            if vertices[i].dist(vertices[j]) <= MERGE_EPS {
                vertices.remove(j);
                centers.remove(i.min(centers.len() - 1));
                if j < i {
                    i = 0;
                }
            } else {
                i += 1;
            }
        }
        match vertices.len() {
            0 => DiscPolygon::Empty,
            1 => DiscPolygon::Point(vertices[0]),
            _ => canonical_arcs(vertices, centers),
        }
    }
}

/// Rotate the cyclic vertex list so the lexicographically smallest vertex
/// comes first; canonical form for structural equality.
fn canonical_arcs(vertices: Vec<Point>, centers: Vec<Point>) -> DiscPolygon {
    let k = vertices.len();
    debug_assert_eq!(centers.len(), k);
    let first = (0..k)
        .min_by(|&a, &b| {
            (vertices[a].x, vertices[a].y)
                .partial_cmp(&(vertices[b].x, vertices[b].y))
                .unwrap()
        })
        .unwrap_or(0);
    let mut vs = Vec::with_capacity(k);
    let mut cs = Vec::with_capacity(k);
    for i in 0..k {
        vs.push(vertices[(first + i) % k]);
        cs.push(centers[(first + i) % k]);
    }
    DiscPolygon::Arcs {
        vertices: vs,
        centers: cs,
    }
}

/// The Reuleaux triangle of unit width: three vertices, three unit arcs,
/// centered at the origin.
pub fn reuleaux_triangle() -> DiscPolygon {
    regular_disc_polygon(3, 1.0).expect("unit reuleaux triangle is valid")
}

/// Disc-polygon over a regular `k`-gon with the given side length, centered
/// at the origin with the first vertex on the positive x-axis. For `k = 2`
/// this is the spindle of a horizontal chord.
pub fn regular_disc_polygon(k: usize, side: f64) -> Result<DiscPolygon, PolyError> {
    if k < 1 || !side.is_finite() || side < 0.0 {
        return Err(PolyError::Invalid {
            reason: format!("regular disc-polygon needs k >= 1 and side >= 0, got k={k}, side={side}"),
        });
    }
    if side > 2.0 + EPS_GEOM {
        return Err(PolyError::Geom(GeomError::ChordTooLong { chord: side }));
    }
    if k == 1 || side == 0.0 {
        return Ok(DiscPolygon::Point(Point::new(0.0, 0.0)));
    }
    if k == 2 {
        return DiscPolygon::spindle(
            Point::new(-side / 2.0, 0.0),
            Point::new(side / 2.0, 0.0),
        )
        .map_err(PolyError::from);
    }
    let circumradius = side / (2.0 * (TAU / (2.0 * k as f64)).sin());
    let vertices = (0..k)
        .map(|i| Point::from_angle(TAU * i as f64 / k as f64) * circumradius)
        .collect();
    DiscPolygon::from_vertices_ccw(vertices)
}

/// Angle of `p` seen from `center`, normalized to `[0, 2*pi)`.
pub(crate) fn angle_from(center: Point, p: Point) -> f64 {
    normalize_angle((p.y - center.y).atan2(p.x - center.x))
}
