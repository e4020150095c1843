//! Disc-caps, support points and normal cones of disc-polygons.
//!
//! A disc-cap of `P` is the part of `P` outside a translated open unit
//! disc. Every nonempty cap has a unique outer normal `u`, vertex `x_u`
//! (the deepest boundary point) and height `t`, with the cutting disc
//! centered at `x_u - (1+t)u`. Cap areas are always obtained by clipping
//! `P` with the cutting disc and subtracting, never by tracing the cap
//! boundary itself.

use std::f64::consts::TAU;

use crate::disc_polygon::{angle_from, DiscPolygon};
use crate::error::PolyError;
use crate::geom::{
    angle_of, ccw_delta, normalize_angle, segment_area, unit_circle_intersections,
    unit_disc_centers_through, Point, EPS_GEOM, EPS_TEST,
};

/// Closed arc of outer normal directions at one vertex.
///
/// `alpha <= beta` on the real line; `beta` may exceed `2*pi` when the cone
/// wraps around zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalCone {
    pub vertex_index: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl NormalCone {
    pub fn width(&self) -> f64 {
        self.beta - self.alpha
    }

    /// Whether the normalized angle `phi` lies in the closed cone.
    pub fn contains_angle(&self, phi: f64) -> bool {
        ccw_delta(self.alpha, phi) <= self.width() + EPS_GEOM
    }
}

/// Outer normal cones of all vertices, in vertex order.
///
/// The cone at vertex `i` spans from the end normal of the incoming arc to
/// the start normal of the outgoing arc; cone widths and edge arc sweeps
/// together partition the circle of directions.
pub fn normal_cones(poly: &DiscPolygon) -> Vec<NormalCone> {
    let arcs = poly.arcs();
    let k = arcs.len();
    let mut cones = Vec::with_capacity(k);
    for i in 0..k {
        let prev = &arcs[(i + k - 1) % k];
        let cur = &arcs[i];
        let alpha = normalize_angle(prev.start_angle + prev.sweep);
        let mut width = ccw_delta(alpha, cur.start_angle);
        if width > TAU - 1e-6 {
            width = 0.0;
        }
        cones.push(NormalCone {
            vertex_index: i,
            alpha,
            beta: alpha + width,
        });
    }
    cones
}

/// The unique boundary point whose normal cone contains `u`.
///
/// Vertex when `u` falls in a vertex cone, otherwise `center + u` on the
/// edge whose normal range contains `u`. Total over the unit circle.
pub fn support_point(poly: &DiscPolygon, u: Point) -> Point {
    match poly {
        DiscPolygon::Empty => Point::default(),
        DiscPolygon::Point(p) => *p,
        DiscPolygon::Arcs { vertices, .. } => {
            let phi = normalize_angle(u.y.atan2(u.x));
            let arcs = poly.arcs();
            let k = arcs.len();
            for i in 0..k {
                let off = ccw_delta(arcs[i].start_angle, phi);
                if off <= arcs[i].sweep {
                    return arcs[i].center + u;
                }
                let cone_alpha = normalize_angle(arcs[i].start_angle + arcs[i].sweep);
                let next_start = arcs[(i + 1) % k].start_angle;
                let mut width = ccw_delta(cone_alpha, next_start);
                if width > TAU - 1e-6 {
                    width = 0.0;
                }
                if ccw_delta(cone_alpha, phi) <= width {
                    return vertices[(i + 1) % k];
                }
            }
            // Roundoff can leave `phi` in a sliver between two ranges; take
            // the extreme point in direction u.
            *vertices
                .iter()
                .max_by(|a, b| a.dot(u).total_cmp(&b.dot(u)))
                .expect("nonempty vertex list")
        }
    }
}

/// Arcs of the unit circle centered at `p` that lie inside `P`, as
/// `(start_angle, length)` pairs merged cyclically.
///
/// Each edge disc of `P` constrains the angle to one closed interval; the
/// result is the intersection of those intervals, evaluated by splitting at
/// all interval endpoints and testing midpoints for membership.
pub fn unit_circle_arcs_inside(poly: &DiscPolygon, p: Point) -> Vec<(f64, f64)> {
    let centers = poly.arc_centers();
    if centers.is_empty() {
        return Vec::new();
    }
    let mut cuts: Vec<f64> = Vec::with_capacity(2 * centers.len());
    for c in centers {
        let d = p.dist(*c);
        if d > 2.0 + EPS_GEOM {
            return Vec::new();
        }
        if d <= EPS_GEOM {
            continue; // coincident circles constrain nothing
        }
        let w = (d * 0.5).min(1.0).acos();
        let psi = angle_from(p, *c);
        cuts.push(normalize_angle(psi - w));
        cuts.push(normalize_angle(psi + w));
    }
    if cuts.is_empty() {
        // No crossing constraints at all: the circle is entirely inside or
        // entirely outside.
        return if poly.contains(p + Point::new(1.0, 0.0)) {
            vec![(0.0, TAU)]
        } else {
            Vec::new()
        };
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() <= EPS_GEOM);

    let m = cuts.len();
    let mut kept: Vec<(f64, f64)> = Vec::new();
    for i in 0..m {
        let start = cuts[i];
        let len = if m == 1 {
            TAU
        } else {
            ccw_delta(start, cuts[(i + 1) % m])
        };
        if len <= EPS_GEOM {
            continue;
        }
        let mid = p + Point::from_angle(start + 0.5 * len);
        if poly.contains(mid) {
            kept.push((start, len));
        }
    }
    if kept.is_empty() {
        return kept;
    }
    // Merge runs that are contiguous on the circle.
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(kept.len());
    for (start, len) in kept {
        if let Some(last) = merged.last_mut() {
            if ccw_delta(last.0 + last.1, start).min(ccw_delta(start, last.0 + last.1)) <= 1e-9 {
                last.1 += len;
                continue;
            }
        }
        merged.push((start, len));
    }
    if merged.len() > 1 {
        let first = merged[0];
        let last = *merged.last().unwrap();
        if ccw_delta(last.0 + last.1, first.0).min(ccw_delta(first.0, last.0 + last.1)) <= 1e-9 {
            let joined = (last.0, last.1 + first.1);
            merged[0] = joined;
            merged.pop();
        }
    }
    merged
}

/// Largest height for which the cutting disc still meets `P`.
///
/// Bisection on the monotone predicate `dist(p(t), P) <= 1` to an absolute
/// tolerance well under 1e-10. Positive and finite for every direction.
pub fn t_star(poly: &DiscPolygon, u: Point) -> f64 {
    let x_u = support_point(poly, u);
    let meets = |t: f64| {
        let p = x_u - u * (1.0 + t);
        poly.dist_to(p) <= 1.0
    };
    let mut lo = 0.0_f64;
    let mut hi = 2.25_f64;
    debug_assert!(meets(lo));
    debug_assert!(!meets(hi));
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if meets(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A disc-cap `D(u, t)` of a disc-polygon.
#[derive(Debug, Clone)]
pub struct DiscCap {
    /// The part of `P` inside the cutting disc (`P` minus the cap); the
    /// empty marker when the cap exhausts `P`.
    pub remainder: DiscPolygon,
    /// Angle of the outer normal `u`.
    pub normal_angle: f64,
    /// Deepest point of the cap on the boundary of `P`.
    pub vertex: Point,
    /// Height `t`.
    pub height: f64,
    /// Cap area `A(u, t)`, computed as `area(P) - area(remainder)`.
    pub area: f64,
    /// Arc length of the cutting circle inside `P` (`ell(u, t)`).
    pub chord_arc_length: f64,
    /// Center of the cutting disc, `vertex - (1 + t) u`.
    pub cutting_center: Point,
    /// The longest arc of the cutting circle inside `P`, as
    /// `(start_angle, length)`; `None` when the circle misses `P`.
    pub chord_arc: Option<(f64, f64)>,
}

/// Cut the cap with outer normal `u` and height `t` from `P`.
pub fn disc_cap(poly: &DiscPolygon, u: Point, t: f64) -> Result<DiscCap, PolyError> {
    let normal_angle = angle_of(u)?;
    let ts = t_star(poly, u);
    if !(t > 0.0 && t <= ts + EPS_TEST) {
        return Err(PolyError::HeightOutOfRange { t, t_star: ts });
    }
    let vertex = support_point(poly, u);
    let cutting_center = vertex - u * (1.0 + t);
    let remainder = poly.intersect_with_disc(cutting_center);
    let area = (poly.area() - remainder.area()).max(0.0);
    let arcs_inside = unit_circle_arcs_inside(poly, cutting_center);
    let chord_arc_length = arcs_inside.iter().map(|a| a.1).sum();
    let chord_arc = arcs_inside
        .into_iter()
        .max_by(|a, b| a.1.total_cmp(&b.1));
    Ok(DiscCap {
        remainder,
        normal_angle,
        vertex,
        height: t,
        area,
        chord_arc_length,
        cutting_center,
        chord_arc,
    })
}

/// Areas of the two caps cut from `P` by the unit circles through two
/// interior points, sorted so the first is the smaller.
///
/// Together with the spindle of the pair the caps cover `P`; they overlap
/// beyond the lens tips, so `area(P) <= a_minus + a_plus + area(spindle)`
/// with equality exactly when no part of `P` escapes both discs.
pub fn cap_pair(poly: &DiscPolygon, x1: Point, x2: Point) -> Result<(f64, f64), PolyError> {
    if !poly.contains(x1) || !poly.contains(x2) {
        return Err(PolyError::PointsOutside);
    }
    let (left, right) = unit_disc_centers_through(x1, x2)?;
    let total = poly.area();
    let a_left = (total - poly.intersect_with_disc(left).area()).max(0.0);
    let a_right = (total - poly.intersect_with_disc(right).area()).max(0.0);
    if a_left <= a_right {
        Ok((a_left, a_right))
    } else {
        Ok((a_right, a_left))
    }
}

/// Residual of the exact relation tying the cone offset `beta`, the cap
/// height `t` and the near-edge arc length `ell1` of a single-vertex cap:
///
/// `(sin ell1 sin beta / t) (1 + sin ell1 sin beta / ((1+cos ell1)(1+cos beta))) - (cos beta + cos ell1 - 1 - t/2)`
///
/// Geometric triples produced by `vertex_cap_geometry` drive this to zero.
pub fn ell1_identity_residual(beta: f64, t: f64, ell1: f64) -> f64 {
    let s = ell1.sin() * beta.sin() / t;
    let lhs = s * (1.0 + ell1.sin() * beta.sin() / ((1.0 + ell1.cos()) * (1.0 + beta.cos())));
    let rhs = beta.cos() + ell1.cos() - 1.0 - t / 2.0;
    lhs - rhs
}

/// Solve `ell1` from the identity residual for given `beta` and `t` by
/// bisection on `(0, pi/2)`.
pub fn ell1_from_identity(beta: f64, t: f64) -> f64 {
    let mut lo = 0.0_f64;
    let mut hi = std::f64::consts::FRAC_PI_2;
    // Residual is decreasing in ell1 near the root (lhs grows, rhs shrinks);
    // at ell1 = 0 the residual is negative, at pi/2 positive.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ell1_identity_residual(beta, t, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Measured geometry of a small cap whose normal sits `beta` inside the
/// cone of one vertex, used to exercise the `ell1` relation and the
/// near-vertex area split.
#[derive(Debug, Clone, Copy)]
pub struct VertexCapGeometry {
    pub beta: f64,
    pub t: f64,
    /// Arc of the cutting circle between the crossing with the incoming
    /// edge circle and the point below the vertex.
    pub ell1: f64,
    /// Area enclosed by the vertex, that crossing, and the foot point:
    /// triangle plus the edge-side segment minus the cutting-side segment.
    pub a1: f64,
    pub crossing: Point,
    pub foot: Point,
}

/// Construct the single-vertex cap at `vertex_index` with normal offset
/// `beta` from the incoming edge normal and height `t`, and measure `ell1`
/// and the near-edge area split.
///
/// Returns `None` when `beta` falls outside the vertex cone or the crossing
/// with the incoming edge circle does not exist.
pub fn vertex_cap_geometry(
    poly: &DiscPolygon,
    vertex_index: usize,
    beta: f64,
    t: f64,
) -> Option<VertexCapGeometry> {
    let DiscPolygon::Arcs { vertices, centers } = poly else {
        return None;
    };
    let k = vertices.len();
    let cones = normal_cones(poly);
    let cone = cones.get(vertex_index)?;
    if !(beta > 0.0 && beta < cone.width()) {
        return None;
    }
    let v = vertices[vertex_index];
    let incoming_index = (vertex_index + k - 1) % k;
    let incoming_center = centers[incoming_index];
    let incoming_arc = poly.arcs()[incoming_index];
    let u = Point::from_angle(cone.alpha + beta);
    let p = v - u * (1.0 + t);
    let (q1, q2) = unit_circle_intersections(p, incoming_center)?;
    // The relevant crossing lies on the incoming edge arc; fall back to the
    // one nearer the vertex.
    let on_arc = |q: Point| {
        let phi = angle_from(incoming_arc.center, q);
        ccw_delta(incoming_arc.start_angle, phi) <= incoming_arc.sweep + 1e-9
    };
    let crossing = match (on_arc(q1), on_arc(q2)) {
        (true, false) => q1,
        (false, true) => q2,
        _ => {
            if q1.dist(v) <= q2.dist(v) {
                q1
            } else {
                q2
            }
        }
    };
    let foot = p + u;
    let phi_crossing = angle_from(p, crossing);
    let phi_foot = angle_from(p, foot);
    let ell1 = ccw_delta(phi_crossing, phi_foot).min(ccw_delta(phi_foot, phi_crossing));
    let tri = 0.5 * (crossing - v).cross(foot - v).abs();
    let seg_edge = segment_area(v.dist(crossing)).ok()?;
    let seg_cut = segment_area(crossing.dist(foot)).ok()?;
    let a1 = tri + seg_edge - seg_cut;
    Some(VertexCapGeometry {
        beta,
        t,
        ell1,
        a1,
        crossing,
        foot,
    })
}

/// Minimum distance between boundary points on non-adjacent edges of `P`.
///
/// `None` when every pair of edges shares a vertex (`k <= 3`). Candidates
/// are endpoint pairs, radial projections of endpoints, and the points on
/// the line of centers.
pub fn min_nonadjacent_boundary_distance(poly: &DiscPolygon) -> Option<f64> {
    let arcs = poly.arcs();
    let k = arcs.len();
    if k < 4 {
        return None;
    }
    let on_arc = |arc: &crate::disc_polygon::Arc, q: Point| -> Option<Point> {
        let g = q - arc.center;
        let n = g.norm();
        if n <= EPS_GEOM {
            return None;
        }
        let phi = normalize_angle(g.y.atan2(g.x));
        if ccw_delta(arc.start_angle, phi) <= arc.sweep {
            Some(arc.center + g * (1.0 / n))
        } else {
            None
        }
    };
    let mut best = f64::INFINITY;
    for i in 0..k {
        for j in (i + 2)..k {
            if i == 0 && j == k - 1 {
                continue; // cyclically adjacent
            }
            let (a, b) = (&arcs[i], &arcs[j]);
            let mut candidates: Vec<(Point, Point)> = Vec::new();
            for pa in [a.start, a.end] {
                for pb in [b.start, b.end] {
                    candidates.push((pa, pb));
                }
                if let Some(qb) = on_arc(b, pa) {
                    candidates.push((pa, qb));
                }
            }
            for pb in [b.start, b.end] {
                if let Some(qa) = on_arc(a, pb) {
                    candidates.push((qa, pb));
                }
            }
            let d = a.center.dist(b.center);
            if d > EPS_GEOM {
                let dir = (b.center - a.center) * (1.0 / d);
                for qa in [a.center + dir, a.center - dir] {
                    for qb in [b.center + dir, b.center - dir] {
                        if on_arc(a, qa).is_some() && on_arc(b, qb).is_some() {
                            candidates.push((qa, qb));
                        }
                    }
                }
            }
            for (pa, pb) in candidates {
                best = best.min(pa.dist(pb));
            }
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc_polygon::{regular_disc_polygon, reuleaux_triangle};
    use std::f64::consts::PI;

    fn lcg(state: &mut u64) -> f64 {
        *state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (*state >> 11) as f64 / (1u64 << 53) as f64
    }

    fn sample_inside(poly: &DiscPolygon, state: &mut u64) -> Point {
        let (lo, hi) = poly.bounding_box();
        loop {
            let q = Point::new(
                lo.x + lcg(state) * (hi.x - lo.x),
                lo.y + lcg(state) * (hi.y - lo.y),
            );
            if poly.contains(q) {
                return q;
            }
        }
    }

    #[test]
    fn spindle_cones_have_complementary_widths() {
        let s = DiscPolygon::spindle(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        let arcs = s.arcs();
        let sweep = arcs[0].sweep;
        assert!((sweep - PI / 3.0).abs() <= 1e-12, "unit chord sweeps pi/3");
        let cones = normal_cones(&s);
        assert_eq!(cones.len(), 2);
        for c in &cones {
            assert!(
                (c.width() - (PI - sweep)).abs() <= 1e-9,
                "cone width {} vs pi - {sweep}",
                c.width()
            );
        }
        let total: f64 =
            cones.iter().map(NormalCone::width).sum::<f64>() + arcs.iter().map(|a| a.sweep).sum::<f64>();
        assert!((total - TAU).abs() <= 1e-9);
    }

    #[test]
    fn reuleaux_cones_by_symmetry() {
        let r = reuleaux_triangle();
        let cones = normal_cones(&r);
        for c in &cones {
            assert!((c.width() - PI / 3.0).abs() <= 1e-9);
        }
        let arcs = r.arcs();
        let total: f64 =
            cones.iter().map(NormalCone::width).sum::<f64>() + arcs.iter().map(|a| a.sweep).sum::<f64>();
        assert!((total - TAU).abs() <= 1e-9);
    }

    #[test]
    fn gauss_map_partition_for_regular_polygons() {
        for (k, side) in [(2usize, 0.9), (3, 0.9), (4, 0.9), (5, 0.9), (8, 0.5)] {
            let p = regular_disc_polygon(k, side).unwrap();
            let cones = normal_cones(&p);
            let arcs = p.arcs();
            let total: f64 = cones.iter().map(NormalCone::width).sum::<f64>()
                + arcs.iter().map(|a| a.sweep).sum::<f64>();
            assert!((total - TAU).abs() <= 1e-9, "k={k}: total {total}");
        }
    }

    #[test]
    fn support_point_on_edge_and_vertex() {
        let r = reuleaux_triangle();
        let arcs = r.arcs();
        // Mid-edge normal returns the edge midpoint.
        let arc = &arcs[0];
        let u = Point::from_angle(arc.start_angle + arc.sweep / 2.0);
        let x = support_point(&r, u);
        assert!(x.dist(arc.center + u) <= 1e-12);
        // A direction strictly inside a cone returns that cone's vertex.
        let cones = normal_cones(&r);
        for c in &cones {
            let u = Point::from_angle(c.alpha + 0.5 * c.width());
            let x = support_point(&r, u);
            assert!(x.dist(r.vertices()[c.vertex_index]) <= 1e-12);
        }
    }

    #[test]
    fn support_point_maximizes_inner_product() {
        let r = regular_disc_polygon(5, 1.0).unwrap();
        let samples = r.boundary_samples(2000);
        let mut state = 5u64;
        for _ in 0..200 {
            let u = Point::from_angle(lcg(&mut state) * TAU);
            let x = support_point(&r, u);
            let best = samples
                .iter()
                .map(|p| p.dot(u))
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(
                best <= x.dot(u) + 1e-9,
                "support point not extreme: {} vs {}",
                best,
                x.dot(u)
            );
        }
    }

    #[test]
    fn t_star_of_unit_disc_is_two() {
        let disc = DiscPolygon::spindle(Point::new(-1.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        for phi in [0.0, 0.7, 2.1, 4.4] {
            let ts = t_star(&disc, Point::from_angle(phi));
            assert!((ts - 2.0).abs() <= 1e-9, "t* = {ts}");
        }
    }

    #[test]
    fn t_star_bisection_contract() {
        let r = reuleaux_triangle();
        for phi in [0.1, 1.3, 2.9, 5.0] {
            let u = Point::from_angle(phi);
            let ts = t_star(&r, u);
            let x_u = support_point(&r, u);
            let meets = |t: f64| r.dist_to(x_u - u * (1.0 + t)) <= 1.0;
            assert!(meets(ts - 1e-9), "disc must still meet P just below t*");
            assert!(!meets(ts + 1e-6), "disc must miss P just above t*");
        }
    }

    #[test]
    fn t_star_matches_dense_scan() {
        let r = reuleaux_triangle();
        // Direction toward a vertex.
        let v = r.vertices()[0];
        let u = v * (1.0 / v.norm());
        let ts = t_star(&r, u);
        let x_u = support_point(&r, u);
        let mut scan = 0.0;
        let steps = 3_000_000;
        for i in 0..steps {
            let t = 2.25 * i as f64 / steps as f64;
            if r.dist_to(x_u - u * (1.0 + t)) <= 1.0 {
                scan = t;
            }
        }
        assert!((ts - scan).abs() <= 1e-5, "bisection {ts} vs scan {scan}");
        assert!(ts > 0.0 && ts.is_finite());
    }

    #[test]
    fn cap_in_vertex_cone_shrinks_to_the_vertex() {
        let r = reuleaux_triangle();
        let cones = normal_cones(&r);
        let u = Point::from_angle(cones[0].alpha + 0.5 * cones[0].width());
        let mut prev_area = f64::INFINITY;
        for t in [1e-2, 1e-3, 1e-4] {
            let cap = disc_cap(&r, u, t).unwrap();
            assert!(cap.area < prev_area);
            prev_area = cap.area;
        }
        let tiny = disc_cap(&r, u, 1e-6).unwrap();
        assert!(tiny.area <= 1e-8, "area {}", tiny.area);
        assert!(tiny.chord_arc_length <= 1e-2, "ell {}", tiny.chord_arc_length);
    }

    #[test]
    fn cap_with_edge_normal_keeps_long_chord_arc() {
        // For an edge-interior normal the cap holds the whole edge with both
        // endpoint vertices; its area vanishes with t but the chord arc stays
        // as long as the edge.
        let r = reuleaux_triangle();
        let arc = &r.arcs()[0];
        let u = Point::from_angle(arc.start_angle + 0.5 * arc.sweep);
        let cap = disc_cap(&r, u, 1e-6).unwrap();
        assert!(cap.area <= 1e-5);
        assert!(
            (cap.chord_arc_length - arc.sweep).abs() <= 0.05,
            "chord arc {} vs edge sweep {}",
            cap.chord_arc_length,
            arc.sweep
        );
    }

    #[test]
    fn small_vertex_cap_respects_area_bounds() {
        let r = reuleaux_triangle();
        let cones = normal_cones(&r);
        let mut state = 11u64;
        for _ in 0..300 {
            let cone = &cones[(lcg(&mut state) * 3.0) as usize % 3];
            let beta = 0.05 + lcg(&mut state) * (cone.width() - 0.1);
            let u = Point::from_angle(cone.alpha + beta);
            let t = 1e-4 + lcg(&mut state) * 0.02;
            let cap = disc_cap(&r, u, t).unwrap();
            let ratio = cap.area / (cap.height * cap.chord_arc_length);
            assert!(
                ratio > 1.0 / TAU && ratio < 2.0,
                "ratio {ratio} out of (1/2pi, 2)"
            );
        }
    }

    #[test]
    fn cap_area_matches_monte_carlo_membership() {
        let r = reuleaux_triangle();
        let cones = normal_cones(&r);
        let u = Point::from_angle(cones[1].alpha + 0.4 * cones[1].width());
        let cap = disc_cap(&r, u, 0.01).unwrap();
        let (lo, hi) = r.bounding_box();
        let box_area = (hi.x - lo.x) * (hi.y - lo.y);
        let n = 1_000_000u64;
        let mut state = 2024u64;
        let mut hits = 0u64;
        for _ in 0..n {
            let q = Point::new(
                lo.x + lcg(&mut state) * (hi.x - lo.x),
                lo.y + lcg(&mut state) * (hi.y - lo.y),
            );
            if r.contains(q) && q.dist(cap.cutting_center) > 1.0 {
                hits += 1;
            }
        }
        let p = hits as f64 / n as f64;
        let est = box_area * p;
        let se = box_area * (p * (1.0 - p) / n as f64).sqrt();
        assert!(
            (est - cap.area).abs() <= 3.0 * se,
            "mc {est} vs clip {} (se {se})",
            cap.area
        );
    }

    #[test]
    fn cap_area_monotone_in_height() {
        // Caps are nested in t, so A(u, .) never decreases. The chord arc is
        // not monotone (it shrinks back to zero as the cutting circle exits
        // P), so only the area is checked.
        let r = reuleaux_triangle();
        for phi in [0.3, 1.6, 3.3, 4.9] {
            let u = Point::from_angle(phi);
            let ts = t_star(&r, u);
            let mut prev_area = 0.0;
            for i in 1..=20 {
                let t = ts * i as f64 / 21.0;
                let cap = disc_cap(&r, u, t).unwrap();
                assert!(cap.area + 1e-10 >= prev_area, "area not monotone at t={t}");
                prev_area = cap.area;
            }
        }
    }

    #[test]
    fn chord_arc_shrinks_near_t_star_on_the_disc() {
        // On the unit disc the chord arc is 2*acos(t/2): strictly decreasing.
        let disc = DiscPolygon::spindle(Point::new(-1.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        let u = Point::new(1.0, 0.0);
        for t in [0.2, 1.0, 1.8] {
            let cap = disc_cap(&disc, u, t).unwrap();
            let expect = 2.0 * (t / 2.0).acos();
            assert!(
                (cap.chord_arc_length - expect).abs() <= 1e-6,
                "ell {} vs {expect} at t={t}",
                cap.chord_arc_length
            );
        }
    }

    #[test]
    fn cap_height_out_of_range_rejected() {
        let r = reuleaux_triangle();
        let u = Point::new(1.0, 0.0);
        assert!(matches!(
            disc_cap(&r, u, 0.0),
            Err(PolyError::HeightOutOfRange { .. })
        ));
        assert!(matches!(
            disc_cap(&r, u, 5.0),
            Err(PolyError::HeightOutOfRange { .. })
        ));
    }

    #[test]
    fn pair_decomposition_covers_p() {
        // The two caps and the spindle cover P (the caps overlap beyond the
        // lens tips, so the areas are subadditive, not additive), and the
        // lens of the two discs inside P is exactly the spindle.
        let r = reuleaux_triangle();
        let total = r.area();
        let mut state = 31u64;
        for _ in 0..300 {
            let x1 = sample_inside(&r, &mut state);
            let x2 = sample_inside(&r, &mut state);
            if x1.dist(x2) <= 1e-9 {
                continue;
            }
            let (a_minus, a_plus) = cap_pair(&r, x1, x2).unwrap();
            assert!(a_minus <= a_plus);
            let spindle = DiscPolygon::spindle(x1, x2).unwrap().area();
            let excess = a_minus + a_plus + spindle - total;
            assert!(
                excess >= -1e-9 * total,
                "caps + spindle must cover P: deficit {excess} for {x1:?} {x2:?}"
            );
            // Lens identity via double clipping.
            let (left, right) = unit_disc_centers_through(x1, x2).unwrap();
            let lens = r.intersect_with_disc(left).intersect_with_disc(right);
            assert!(
                (lens.area() - spindle).abs() <= 1e-9 * total,
                "lens {} vs spindle {spindle}",
                lens.area()
            );
            // Hyperconvexity: the spindle of two P-points stays inside P.
            let spindle_region = DiscPolygon::spindle(x1, x2).unwrap();
            for q in spindle_region.boundary_samples(16) {
                assert!(r.contains(q), "spindle boundary point {q:?} escaped P");
            }
        }
    }

    #[test]
    fn pair_near_one_vertex_has_tiny_minus_cap() {
        // A short chord across the corner: one of the two circles hugs the
        // vertex, cutting off only a sliver.
        let r = reuleaux_triangle();
        let v = r.vertices()[0];
        let c = r.centroid();
        let inward = (c - v) * (1.0 / (c - v).norm());
        let x1 = v + inward * 1e-3 + inward.perp() * 1e-3;
        let x2 = v + inward * 1e-3 - inward.perp() * 1e-3;
        assert!(r.contains(x1) && r.contains(x2));
        let (a_minus, a_plus) = cap_pair(&r, x1, x2).unwrap();
        assert!(a_minus < 0.01 * r.area(), "a_minus = {a_minus}");
        assert!(a_plus > 0.9 * r.area(), "a_plus = {a_plus}");
    }

    #[test]
    fn pair_outside_rejected() {
        let r = reuleaux_triangle();
        let out = Point::new(5.0, 5.0);
        assert!(matches!(
            cap_pair(&r, out, r.centroid()),
            Err(PolyError::PointsOutside)
        ));
    }

    #[test]
    fn reflected_pair_gives_congruent_caps() {
        // The reuleaux triangle is symmetric about the x-axis: reflecting a
        // pair reflects both caps, so the sorted areas agree to precision.
        let r = reuleaux_triangle();
        let mut state = 41u64;
        for _ in 0..50 {
            let x1 = sample_inside(&r, &mut state);
            let x2 = sample_inside(&r, &mut state);
            if x1.dist(x2) <= 1e-6 {
                continue;
            }
            let (a_minus, a_plus) = cap_pair(&r, x1, x2).unwrap();
            let m1 = Point::new(x1.x, -x1.y);
            let m2 = Point::new(x2.x, -x2.y);
            let (b_minus, b_plus) = cap_pair(&r, m1, m2).unwrap();
            assert!((a_minus - b_minus).abs() <= 1e-10, "{a_minus} vs {b_minus}");
            assert!((a_plus - b_plus).abs() <= 1e-10);
            // Swapping the points only swaps the sorted labels.
            let (c_minus, c_plus) = cap_pair(&r, x2, x1).unwrap();
            assert!((a_minus - c_minus).abs() <= 1e-12);
            assert!((a_plus - c_plus).abs() <= 1e-12);
        }
    }

    #[test]
    fn geometric_triples_satisfy_the_identity() {
        let r = reuleaux_triangle();
        let mut state = 77u64;
        let mut tested = 0;
        while tested < 200 {
            let idx = (lcg(&mut state) * 3.0) as usize % 3;
            let cones = normal_cones(&r);
            let beta = 0.05 + lcg(&mut state) * (cones[idx].width() - 0.1);
            let t = 1e-5 + lcg(&mut state) * 1e-2;
            let Some(g) = vertex_cap_geometry(&r, idx, beta, t) else {
                continue;
            };
            let res = ell1_identity_residual(g.beta, g.t, g.ell1);
            assert!(res.abs() <= 1e-8, "residual {res} at beta={beta} t={t}");
            tested += 1;
        }
    }

    #[test]
    fn ell1_approaches_t_cot_beta() {
        let beta = 0.3;
        for t in [1e-3, 1e-4, 1e-5, 1e-6] {
            let ell1 = ell1_from_identity(beta, t);
            let ratio = ell1 / (t / beta.tan());
            assert!(
                (ratio - 1.0).abs() <= 10.0 * t.sqrt().min(0.05),
                "t={t}: ratio {ratio}"
            );
        }
        let ell1 = ell1_from_identity(beta, 1e-6);
        assert!((ell1 / (1e-6 / beta.tan()) - 1.0).abs() <= 1e-3);
    }

    #[test]
    fn identity_limit_along_t_equals_beta_squared() {
        // Along t = beta^2 both variables vanish and the combination
        // sin(ell1) sin(beta) / t - cos(ell1) goes to zero.
        let mut prev = f64::INFINITY;
        for beta in [0.2, 0.1, 0.05, 0.02, 0.01] {
            let t = beta * beta;
            let ell1 = ell1_from_identity(beta, t);
            let val = (ell1.sin() * beta.sin() / t - ell1.cos()).abs();
            assert!(val <= prev + 1e-9, "not decreasing: {val} after {prev}");
            prev = val;
        }
        assert!(prev <= 0.02, "limit value {prev}");
    }

    #[test]
    fn near_vertex_area_split_bounds() {
        let r = reuleaux_triangle();
        for beta in [0.002, 0.005, 0.2, 0.5, 0.9] {
            for frac in [1.0, 0.5, 0.1] {
                let t = 0.01 * beta * frac;
                let g = vertex_cap_geometry(&r, 0, beta, t).unwrap();
                let mid = 0.5 * g.t * g.ell1;
                assert!(
                    g.a1 >= 0.95 * mid && g.a1 <= 1.05 * mid,
                    "a1 {} vs (1 +/- 0.05) * {mid} at beta={beta} t={t}",
                    g.a1
                );
            }
        }
    }

    #[test]
    fn nonadjacent_distance_only_for_k_at_least_4() {
        assert!(min_nonadjacent_boundary_distance(&reuleaux_triangle()).is_none());
        let p5 = regular_disc_polygon(5, 1.0).unwrap();
        let c = min_nonadjacent_boundary_distance(&p5).unwrap();
        assert!(c > 0.0 && c < 2.0);
        // Dense-sample cross-check.
        let arcs = p5.arcs();
        let mut scan = f64::INFINITY;
        for i in 0..5 {
            for j in (i + 2)..5 {
                if i == 0 && j == 4 {
                    continue;
                }
                for a in 0..200 {
                    for b in 0..200 {
                        let pa = arcs[i].point_at(arcs[i].sweep * a as f64 / 199.0);
                        let pb = arcs[j].point_at(arcs[j].sweep * b as f64 / 199.0);
                        scan = scan.min(pa.dist(pb));
                    }
                }
            }
        }
        assert!((c - scan).abs() <= 1e-4, "candidates {c} vs scan {scan}");
    }

    #[test]
    fn chord_arcs_inside_unit_disc_from_its_own_center() {
        let disc = DiscPolygon::spindle(Point::new(-1.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        let arcs = unit_circle_arcs_inside(&disc, Point::new(0.0, 0.0));
        let total: f64 = arcs.iter().map(|a| a.1).sum();
        assert!((total - TAU).abs() <= 1e-9, "boundary circle lies inside");
    }
}
