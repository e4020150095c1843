//! Property-based tests for the geometry layer: construction invariants,
//! membership consistency against an independent winding-number oracle, and
//! hull properties against the exact vertex oracle.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use proptest::prelude::*;

use discpoly::caps::normal_cones;
use discpoly::disc_polygon::DiscPolygon;
use discpoly::geom::{min_enclosing_circle, segment_area, unit_disc_centers_through, Point};
use discpoly::hull::{oracle_is_vertex, r_hull};

/// Points confined to a disc of radius 0.9, so every generated set has an
/// enclosing radius safely below 1.
fn safe_point() -> impl Strategy<Value = Point> {
    (0.0..1.0f64, 0.0..TAU).prop_map(|(r2, phi)| {
        let r = 0.9 * r2.sqrt();
        Point::new(r * phi.cos(), r * phi.sin())
    })
}

fn point_set(min: usize, max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(safe_point(), min..=max)
}

/// Winding number of the boundary polyline around `q`, from a dense
/// sampling of the arcs. Inside means winding ~ 1, outside ~ 0.
fn winding_inside(poly: &DiscPolygon, q: Point, samples_per_arc: usize) -> Option<bool> {
    let pts = poly.boundary_samples(samples_per_arc);
    if pts.len() < 3 {
        return None;
    }
    // Too close to the boundary is ambiguous for the polyline oracle.
    let min_d = pts.iter().map(|p| p.dist(q)).fold(f64::INFINITY, f64::min);
    if min_d < 2e-3 {
        return None;
    }
    let mut total = 0.0;
    for i in 0..pts.len() {
        let a = pts[i] - q;
        let b = pts[(i + 1) % pts.len()] - q;
        total += a.cross(b).atan2(a.dot(b));
    }
    let turns = total / TAU;
    if (turns - 1.0).abs() < 0.1 {
        Some(true)
    } else if turns.abs() < 0.1 {
        Some(false)
    } else {
        None
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn circle_centers_pass_through_both_points(a in safe_point(), b in safe_point()) {
        prop_assume!(a.dist(b) > 1e-9);
        let (left, right) = unit_disc_centers_through(a, b).unwrap();
        for c in [left, right] {
            prop_assert!((c.dist(a) - 1.0).abs() <= 1e-12);
            prop_assert!((c.dist(b) - 1.0).abs() <= 1e-12);
        }
        // Orientation: first center on the left of a -> b.
        prop_assert!((b - a).cross(left - a) >= -1e-12);
        prop_assert!((b - a).cross(right - a) <= 1e-12);
    }

    #[test]
    fn segment_area_is_monotone(c1 in 0.0..2.0f64, c2 in 0.0..2.0f64) {
        let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
        prop_assert!(segment_area(lo).unwrap() <= segment_area(hi).unwrap());
    }

    #[test]
    fn enclosing_circle_contains_and_ignores_duplicates(pts in point_set(1, 14)) {
        let base = min_enclosing_circle(&pts).unwrap();
        for p in &pts {
            prop_assert!(base.center.dist(*p) <= base.radius + 1e-12);
        }
        let mut doubled = pts.clone();
        doubled.extend(pts.iter().rev().copied());
        let dup = min_enclosing_circle(&doubled).unwrap();
        prop_assert!((base.radius - dup.radius).abs() <= 1e-12);
        prop_assert!(base.center.dist(dup.center) <= 1e-12);
    }

    #[test]
    fn membership_matches_winding_oracle(pts in point_set(3, 9), probe in point_set(8, 8)) {
        let hull = r_hull(&pts).unwrap();
        prop_assume!(hull.f0 >= 2);
        for q in probe {
            if let Some(expected) = winding_inside(&hull.hull, q, 256) {
                prop_assert_eq!(
                    hull.hull.contains(q),
                    expected,
                    "membership mismatch at {:?}", q
                );
            }
        }
    }

    #[test]
    fn clipping_shrinks_and_intersects(pts in point_set(3, 9), c in safe_point(), probe in point_set(6, 6)) {
        let hull = r_hull(&pts).unwrap();
        prop_assume!(hull.f0 >= 2);
        let p = &hull.hull;
        let clipped = p.intersect_with_disc(c);
        prop_assert!(clipped.area() <= p.area() + 1e-12);
        for q in probe {
            if p.contains(q) && c.dist(q) <= 1.0 - 1e-6 {
                prop_assert!(clipped.contains(q), "lost point {:?}", q);
            }
            if clipped.contains(q) {
                prop_assert!(p.contains(q) && c.dist(q) <= 1.0 + 1e-6, "gained point {:?}", q);
            }
        }
    }

    #[test]
    fn hull_contains_inputs_and_is_idempotent(pts in point_set(1, 12)) {
        let res = r_hull(&pts).unwrap();
        for p in &pts {
            prop_assert!(res.hull.contains(*p));
        }
        let verts: Vec<Point> = res.hull.vertices().to_vec();
        let again = r_hull(&verts).unwrap();
        prop_assert_eq!(again.f0, res.f0);
        for v in again.hull.vertices() {
            prop_assert!(verts.iter().any(|w| w.dist(*v) <= 1e-12));
        }
    }

    #[test]
    fn hull_grows_with_more_points(pts in point_set(2, 10), extra in safe_point()) {
        let before = r_hull(&pts).unwrap();
        let mut more = pts.clone();
        more.push(extra);
        let after = r_hull(&more).unwrap();
        prop_assert!(after.hull.area() + 1e-12 >= before.hull.area());
        // Old hull stays covered: its vertices are inside the new hull.
        for v in before.hull.vertices() {
            prop_assert!(after.hull.contains(*v));
        }
    }

    #[test]
    fn hull_vertices_match_exact_oracle(pts in point_set(1, 12)) {
        let res = r_hull(&pts).unwrap();
        let scan: BTreeSet<usize> = res.vertex_indices.iter().copied().collect();
        let oracle: BTreeSet<usize> = (0..pts.len())
            .filter(|&i| oracle_is_vertex(&pts, i).unwrap())
            .collect();
        prop_assert_eq!(scan, oracle);
    }

    #[test]
    fn gauss_map_partitions_the_circle(pts in point_set(2, 12)) {
        let res = r_hull(&pts).unwrap();
        prop_assume!(res.f0 >= 2);
        let cones = normal_cones(&res.hull);
        let arcs = res.hull.arcs();
        let total: f64 = cones.iter().map(|c| c.width()).sum::<f64>()
            + arcs.iter().map(|a| a.sweep).sum::<f64>();
        prop_assert!((total - TAU).abs() <= 1e-9, "partition total {}", total);
    }

    #[test]
    fn canonical_form_ignores_input_rotation(pts in point_set(3, 9), shift in 0usize..8) {
        let res = r_hull(&pts).unwrap();
        prop_assume!(res.f0 >= 3);
        let verts: Vec<Point> = res.hull.vertices().to_vec();
        let k = verts.len();
        let rotated: Vec<Point> = (0..k).map(|i| verts[(i + shift) % k]).collect();
        let a = DiscPolygon::from_vertices_ccw(rotated).unwrap();
        let mut reversed: Vec<Point> = verts.clone();
        reversed.reverse();
        let b = DiscPolygon::from_vertices_ccw(reversed).unwrap();
        prop_assert_eq!(&a, &res.hull);
        prop_assert_eq!(&b, &res.hull);
    }
}
