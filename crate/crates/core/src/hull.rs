//! Spindle-convex hulls of finite point sets.
//!
//! The hull of `X` is the intersection of all closed unit discs containing
//! `X`; it exists exactly when `X` fits in a unit-radius circle. Vertices
//! are found by pruning the ordinary convex hull: a candidate between two
//! cyclic neighbors is dropped when it falls strictly inside the unit disc
//! that would support an edge between them. An independent exact oracle
//! decides vertexhood by intersecting angular intervals of admissible
//! supporting-disc centers.

use crate::disc_polygon::DiscPolygon;
use crate::error::{GeomError, PolyError};
use crate::geom::{min_enclosing_circle, normalize_angle, Point, EPS_GEOM};

/// Result of a hull computation: the region, the input indices of its
/// vertices in counterclockwise order, and the vertex count.
#[derive(Debug, Clone)]
pub struct HullResult {
    pub hull: DiscPolygon,
    pub vertex_indices: Vec<usize>,
    pub f0: usize,
}

/// Hull of a finite point set under intersections of unit discs.
///
/// Fails with `NotInUnitDisc` when the points do not fit in a unit-radius
/// circle (tolerance 1e-12).
pub fn r_hull(points: &[Point]) -> Result<HullResult, PolyError> {
    if points.is_empty() {
        return Err(PolyError::Geom(GeomError::EmptyInput));
    }
    let mec = min_enclosing_circle(points)?;
    if mec.radius > 1.0 + 1e-12 {
        return Err(PolyError::NotInUnitDisc { radius: mec.radius });
    }

    let hull_idx = convex_hull_ccw(points);
    if hull_idx.len() == 1 {
        return Ok(HullResult {
            hull: DiscPolygon::Point(points[hull_idx[0]]),
            vertex_indices: hull_idx,
            f0: 1,
        });
    }
    if hull_idx.len() == 2 {
        return spindle_result(points, hull_idx[0], hull_idx[1]);
    }

    // Circular pruning: drop a candidate strictly inside the left-centered
    // unit disc through its cyclic neighbors; ties stay. Repeat until a
    // full pass removes nothing.
    let mut cand = hull_idx;
    loop {
        let mut removed = false;
        let mut i = 0;
        while cand.len() >= 3 && i < cand.len() {
            let m = cand.len();
            let a = points[cand[(i + m - 1) % m]];
            let b = points[cand[i]];
            let c = points[cand[(i + 1) % m]];
            let center = left_center_clamped(a, c);
            if b.dist(center) < 1.0 - EPS_GEOM {
                cand.remove(i);
                removed = true;
            } else {
                i += 1;
            }
        }
        if !removed || cand.len() < 3 {
            break;
        }
    }

    if cand.len() == 2 {
        return spindle_result(points, cand[0], cand[1]);
    }

    let k = cand.len();
    let vertices: Vec<Point> = cand.iter().map(|&i| points[i]).collect();
    let centers: Vec<Point> = (0..k)
        .map(|i| left_center_clamped(vertices[i], vertices[(i + 1) % k]))
        .collect();
    // Canonical start: lexicographically smallest vertex first.
    let first = (0..k)
        .min_by(|&a, &b| {
            (vertices[a].x, vertices[a].y)
                .partial_cmp(&(vertices[b].x, vertices[b].y))
                .unwrap()
        })
        .unwrap();
    let hull = DiscPolygon::Arcs {
        vertices: (0..k).map(|i| vertices[(first + i) % k]).collect(),
        centers: (0..k).map(|i| centers[(first + i) % k]).collect(),
    };
    debug_assert!(hull.validate().is_ok());
    let vertex_indices: Vec<usize> = (0..k).map(|i| cand[(first + i) % k]).collect();
    Ok(HullResult {
        hull,
        vertex_indices,
        f0: k,
    })
}

fn spindle_result(points: &[Point], i: usize, j: usize) -> Result<HullResult, PolyError> {
    let hull = DiscPolygon::spindle(points[i], points[j])?;
    // Align the reported indices with the canonical vertex order.
    let vertex_indices = match &hull {
        DiscPolygon::Point(_) => vec![i.min(j)],
        _ => {
            if hull.vertices()[0].dist(points[i]) <= hull.vertices()[0].dist(points[j]) {
                vec![i, j]
            } else {
                vec![j, i]
            }
        }
    };
    let f0 = hull.f0();
    Ok(HullResult {
        hull,
        vertex_indices,
        f0,
    })
}

/// Left-side unit-circle center through `a -> c`, clamping chords a hair
/// over the diameter down to the midpoint.
fn left_center_clamped(a: Point, c: Point) -> Point {
    let chord = a.dist(c);
    let mid = (a + c) * 0.5;
    if chord <= 1e-15 {
        return mid;
    }
    let dir = (c - a) * (1.0 / chord);
    let half = (chord * 0.5).min(1.0);
    let offset = (1.0 - half * half).max(0.0).sqrt();
    mid + dir.perp() * offset
}

/// Ordinary convex hull, counterclockwise, collinear points dropped.
/// Returns indices into `points`.
fn convex_hull_ccw(points: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        (points[a].x, points[a].y, a)
            .partial_cmp(&(points[b].x, points[b].y, b))
            .unwrap()
    });
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() <= 2 {
        return idx;
    }
    let cross = |o: usize, a: usize, b: usize| (points[a] - points[o]).cross(points[b] - points[o]);
    let mut lower: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in &idx {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 0.0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 0.0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.is_empty() {
        // All points collinear: keep the two extremes.
        vec![idx[0], *idx.last().unwrap()]
    } else {
        lower
    }
}

/// Exact vertex test: `points[i]` is a hull vertex iff some unit-circle
/// center at distance 1 from it keeps every other point within distance 1.
///
/// Each other point constrains the center angle to one closed interval;
/// the intervals intersect iff some interval endpoint satisfies all
/// constraints.
pub fn oracle_is_vertex(points: &[Point], i: usize) -> Result<bool, PolyError> {
    if points.is_empty() {
        return Err(PolyError::Geom(GeomError::EmptyInput));
    }
    let mec = min_enclosing_circle(points)?;
    if mec.radius > 1.0 + 1e-12 {
        return Err(PolyError::NotInUnitDisc { radius: mec.radius });
    }
    let x = points[i];
    let mut constraints: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for (j, y) in points.iter().enumerate() {
        if j == i {
            continue;
        }
        let d = x.dist(*y);
        if d <= EPS_GEOM {
            continue; // duplicates constrain nothing
        }
        // Center x + e(phi) keeps y within distance 1 iff
        // cos(phi - psi) >= d/2 with psi the direction of y - x.
        let psi = normalize_angle((y.y - x.y).atan2(y.x - x.x));
        let bound = (d * 0.5).min(1.0);
        constraints.push((psi, bound));
    }
    if constraints.is_empty() {
        return Ok(true);
    }
    let satisfied = |phi: f64| {
        constraints
            .iter()
            .all(|&(psi, bound)| (phi - psi).cos() >= bound - EPS_GEOM)
    };
    for &(psi, bound) in &constraints {
        let w = bound.acos();
        if satisfied(psi - w) || satisfied(psi + w) || satisfied(psi) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Area of `P` missed by the hull: `area(P) - area(hull)`.
pub fn missed_area(region: &DiscPolygon, hull: &HullResult) -> f64 {
    region.area() - hull.hull.area()
}
