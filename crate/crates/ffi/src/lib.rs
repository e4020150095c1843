//! C ABI for the disc-polygon kernel.
//!
//! Regions are exposed as opaque handles created and freed here; every
//! function returns a `DiscpolyStatus` and writes results through out
//! pointers. The header `include/discpoly.h` is generated at build time.
//!
//! Thread safety: handles are immutable after construction and may be
//! shared across threads; `discpoly_polygon_free` must be called exactly
//! once per handle.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use discpoly::disc_polygon::{regular_disc_polygon, DiscPolygon};
use discpoly::error::{GeomError, PolyError};
use discpoly::geom::Point;
use discpoly::hull::{missed_area, r_hull};
use discpoly::sampling::{sample_uniform, Region, RngStream};

/// Status codes returned by every FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscpolyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    DegenerateChord = 3,
    ChordTooLong = 4,
    NotInUnitDisc = 5,
    HeightOutOfRange = 6,
    PointsOutside = 7,
    DegenerateCap = 8,
    ZeroArea = 9,
    NotRConvex = 10,
    BufferTooSmall = 11,
    InternalPanic = 12,
}

fn status_of(err: &PolyError) -> DiscpolyStatus {
    match err {
        PolyError::Geom(GeomError::DegenerateChord { .. }) => DiscpolyStatus::DegenerateChord,
        PolyError::Geom(GeomError::ChordTooLong { .. }) => DiscpolyStatus::ChordTooLong,
        PolyError::Geom(_) => DiscpolyStatus::InvalidInput,
        PolyError::NotInUnitDisc { .. } => DiscpolyStatus::NotInUnitDisc,
        PolyError::HeightOutOfRange { .. } => DiscpolyStatus::HeightOutOfRange,
        PolyError::PointsOutside => DiscpolyStatus::PointsOutside,
        PolyError::DegenerateCap { .. } => DiscpolyStatus::DegenerateCap,
        PolyError::Invalid { .. } => DiscpolyStatus::InvalidInput,
        PolyError::ZeroArea => DiscpolyStatus::ZeroArea,
        PolyError::NotRConvex { .. } => DiscpolyStatus::NotRConvex,
    }
}

/// Opaque disc-polygon handle.
pub struct DiscpolyPolygon {
    inner: DiscPolygon,
}

fn guarded<F: FnOnce() -> DiscpolyStatus>(f: F) -> DiscpolyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => DiscpolyStatus::InternalPanic,
    }
}

unsafe fn read_points(xy: *const f64, n_points: usize) -> Vec<Point> {
    let flat = std::slice::from_raw_parts(xy, 2 * n_points);
    flat.chunks_exact(2).map(|c| Point::new(c[0], c[1])).collect()
}

fn give(out: *mut *mut DiscpolyPolygon, poly: DiscPolygon) -> DiscpolyStatus {
    let boxed = Box::new(DiscpolyPolygon { inner: poly });
    unsafe { *out = Box::into_raw(boxed) };
    DiscpolyStatus::Ok
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn discpoly_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Build a disc-polygon from `n_points` counterclockwise vertices given as
/// interleaved x,y pairs in units of `r`; the polygon is rescaled to the
/// unit-radius kernel form.
///
/// # Safety
/// `xy` must point to `2 * n_points` readable doubles and `out` to a
/// writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn discpoly_polygon_from_vertices(
    xy: *const f64,
    n_points: usize,
    r: f64,
    out: *mut *mut DiscpolyPolygon,
) -> DiscpolyStatus {
    if xy.is_null() || out.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    if n_points == 0 || !(r.is_finite() && r > 0.0) {
        return DiscpolyStatus::InvalidInput;
    }
    let pts = read_points(xy, n_points);
    guarded(|| {
        let scaled: Vec<Point> = pts.iter().map(|p| *p * (1.0 / r)).collect();
        match DiscPolygon::from_vertices_ccw(scaled) {
            Ok(poly) => give(out, poly),
            Err(e) => status_of(&e),
        }
    })
}

/// Build the disc-polygon over a regular `k`-gon with the given side.
///
/// # Safety
/// `out` must point to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn discpoly_polygon_regular(
    k: usize,
    side: f64,
    out: *mut *mut DiscpolyPolygon,
) -> DiscpolyStatus {
    if out.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    guarded(|| match regular_disc_polygon(k, side) {
        Ok(poly) => give(out, poly),
        Err(e) => status_of(&e),
    })
}

/// Build the spindle of two points.
///
/// # Safety
/// `out` must point to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn discpoly_polygon_spindle(
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
    out: *mut *mut DiscpolyPolygon,
) -> DiscpolyStatus {
    if out.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    guarded(
        || match DiscPolygon::spindle(Point::new(x1, y1), Point::new(x2, y2)) {
            Ok(poly) => give(out, poly),
            Err(e) => status_of(&PolyError::from(e)),
        },
    )
}

/// Free a handle returned by any constructor. Passing null is a no-op.
///
/// # Safety
/// `poly` must be a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn discpoly_polygon_free(poly: *mut DiscpolyPolygon) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Number of vertices (0 for the empty region, 1 for a point).
///
/// # Safety
/// `poly` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn discpoly_polygon_f0(
    poly: *const DiscpolyPolygon,
    out: *mut usize,
) -> DiscpolyStatus {
    if poly.is_null() || out.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    *out = (*poly).inner.f0();
    DiscpolyStatus::Ok
}

/// Region area at the unit-radius scale.
///
/// # Safety
/// `poly` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn discpoly_polygon_area(
    poly: *const DiscpolyPolygon,
    out: *mut f64,
) -> DiscpolyStatus {
    if poly.is_null() || out.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    *out = (*poly).inner.area();
    DiscpolyStatus::Ok
}

/// Membership test (closed region).
///
/// # Safety
/// `poly` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn discpoly_polygon_contains(
    poly: *const DiscpolyPolygon,
    x: f64,
    y: f64,
    out: *mut bool,
) -> DiscpolyStatus {
    if poly.is_null() || out.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    *out = (*poly).inner.contains(Point::new(x, y));
    DiscpolyStatus::Ok
}

/// Copy the vertices as interleaved x,y pairs. `capacity` counts points;
/// the number written is stored in `written`.
///
/// # Safety
/// `poly` must be a live handle; `out_xy` must have room for
/// `2 * capacity` doubles; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn discpoly_polygon_vertices(
    poly: *const DiscpolyPolygon,
    out_xy: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> DiscpolyStatus {
    if poly.is_null() || out_xy.is_null() || written.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    let verts = (*poly).inner.vertices();
    if verts.len() > capacity {
        return DiscpolyStatus::BufferTooSmall;
    }
    let out = std::slice::from_raw_parts_mut(out_xy, 2 * verts.len());
    for (i, v) in verts.iter().enumerate() {
        out[2 * i] = v.x;
        out[2 * i + 1] = v.y;
    }
    *written = verts.len();
    DiscpolyStatus::Ok
}

/// Hull of `n_points` points under intersections of unit discs. On success
/// writes the hull handle, its vertex count, and (when `out_indices` is not
/// null and `index_capacity` suffices) the input indices of the hull
/// vertices in counterclockwise order.
///
/// # Safety
/// `xy` must point to `2 * n_points` doubles; out pointers must be
/// writable; `out_indices`, when non-null, must have room for
/// `index_capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn discpoly_hull(
    xy: *const f64,
    n_points: usize,
    out: *mut *mut DiscpolyPolygon,
    out_f0: *mut usize,
    out_indices: *mut usize,
    index_capacity: usize,
) -> DiscpolyStatus {
    if xy.is_null() || out.is_null() || out_f0.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    if n_points == 0 {
        return DiscpolyStatus::InvalidInput;
    }
    let pts = read_points(xy, n_points);
    guarded(|| match r_hull(&pts) {
        Ok(res) => {
            if !out_indices.is_null() {
                if res.vertex_indices.len() > index_capacity {
                    return DiscpolyStatus::BufferTooSmall;
                }
                let slot = std::slice::from_raw_parts_mut(out_indices, res.vertex_indices.len());
                slot.copy_from_slice(&res.vertex_indices);
            }
            *out_f0 = res.f0;
            give(out, res.hull)
        }
        Err(e) => status_of(&e),
    })
}

/// Area of the region missed by the hull of the given points.
///
/// # Safety
/// `region` must be a live handle; `xy` must point to `2 * n_points`
/// doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn discpoly_hull_missed_area(
    region: *const DiscpolyPolygon,
    xy: *const f64,
    n_points: usize,
    out: *mut f64,
) -> DiscpolyStatus {
    if region.is_null() || xy.is_null() || out.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    if n_points == 0 {
        return DiscpolyStatus::InvalidInput;
    }
    let pts = read_points(xy, n_points);
    guarded(|| match r_hull(&pts) {
        Ok(res) => {
            *out = missed_area(&(*region).inner, &res);
            DiscpolyStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Areas of the two caps cut from the region by the unit circles through
/// two interior points, smaller first.
///
/// # Safety
/// `region` must be a live handle; both out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn discpoly_cap_pair(
    region: *const DiscpolyPolygon,
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
    out_minus: *mut f64,
    out_plus: *mut f64,
) -> DiscpolyStatus {
    if region.is_null() || out_minus.is_null() || out_plus.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    guarded(|| {
        match discpoly::caps::cap_pair(
            &(*region).inner,
            Point::new(x1, y1),
            Point::new(x2, y2),
        ) {
            Ok((a_minus, a_plus)) => {
                *out_minus = a_minus;
                *out_plus = a_plus;
                DiscpolyStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Largest cap height in direction `(ux, uy)` (normalized internally).
///
/// # Safety
/// `region` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn discpoly_t_star(
    region: *const DiscpolyPolygon,
    ux: f64,
    uy: f64,
    out: *mut f64,
) -> DiscpolyStatus {
    if region.is_null() || out.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    let norm = (ux * ux + uy * uy).sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return DiscpolyStatus::InvalidInput;
    }
    guarded(|| {
        let u = Point::new(ux / norm, uy / norm);
        *out = discpoly::caps::t_star(&(*region).inner, u);
        DiscpolyStatus::Ok
    })
}

/// Draw `n_points` uniform points from the region into interleaved x,y
/// pairs, using the deterministic stream `(seed, stream_id)`.
///
/// # Safety
/// `region` must be a live handle; `out_xy` must have room for
/// `2 * n_points` doubles.
#[no_mangle]
pub unsafe extern "C" fn discpoly_sample_uniform(
    region: *const DiscpolyPolygon,
    seed: u64,
    stream_id: u64,
    n_points: usize,
    out_xy: *mut f64,
) -> DiscpolyStatus {
    if region.is_null() || out_xy.is_null() {
        return DiscpolyStatus::NullPointer;
    }
    guarded(|| {
        let region = Region::Poly((*region).inner.clone());
        match sample_uniform(&region, RngStream::new(seed, stream_id), n_points) {
            Ok(pts) => {
                let out = std::slice::from_raw_parts_mut(out_xy, 2 * n_points);
                for (i, p) in pts.iter().enumerate() {
                    out[2 * i] = p.x;
                    out[2 * i + 1] = p.y;
                }
                DiscpolyStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}
