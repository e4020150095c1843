#ifndef DISCPOLY_H
#define DISCPOLY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every FFI call.
 */
typedef enum DiscpolyStatus {
  DiscpolyStatus_Ok = 0,
  DiscpolyStatus_NullPointer = 1,
  DiscpolyStatus_InvalidInput = 2,
  DiscpolyStatus_DegenerateChord = 3,
  DiscpolyStatus_ChordTooLong = 4,
  DiscpolyStatus_NotInUnitDisc = 5,
  DiscpolyStatus_HeightOutOfRange = 6,
  DiscpolyStatus_PointsOutside = 7,
  DiscpolyStatus_DegenerateCap = 8,
  DiscpolyStatus_ZeroArea = 9,
  DiscpolyStatus_NotRConvex = 10,
  DiscpolyStatus_BufferTooSmall = 11,
  DiscpolyStatus_InternalPanic = 12,
} DiscpolyStatus;

/**
 * Opaque disc-polygon handle.
 */
typedef struct DiscpolyPolygon DiscpolyPolygon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static C string.
 */
const char *discpoly_version(void);

/**
 * Build a disc-polygon from `n_points` counterclockwise vertices given as
 * interleaved x,y pairs in units of `r`; the polygon is rescaled to the
 * unit-radius kernel form.
 *
 * # Safety
 * `xy` must point to `2 * n_points` readable doubles and `out` to a
 * writable pointer slot.
 */
enum DiscpolyStatus discpoly_polygon_from_vertices(const double *xy,
                                                   uintptr_t n_points,
                                                   double r,
                                                   struct DiscpolyPolygon **out);

/**
 * Build the disc-polygon over a regular `k`-gon with the given side.
 *
 * # Safety
 * `out` must point to a writable pointer slot.
 */
enum DiscpolyStatus discpoly_polygon_regular(uintptr_t k,
                                             double side,
                                             struct DiscpolyPolygon **out);

/**
 * Build the spindle of two points.
 *
 * # Safety
 * `out` must point to a writable pointer slot.
 */
enum DiscpolyStatus discpoly_polygon_spindle(double x1,
                                             double y1,
                                             double x2,
                                             double y2,
                                             struct DiscpolyPolygon **out);

/**
 * Free a handle returned by any constructor. Passing null is a no-op.
 *
 * # Safety
 * `poly` must be a handle from this library that has not been freed.
 */
void discpoly_polygon_free(struct DiscpolyPolygon *poly);

/**
 * Number of vertices (0 for the empty region, 1 for a point).
 *
 * # Safety
 * `poly` must be a live handle, `out` writable.
 */
enum DiscpolyStatus discpoly_polygon_f0(const struct DiscpolyPolygon *poly, uintptr_t *out);

/**
 * Region area at the unit-radius scale.
 *
 * # Safety
 * `poly` must be a live handle, `out` writable.
 */
enum DiscpolyStatus discpoly_polygon_area(const struct DiscpolyPolygon *poly, double *out);

/**
 * Membership test (closed region).
 *
 * # Safety
 * `poly` must be a live handle, `out` writable.
 */
enum DiscpolyStatus discpoly_polygon_contains(const struct DiscpolyPolygon *poly,
                                              double x,
                                              double y,
                                              bool *out);

/**
 * Copy the vertices as interleaved x,y pairs. `capacity` counts points;
 * the number written is stored in `written`.
 *
 * # Safety
 * `poly` must be a live handle; `out_xy` must have room for
 * `2 * capacity` doubles; `written` must be writable.
 */
enum DiscpolyStatus discpoly_polygon_vertices(const struct DiscpolyPolygon *poly,
                                              double *out_xy,
                                              uintptr_t capacity,
                                              uintptr_t *written);

/**
 * Hull of `n_points` points under intersections of unit discs. On success
 * writes the hull handle, its vertex count, and (when `out_indices` is not
 * null and `index_capacity` suffices) the input indices of the hull
 * vertices in counterclockwise order.
 *
 * # Safety
 * `xy` must point to `2 * n_points` doubles; out pointers must be
 * writable; `out_indices`, when non-null, must have room for
 * `index_capacity` entries.
 */
enum DiscpolyStatus discpoly_hull(const double *xy,
                                  uintptr_t n_points,
                                  struct DiscpolyPolygon **out,
                                  uintptr_t *out_f0,
                                  uintptr_t *out_indices,
                                  uintptr_t index_capacity);

/**
 * Area of the region missed by the hull of the given points.
 *
 * # Safety
 * `region` must be a live handle; `xy` must point to `2 * n_points`
 * doubles; `out` must be writable.
 */
enum DiscpolyStatus discpoly_hull_missed_area(const struct DiscpolyPolygon *region,
                                              const double *xy,
                                              uintptr_t n_points,
                                              double *out);

/**
 * Areas of the two caps cut from the region by the unit circles through
 * two interior points, smaller first.
 *
 * # Safety
 * `region` must be a live handle; both out pointers writable.
 */
enum DiscpolyStatus discpoly_cap_pair(const struct DiscpolyPolygon *region,
                                      double x1,
                                      double y1,
                                      double x2,
                                      double y2,
                                      double *out_minus,
                                      double *out_plus);

/**
 * Largest cap height in direction `(ux, uy)` (normalized internally).
 *
 * # Safety
 * `region` must be a live handle, `out` writable.
 */
enum DiscpolyStatus discpoly_t_star(const struct DiscpolyPolygon *region,
                                    double ux,
                                    double uy,
                                    double *out);

/**
 * Draw `n_points` uniform points from the region into interleaved x,y
 * pairs, using the deterministic stream `(seed, stream_id)`.
 *
 * # Safety
 * `region` must be a live handle; `out_xy` must have room for
 * `2 * n_points` doubles.
 */
enum DiscpolyStatus discpoly_sample_uniform(const struct DiscpolyPolygon *region,
                                            uint64_t seed,
                                            uint64_t stream_id,
                                            uintptr_t n_points,
                                            double *out_xy);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISCPOLY_H */
