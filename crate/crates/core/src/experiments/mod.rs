//! Monte Carlo harness for random disc-polygons.
//!
//! Estimates the expected vertex count and missed area of random hulls at a
//! ladder of sample sizes, fits the logarithmic growth law, and cross-checks
//! the direct estimates against the pair-integral form, the vertex/area
//! identity, and the change-of-variables Jacobian of the cap
//! parametrization. All randomness flows from one seed via per-trial
//! streams; results do not depend on the degree of parallelism.

pub mod numeric;

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::caps::{
    cap_pair, disc_cap, ell1_identity_residual, min_nonadjacent_boundary_distance, normal_cones,
    support_point, t_star, vertex_cap_geometry,
};
use crate::disc_polygon::DiscPolygon;
use crate::error::PolyError;
use crate::geom::{ccw_delta, normalize_angle, unit_disc_centers_through, Point};
use crate::hull::r_hull;
use crate::sampling::{sample_uniform, Region, RngStream, SmoothDisc};

use numeric::{det4_abs, mean_and_se, simpson_to_tol};

use rand::Rng;

/// Smallest cap height drawn by the randomized lemma checks; below this the
/// area difference drowns in roundoff.
const MIN_CAP_HEIGHT: f64 = 1e-6;

/// What a single invocation of the harness runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Vertex,
    Efron,
    Pairs,
    Smooth,
    Jacobian,
}

/// Shared knobs of an experiment run. The kernel always works at radius 1;
/// `r` only records the pre-scale factor applied at load time.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub region: Region,
    pub region_name: String,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub r: f64,
}

impl ExperimentConfig {
    pub fn new(region: Region, region_name: impl Into<String>) -> Self {
        ExperimentConfig {
            region,
            region_name: region_name.into(),
            n_values: vec![100, 400, 1600, 6400, 25600],
            trials: 500,
            seed: 0,
            r: 1.0,
        }
    }
}

/// One row of the results table.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub n: usize,
    pub trials: usize,
    pub mean_f0: f64,
    pub se_f0: f64,
    pub mean_missed_area: f64,
    pub se_area: f64,
}

/// Results of a vertex-count/missed-area sweep over `n`.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentResult {
    pub rows: Vec<ResultRow>,
    /// Least-squares slope of `mean_f0` against `ln n` (rows with
    /// `n >= 100`; the growth law is asymptotic and small `n` contaminates
    /// the fit).
    pub slope_f0: f64,
    /// Least-squares slope of `n * mean_missed_area` against `ln n`.
    pub slope_area: f64,
    /// Expected limits: `2/3 * f0(P)` and `2/3 * f0(P) * area(P)`.
    pub target_slope_f0: f64,
    pub target_slope_area: f64,
}

fn slope_over_log_n(rows: &[ResultRow], value: impl Fn(&ResultRow) -> f64) -> f64 {
    let eligible: Vec<&ResultRow> = rows.iter().filter(|r| r.n >= 100).collect();
    let used: Vec<&ResultRow> = if eligible.len() >= 2 {
        eligible
    } else {
        rows.iter().collect()
    };
    if used.len() < 2 {
        return f64::NAN;
    }
    let xs: Vec<f64> = used.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = used.iter().map(|r| value(r)).collect();
    crate::geom::ols_line(&xs, &ys).0
}

fn hull_stats_for_n(
    region: &Region,
    region_area: f64,
    n: usize,
    trials: usize,
    seed: u64,
    stream_base: u64,
) -> Result<ResultRow, PolyError> {
    let per_trial: Result<Vec<(f64, f64)>, PolyError> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let stream = RngStream::new(seed, stream_base + trial as u64);
            let pts = sample_uniform(region, stream, n)?;
            let hull = r_hull(&pts)?;
            Ok((hull.f0 as f64, region_area - hull.hull.area()))
        })
        .collect();
    let per_trial = per_trial?;
    // Sequential reduction in trial order keeps the result independent of
    // the thread count.
    let f0s: Vec<f64> = per_trial.iter().map(|t| t.0).collect();
    let missed: Vec<f64> = per_trial.iter().map(|t| t.1).collect();
    let (mean_f0, se_f0) = mean_and_se(&f0s);
    let (mean_missed_area, se_area) = mean_and_se(&missed);
    Ok(ResultRow {
        n,
        trials,
        mean_f0,
        se_f0,
        mean_missed_area,
        se_area,
    })
}

/// Sweep `n` over the configured ladder, estimating the expected vertex
/// count and missed area of random hulls in a disc-polygon.
pub fn run_vertex_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult, PolyError> {
    let Region::Poly(poly) = &cfg.region else {
        return Err(PolyError::Invalid {
            reason: "vertex experiment needs a disc-polygon region".into(),
        });
    };
    let f0 = poly.f0() as f64;
    let area = poly.area();
    let mut rows = Vec::with_capacity(cfg.n_values.len());
    for (ni, &n) in cfg.n_values.iter().enumerate() {
        let stream_base = (ni * cfg.trials) as u64;
        rows.push(hull_stats_for_n(
            &cfg.region,
            area,
            n,
            cfg.trials,
            cfg.seed,
            stream_base,
        )?);
    }
    let slope_f0 = slope_over_log_n(&rows, |r| r.mean_f0);
    let slope_area = slope_over_log_n(&rows, |r| r.n as f64 * r.mean_missed_area);
    Ok(ExperimentResult {
        rows,
        slope_f0,
        slope_area,
        target_slope_f0: 2.0 / 3.0 * f0,
        target_slope_area: 2.0 / 3.0 * f0 * area,
    })
}

/// Both sides of the exact identity linking the expected vertex count of an
/// `(n+1)`-point hull to the expected missed area of an `n`-point hull.
#[derive(Debug, Clone, Serialize)]
pub struct EfronCheck {
    /// Monte Carlo estimate of `E f0` with `n + 1` points.
    pub lhs: f64,
    /// `(n + 1) / area(P)` times the Monte Carlo estimate of the missed
    /// area with `n` points.
    pub rhs: f64,
    pub combined_se: f64,
    pub n: usize,
    pub trials: usize,
}

/// Estimate both sides of the vertex/missed-area identity from disjoint
/// stream ranges of the same seed.
pub fn efron_check(
    poly: &DiscPolygon,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<EfronCheck, PolyError> {
    let region = Region::Poly(poly.clone());
    let area = poly.area();
    let lhs_row = hull_stats_for_n(&region, area, n + 1, trials, seed, 0)?;
    let rhs_row = hull_stats_for_n(&region, area, n, trials, seed, trials as u64)?;
    let scale = (n + 1) as f64 / area;
    let rhs = scale * rhs_row.mean_missed_area;
    let combined_se = (lhs_row.se_f0.powi(2) + (scale * rhs_row.se_area).powi(2)).sqrt();
    Ok(EfronCheck {
        lhs: lhs_row.mean_f0,
        rhs,
        combined_se,
        n,
        trials,
    })
}

/// Pair-integral estimate of the expected vertex count.
#[derive(Debug, Clone, Serialize)]
pub struct PairEstimate {
    pub mean_f0: f64,
    pub se: f64,
    pub pairs: usize,
}

const PAIR_BATCH: usize = 4096;

/// Estimate `E f0(P_n)` by sampling point pairs: a pair spans an edge when
/// one of its two caps is empty of the other points, so
/// `E f0 = C(n,2) * E[(1 - A_minus/A)^(n-2) + (1 - A_plus/A)^(n-2)]`.
pub fn pair_integral_estimator(
    poly: &DiscPolygon,
    n: usize,
    pairs: usize,
    seed: u64,
) -> Result<PairEstimate, PolyError> {
    if n < 2 {
        return Err(PolyError::Invalid {
            reason: "pair estimator needs n >= 2".into(),
        });
    }
    let area = poly.area();
    if area <= 0.0 {
        return Err(PolyError::ZeroArea);
    }
    let (lo, hi) = poly.bounding_box();
    let w = hi.x - lo.x;
    let h = hi.y - lo.y;
    let exponent = (n - 2) as i32;
    let batches = pairs.div_ceil(PAIR_BATCH);
    let values: Vec<Vec<f64>> = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let count = PAIR_BATCH.min(pairs - batch * PAIR_BATCH);
            let mut rng = RngStream::new(seed, batch as u64).rng();
            let draw = |rng: &mut rand_chacha::ChaCha8Rng| loop {
                let q = Point::new(lo.x + rng.gen::<f64>() * w, lo.y + rng.gen::<f64>() * h);
                if poly.contains(q) {
                    return q;
                }
            };
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let x1 = draw(&mut rng);
                let x2 = draw(&mut rng);
                if x1.dist(x2) <= 1e-12 {
                    continue;
                }
                let (a_minus, a_plus) = cap_pair(poly, x1, x2)
                    .expect("sampled points lie inside the region");
                let g = (1.0 - a_minus / area).max(0.0).powi(exponent)
                    + (1.0 - a_plus / area).max(0.0).powi(exponent);
                out.push(g);
            }
            out
        })
        .collect();
    let flat: Vec<f64> = values.into_iter().flatten().collect();
    let (mean_g, se_g) = mean_and_se(&flat);
    let pairs_of_n = n as f64 * (n as f64 - 1.0) / 2.0;
    Ok(PairEstimate {
        mean_f0: pairs_of_n * mean_g,
        se: pairs_of_n * se_g,
        pairs,
    })
}

/// Analytic vs. finite-difference Jacobian of the cap parametrization.
#[derive(Debug, Clone, Serialize)]
pub struct JacobianCheck {
    pub analytic: f64,
    pub numeric: f64,
    /// Whether the cap normal sits in a vertex cone (factor `1 + t`) rather
    /// than an edge normal range (factor `t`).
    pub in_vertex_cone: bool,
}

/// The map from cap coordinates `(u, t, u1, u2)` to the point pair on the
/// cutting circle.
fn cap_chart(poly: &DiscPolygon, phi: f64, t: f64, phi1: f64, phi2: f64) -> [f64; 4] {
    let u = Point::from_angle(phi);
    let base = support_point(poly, u) - u * (1.0 + t);
    let x1 = base + Point::from_angle(phi1);
    let x2 = base + Point::from_angle(phi2);
    [x1.x, x1.y, x2.x, x2.y]
}

/// Compare the closed-form Jacobian `(1+t)|u1 x u2|` (vertex cone) or
/// `t |u1 x u2|` (edge normal) against 4x4 central differences of the cap
/// parametrization.
pub fn jacobian_check(
    poly: &DiscPolygon,
    u: Point,
    t: f64,
    u1: Point,
    u2: Point,
) -> Result<JacobianCheck, PolyError> {
    let cross = u1.cross(u2).abs();
    if cross < 1e-10 {
        return Err(PolyError::DegenerateCap { cross });
    }
    let phi = crate::geom::angle_of(u)?;
    let phi1 = crate::geom::angle_of(u1)?;
    let phi2 = crate::geom::angle_of(u2)?;
    let ts = t_star(poly, u);
    if !(t > 0.0 && t <= ts) {
        return Err(PolyError::HeightOutOfRange { t, t_star: ts });
    }
    let in_vertex_cone = normal_cones(poly)
        .iter()
        .any(|c| c.width() > 0.0 && c.contains_angle(phi));
    let analytic = if in_vertex_cone { 1.0 + t } else { t } * cross;

    let h = 1e-5;
    let vars = [phi, t, phi1, phi2];
    let mut jac = [[0.0_f64; 4]; 4];
    for (col, _) in vars.iter().enumerate() {
        let mut plus = vars;
        let mut minus = vars;
        plus[col] += h;
        minus[col] -= h;
        let fp = cap_chart(poly, plus[0], plus[1], plus[2], plus[3]);
        let fm = cap_chart(poly, minus[0], minus[1], minus[2], minus[3]);
        for row in 0..4 {
            jac[row][col] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    Ok(JacobianCheck {
        analytic,
        numeric: det4_abs(jac),
        in_vertex_cone,
    })
}

/// Boundary integral of `(curvature - 1/r)^(1/3)` with respect to arc
/// length; the constant governing the `n^(1/3)` vertex growth of random
/// hulls in smooth regions.
pub fn c_of_k(region: &SmoothDisc, r: f64) -> Result<f64, PolyError> {
    region.validate()?;
    let inv_r = if r.is_finite() { 1.0 / r } else { 0.0 };
    let kappa_min = region.min_curvature();
    if kappa_min <= inv_r {
        return Err(PolyError::NotRConvex { kappa_min, inv_r });
    }
    let integrand = |theta: f64| (region.curvature(theta) - inv_r).cbrt() * region.speed(theta);
    Ok(simpson_to_tol(&integrand, 0.0, TAU, 1e-8))
}

/// Results of the smooth-region sweep, with the predicted limits of the
/// rescaled vertex count and missed area.
#[derive(Debug, Clone, Serialize)]
pub struct SmoothResult {
    pub rows: Vec<ResultRow>,
    pub c_value: f64,
    /// Limit of `E f0 * n^(-1/3)`.
    pub vertex_limit: f64,
    /// Limit of `E missed * n^(2/3)`.
    pub missed_area_limit: f64,
}

/// Sweep `n` for a smooth region and report the rescaled estimates next to
/// their predicted limits.
pub fn smooth_case_experiment(
    smooth: &SmoothDisc,
    cfg: &ExperimentConfig,
) -> Result<SmoothResult, PolyError> {
    smooth.validate()?;
    let kappa_min = smooth.min_curvature();
    if kappa_min <= 1.0 {
        return Err(PolyError::NotRConvex {
            kappa_min,
            inv_r: 1.0,
        });
    }
    let area = smooth.area();
    let region = Region::Smooth(*smooth);
    let mut rows = Vec::with_capacity(cfg.n_values.len());
    for (ni, &n) in cfg.n_values.iter().enumerate() {
        let stream_base = (ni * cfg.trials) as u64;
        rows.push(hull_stats_for_n(
            &region,
            area,
            n,
            cfg.trials,
            cfg.seed,
            stream_base,
        )?);
    }
    let c_value = c_of_k(smooth, 1.0)?;
    let gamma53 = gamma(5.0 / 3.0);
    let vertex_limit = (2.0 / (3.0 * area)).cbrt() * gamma53 * c_value;
    let missed_area_limit = (2.0 * area * area / 3.0).cbrt() * gamma53 * c_value;
    Ok(SmoothResult {
        rows,
        c_value,
        vertex_limit,
        missed_area_limit,
    })
}

/// Outcome of one randomized property check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passes: u64,
    pub failures: u64,
    pub skipped: bool,
}

impl CheckResult {
    fn skipped(name: &'static str) -> Self {
        CheckResult {
            name,
            passes: 0,
            failures: 0,
            skipped: true,
        }
    }
}

/// Pass/fail counts of the randomized cap and decomposition properties.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub checks: Vec<CheckResult>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

fn draw_inside(poly: &DiscPolygon, rng: &mut rand_chacha::ChaCha8Rng) -> Point {
    let (lo, hi) = poly.bounding_box();
    loop {
        let q = Point::new(
            lo.x + rng.gen::<f64>() * (hi.x - lo.x),
            lo.y + rng.gen::<f64>() * (hi.y - lo.y),
        );
        if poly.contains(q) {
            return q;
        }
    }
}

/// Run the randomized cap/decomposition properties of the geometry layer on
/// one region: cap area bounds, the pair decomposition, near-vertex asymptotics,
/// the chord-arc lower bound, Gauss-map partition and cap monotonicity.
pub fn lemma_suite(poly: &DiscPolygon, seed: u64) -> LemmaReport {
    let mut checks = Vec::new();
    let area = poly.area();
    let delta = 0.1 * area;

    // Cap bounds: t*ell/(2*pi) < A < 2*t*ell for small caps.
    {
        let mut rng = RngStream::new(seed, 1).rng();
        let mut passes = 0;
        let mut failures = 0;
        let mut produced = 0;
        let mut attempts = 0;
        while produced < 10_000 && attempts < 200_000 {
            attempts += 1;
            let u = Point::from_angle(rng.gen::<f64>() * TAU);
            let ts = t_star(poly, u);
            let t = MIN_CAP_HEIGHT + rng.gen::<f64>() * (ts - MIN_CAP_HEIGHT).max(0.0);
            let Ok(cap) = disc_cap(poly, u, t) else {
                continue;
            };
            if cap.area > delta {
                continue;
            }
            produced += 1;
            let lower = t * cap.chord_arc_length / TAU;
            let upper = 2.0 * t * cap.chord_arc_length;
            if cap.area > lower && cap.area < upper {
                passes += 1;
            } else {
                failures += 1;
            }
        }
        checks.push(CheckResult {
            name: "cap_area_bounds",
            passes,
            failures,
            skipped: false,
        });
    }

    // Decomposition: the two caps and the spindle cover P (subadditive
    // areas), and the lens of the two discs inside P is exactly the spindle.
    {
        let mut rng = RngStream::new(seed, 2).rng();
        let mut passes = 0;
        let mut failures = 0;
        for _ in 0..10_000 {
            let x1 = draw_inside(poly, &mut rng);
            let x2 = draw_inside(poly, &mut rng);
            if x1.dist(x2) <= 1e-12 {
                continue;
            }
            let Ok((a_minus, a_plus)) = cap_pair(poly, x1, x2) else {
                failures += 1;
                continue;
            };
            let spindle = DiscPolygon::spindle(x1, x2)
                .map(|s| s.area())
                .unwrap_or(0.0);
            let covers = a_minus + a_plus + spindle - area >= -1e-9 * area;
            let lens_ok = match unit_disc_centers_through(x1, x2) {
                Ok((left, right)) => {
                    let lens = poly.intersect_with_disc(left).intersect_with_disc(right);
                    (lens.area() - spindle).abs() <= 1e-9 * area
                }
                Err(_) => false,
            };
            if covers && lens_ok {
                passes += 1;
            } else {
                failures += 1;
            }
        }
        checks.push(CheckResult {
            name: "pair_decomposition",
            passes,
            failures,
            skipped: false,
        });
    }

    // Near-vertex area split: A1 within (1 +/- 0.05)/2 * t * ell1 for
    // t <= 0.01 * beta.
    {
        let cones = normal_cones(poly);
        let mut passes = 0;
        let mut failures = 0;
        let mut ran = false;
        for cone in &cones {
            if cone.width() <= 1e-3 {
                continue;
            }
            for i in 1..=8 {
                let beta = cone.width() * i as f64 / 9.0;
                for frac in [1.0, 0.3, 0.05] {
                    let t = 0.01 * beta * frac;
                    let Some(g) = vertex_cap_geometry(poly, cone.vertex_index, beta, t) else {
                        continue;
                    };
                    ran = true;
                    let mid = 0.5 * g.t * g.ell1;
                    if g.a1 >= 0.95 * mid && g.a1 <= 1.05 * mid {
                        passes += 1;
                    } else {
                        failures += 1;
                    }
                }
            }
        }
        checks.push(if ran {
            CheckResult {
                name: "near_vertex_area_split",
                passes,
                failures,
                skipped: false,
            }
        } else {
            CheckResult::skipped("near_vertex_area_split")
        });
    }

    // Geometric (beta, t, ell1) triples satisfy the chord identity to 1e-8,
    // and ell1 tracks t * cot(beta) for small t.
    {
        let cones = normal_cones(poly);
        let mut rng = RngStream::new(seed, 3).rng();
        let mut passes = 0;
        let mut failures = 0;
        let mut ran = false;
        let wide: Vec<_> = cones.iter().filter(|c| c.width() > 0.05).collect();
        if !wide.is_empty() {
            for _ in 0..1000 {
                let cone = wide[rng.gen_range(0..wide.len())];
                // The chord identity describes the configuration with the
                // foot point inside the edge disc: beta below pi/2 and
                // t < 2 cos(beta).
                let hi = (cone.width() - 0.02).min(std::f64::consts::FRAC_PI_2);
                let beta = 0.02 + rng.gen::<f64>() * (hi - 0.02).max(1e-3);
                let t = (1e-5 + rng.gen::<f64>() * 1e-2).min(1.5 * beta.cos());
                let Some(g) = vertex_cap_geometry(poly, cone.vertex_index, beta, t) else {
                    continue;
                };
                ran = true;
                if ell1_identity_residual(g.beta, g.t, g.ell1).abs() <= 1e-8 {
                    passes += 1;
                } else {
                    failures += 1;
                }
            }
            for cone in &wide {
                for beta in [0.1, 0.3, 0.6, 1.0] {
                    if beta >= cone.width() - 1e-3 {
                        continue;
                    }
                    for t in [1e-4, 1e-5] {
                        let Some(g) = vertex_cap_geometry(poly, cone.vertex_index, beta, t)
                        else {
                            continue;
                        };
                        ran = true;
                        let ratio = g.ell1 / (t / beta.tan());
                        if (0.99..=1.01).contains(&ratio) {
                            passes += 1;
                        } else {
                            failures += 1;
                        }
                    }
                }
            }
        }
        checks.push(if ran {
            CheckResult {
                name: "ell1_identity",
                passes,
                failures,
                skipped: false,
            }
        } else {
            CheckResult::skipped("ell1_identity")
        });
    }

    // Chord-arc lower bound for caps holding two or more vertices: needs a
    // pair of non-adjacent edges (k >= 4).
    {
        match min_nonadjacent_boundary_distance(poly) {
            Some(c0) => {
                let arcs = poly.arcs();
                let mut rng = RngStream::new(seed, 4).rng();
                let mut passes = 0;
                let mut failures = 0;
                let mut produced = 0;
                let mut attempts = 0;
                while produced < 2000 && attempts < 100_000 {
                    attempts += 1;
                    let arc = &arcs[rng.gen_range(0..arcs.len())];
                    if arc.sweep <= 1e-6 {
                        continue;
                    }
                    let phi = arc.start_angle + rng.gen::<f64>() * arc.sweep;
                    let u = Point::from_angle(phi);
                    let ts = t_star(poly, u);
                    let t = MIN_CAP_HEIGHT + rng.gen::<f64>() * (ts - MIN_CAP_HEIGHT).max(0.0);
                    let Ok(cap) = disc_cap(poly, u, t) else {
                        continue;
                    };
                    if cap.area > delta {
                        continue;
                    }
                    produced += 1;
                    if cap.chord_arc_length > c0 && cap.area > c0 / TAU * t {
                        passes += 1;
                    } else {
                        failures += 1;
                    }
                }
                checks.push(CheckResult {
                    name: "nonadjacent_chord_bound",
                    passes,
                    failures,
                    skipped: false,
                });
            }
            None => checks.push(CheckResult::skipped("nonadjacent_chord_bound")),
        }
    }

    // Gauss map partition: cone widths plus arc sweeps cover the circle.
    {
        let arcs = poly.arcs();
        let cones = normal_cones(poly);
        let total: f64 = arcs.iter().map(|a| a.sweep).sum::<f64>()
            + cones.iter().map(|c| c.width()).sum::<f64>();
        let ok = (total - TAU).abs() <= 1e-9;
        checks.push(CheckResult {
            name: "gauss_map_partition",
            passes: ok as u64,
            failures: !ok as u64,
            skipped: false,
        });
    }

    // Cap area is nondecreasing in the height (caps are nested in t; the
    // chord arc is not monotone, it returns to zero at t*).
    {
        let mut rng = RngStream::new(seed, 5).rng();
        let mut passes = 0;
        let mut failures = 0;
        for _ in 0..50 {
            let u = Point::from_angle(rng.gen::<f64>() * TAU);
            let ts = t_star(poly, u);
            let mut prev_area = 0.0;
            let mut ok = true;
            for i in 1..=25 {
                let t = ts * i as f64 / 26.0;
                let Ok(cap) = disc_cap(poly, u, t) else {
                    ok = false;
                    break;
                };
                if cap.area + 1e-10 < prev_area {
                    ok = false;
                    break;
                }
                prev_area = cap.area;
            }
            if ok {
                passes += 1;
            } else {
                failures += 1;
            }
        }
        checks.push(CheckResult {
            name: "cap_monotonicity",
            passes,
            failures,
            skipped: false,
        });
    }

    LemmaReport { checks }
}

/// Sample a direction in a vertex cone or an edge normal range, for
/// building Jacobian test configurations.
pub fn sample_cap_direction(
    poly: &DiscPolygon,
    in_vertex_cone: bool,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Option<Point> {
    if in_vertex_cone {
        let cones: Vec<_> = normal_cones(poly)
            .into_iter()
            .filter(|c| c.width() > 0.05)
            .collect();
        if cones.is_empty() {
            return None;
        }
        let cone = &cones[rng.gen_range(0..cones.len())];
        let margin = 0.02 * cone.width();
        let phi = cone.alpha + margin + rng.gen::<f64>() * (cone.width() - 2.0 * margin);
        Some(Point::from_angle(phi))
    } else {
        let arcs: Vec<_> = poly
            .arcs()
            .into_iter()
            .filter(|a| a.sweep > 0.05)
            .collect();
        if arcs.is_empty() {
            return None;
        }
        let arc = &arcs[rng.gen_range(0..arcs.len())];
        let margin = 0.02 * arc.sweep;
        let phi = arc.start_angle + margin + rng.gen::<f64>() * (arc.sweep - 2.0 * margin);
        Some(Point::from_angle(phi))
    }
}

/// Angles of two directions inside the cap's chord arc, at the given
/// fractions of its length.
pub fn chord_arc_directions(
    poly: &DiscPolygon,
    u: Point,
    t: f64,
    frac1: f64,
    frac2: f64,
) -> Result<(Point, Point), PolyError> {
    let cap = disc_cap(poly, u, t)?;
    let (start, len) = cap.chord_arc.ok_or(PolyError::DegenerateCap { cross: 0.0 })?;
    let a1 = normalize_angle(start + frac1 * len);
    let a2 = normalize_angle(start + frac2 * len);
    let _ = ccw_delta(a1, a2);
    Ok((Point::from_angle(a1), Point::from_angle(a2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc_polygon::{regular_disc_polygon, reuleaux_triangle};

    #[test]
    fn two_point_hulls_always_have_two_vertices() {
        let cfg = ExperimentConfig {
            n_values: vec![2],
            trials: 200,
            seed: 5,
            ..ExperimentConfig::new(Region::Poly(reuleaux_triangle()), "reuleaux")
        };
        let res = run_vertex_experiment(&cfg).unwrap();
        assert_eq!(res.rows[0].mean_f0, 2.0);
        assert_eq!(res.rows[0].se_f0, 0.0);
    }

    #[test]
    fn efron_identity_trivial_case() {
        // One sample point: the hull misses everything, and a two-point hull
        // always has two vertices, so both sides equal 2 exactly.
        let poly = reuleaux_triangle();
        let res = efron_check(&poly, 1, 100, 9).unwrap();
        assert_eq!(res.lhs, 2.0);
        assert!((res.rhs - 2.0).abs() <= 1e-12, "rhs {}", res.rhs);
    }

    #[test]
    fn efron_identity_small_run() {
        let poly = reuleaux_triangle();
        let res = efron_check(&poly, 30, 600, 11).unwrap();
        assert!(
            (res.lhs - res.rhs).abs() <= 3.0 * res.combined_se,
            "lhs {} rhs {} se {}",
            res.lhs,
            res.rhs,
            res.combined_se
        );
    }

    #[test]
    fn pair_estimator_is_exact_at_n_2() {
        let poly = reuleaux_triangle();
        let res = pair_integral_estimator(&poly, 2, 2000, 3).unwrap();
        assert!((res.mean_f0 - 2.0).abs() <= 1e-12, "estimate {}", res.mean_f0);
        assert!(res.se <= 1e-12);
    }

    #[test]
    fn pair_estimator_matches_direct_estimate() {
        let poly = reuleaux_triangle();
        let n = 20;
        let pair = pair_integral_estimator(&poly, n, 200_000, 21).unwrap();
        let cfg = ExperimentConfig {
            n_values: vec![n],
            trials: 800,
            seed: 22,
            ..ExperimentConfig::new(Region::Poly(poly), "reuleaux")
        };
        let direct = run_vertex_experiment(&cfg).unwrap();
        let se = (pair.se.powi(2) + direct.rows[0].se_f0.powi(2)).sqrt();
        assert!(
            (pair.mean_f0 - direct.rows[0].mean_f0).abs() <= 3.0 * se,
            "pair {} vs direct {} (se {se})",
            pair.mean_f0,
            direct.rows[0].mean_f0
        );
    }

    #[test]
    fn jacobian_rank_deficient_rejected() {
        let poly = reuleaux_triangle();
        let u = Point::from_angle(0.2);
        let v = Point::from_angle(1.0);
        assert!(matches!(
            jacobian_check(&poly, u, 0.05, v, v),
            Err(PolyError::DegenerateCap { .. })
        ));
    }

    #[test]
    fn jacobian_vertex_cone_factor() {
        let poly = reuleaux_triangle();
        let cones = normal_cones(&poly);
        let u = Point::from_angle(cones[0].alpha + 0.5 * cones[0].width());
        let t = 0.05;
        let (u1, u2) = chord_arc_directions(&poly, u, t, 0.25, 0.75).unwrap();
        let res = jacobian_check(&poly, u, t, u1, u2).unwrap();
        assert!(res.in_vertex_cone);
        let rel = (res.numeric / res.analytic - 1.0).abs();
        assert!(rel <= 1e-4, "relative error {rel}");
    }

    #[test]
    fn jacobian_edge_normal_factor() {
        let poly = reuleaux_triangle();
        let arc = &poly.arcs()[1];
        let u = Point::from_angle(arc.start_angle + 0.5 * arc.sweep);
        let t = 0.05;
        let (u1, u2) = chord_arc_directions(&poly, u, t, 0.3, 0.6).unwrap();
        let res = jacobian_check(&poly, u, t, u1, u2).unwrap();
        assert!(!res.in_vertex_cone);
        let rel = (res.numeric / res.analytic - 1.0).abs();
        assert!(rel <= 1e-4, "relative error {rel}");
        // The wrong factor would be off by (1+t)/t = 21 at t = 0.05.
        let wrong = (1.0 + t) * u1.cross(u2).abs();
        assert!((res.numeric / wrong - 1.0).abs() > 0.5);
    }

    #[test]
    fn c_of_k_circle_closed_form() {
        for rho in [0.25, 0.5, 0.9, 0.999] {
            let c = c_of_k(&SmoothDisc::Circle { radius: rho }, 1.0).unwrap();
            let expect = TAU * rho * (1.0 / rho - 1.0).cbrt();
            assert!((c - expect).abs() <= 1e-10, "rho={rho}: {c} vs {expect}");
        }
    }

    #[test]
    fn c_of_k_infinite_r_limit() {
        let rho = 0.5;
        let c = c_of_k(&SmoothDisc::Circle { radius: rho }, f64::INFINITY).unwrap();
        let expect = TAU * rho * (1.0 / rho).cbrt();
        assert!((c - expect).abs() <= 1e-10);
    }

    #[test]
    fn c_of_k_rejects_flat_boundaries() {
        assert!(matches!(
            c_of_k(&SmoothDisc::Circle { radius: 1.0 }, 1.0),
            Err(PolyError::NotRConvex { .. })
        ));
        assert!(matches!(
            c_of_k(&SmoothDisc::Ellipse { a: 0.9, b: 0.5 }, 1.0),
            Err(PolyError::NotRConvex { .. })
        ));
    }

    #[test]
    fn c_of_k_ellipse_stable_under_refinement() {
        let e = SmoothDisc::Ellipse { a: 0.7, b: 0.5 };
        let coarse = c_of_k(&e, 1.0).unwrap();
        let integrand = |theta: f64| (e.curvature(theta) - 1.0).cbrt() * e.speed(theta);
        let refined = numeric::composite_simpson(&integrand, 0.0, TAU, 1 << 20);
        assert!((coarse - refined).abs() <= 1e-8, "{coarse} vs {refined}");
    }

    #[test]
    fn lemma_suite_clean_on_reference_regions() {
        for poly in [
            reuleaux_triangle(),
            regular_disc_polygon(5, 1.0).unwrap(),
            regular_disc_polygon(2, 1.0).unwrap(),
        ] {
            let report = lemma_suite(&poly, 7);
            for check in &report.checks {
                assert_eq!(
                    check.failures, 0,
                    "{} failed {} times on {:?}",
                    check.name, check.failures, poly
                );
            }
            assert!(report.ok());
        }
    }
}
