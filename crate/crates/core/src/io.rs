//! File formats: region JSON, point CSV, results CSV and summaries.
//!
//! Regions are stored with their own radius `r`; the loader divides all
//! lengths by `r` so the kernel always works at radius 1. Disc-polygon
//! files carry only `r` and the vertex list; arc centers are recomputed on
//! load (always the outward-bulging choice).

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::disc_polygon::DiscPolygon;
use crate::error::PolyError;
use crate::experiments::{ExperimentResult, ResultRow, SmoothResult};
use crate::geom::Point;
use crate::sampling::{Region, SmoothDisc};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("bad region file: {0}")]
    BadRegion(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// On-disk region description. Exactly one of `vertices`, `circle`,
/// `ellipse` must be present; all lengths are in units of `r`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegionFile {
    pub r: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circle: Option<CircleSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ellipse: Option<EllipseSpec>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CircleSpec {
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EllipseSpec {
    pub a: f64,
    pub b: f64,
}

impl RegionFile {
    pub fn disc_polygon(r: f64, vertices: &[Point]) -> Self {
        RegionFile {
            r,
            vertices: Some(vertices.iter().map(|p| [p.x, p.y]).collect()),
            circle: None,
            ellipse: None,
        }
    }

    /// Rescale by `1/r` and build the kernel-side region.
    pub fn into_region(self) -> Result<Region, IoError> {
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(IoError::BadRegion(format!("radius r = {} must be positive", self.r)));
        }
        let scale = 1.0 / self.r;
        match (self.vertices, self.circle, self.ellipse) {
            (Some(vs), None, None) => {
                let pts: Vec<Point> = vs
                    .into_iter()
                    .map(|[x, y]| Point::new(x * scale, y * scale))
                    .collect();
                let poly = DiscPolygon::from_vertices_ccw(pts)?;
                Ok(Region::Poly(poly))
            }
            (None, Some(c), None) => {
                let s = SmoothDisc::Circle {
                    radius: c.radius * scale,
                };
                s.validate()?;
                Ok(Region::Smooth(s))
            }
            (None, None, Some(e)) => {
                let s = SmoothDisc::Ellipse {
                    a: e.a * scale,
                    b: e.b * scale,
                };
                s.validate()?;
                Ok(Region::Smooth(s))
            }
            _ => Err(IoError::BadRegion(
                "need exactly one of `vertices`, `circle`, `ellipse`".into(),
            )),
        }
    }
}

pub fn load_region(path: &Path) -> Result<(Region, f64), IoError> {
    let text = fs::read_to_string(path)?;
    let file: RegionFile = serde_json::from_str(&text)?;
    let r = file.r;
    Ok((file.into_region()?, r))
}

/// Parse `x,y` lines; `#` starts a comment, blank lines are skipped.
pub fn read_points_csv<R: Read>(reader: R) -> Result<Vec<Point>, IoError> {
    let mut text = String::new();
    let mut reader = reader;
    reader.read_to_string(&mut text)?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let parse = |s: Option<&str>| -> Result<f64, IoError> {
            s.map(str::trim)
                .filter(|s| !s.is_empty())
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| IoError::Parse {
                    line: lineno + 1,
                    reason: format!("expected `x,y`, got `{raw}`"),
                })
        };
        let x = parse(parts.next())?;
        let y = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(IoError::Parse {
                line: lineno + 1,
                reason: format!("trailing fields in `{raw}`"),
            });
        }
        if !(x.is_finite() && y.is_finite()) {
            return Err(IoError::Parse {
                line: lineno + 1,
                reason: "coordinates must be finite".into(),
            });
        }
        out.push(Point::new(x, y));
    }
    Ok(out)
}

/// Hull output: the disc-polygon JSON plus the input indices of its
/// vertices. Coordinates are written back in the caller's units.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HullFile {
    pub r: f64,
    pub vertices: Vec<[f64; 2]>,
    pub vertex_indices: Vec<usize>,
    pub f0: usize,
}

pub const RESULTS_CSV_HEADER: &str =
    "experiment,region,n,trials,mean_f0,se_f0,mean_missed_area,se_area";

/// Render result rows as CSV with the fixed header.
pub fn results_csv(experiment: &str, region: &str, rows: &[ResultRow]) -> String {
    let mut out = String::from(RESULTS_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{experiment},{region},{},{},{},{},{},{}\n",
            row.n, row.trials, row.mean_f0, row.se_f0, row.mean_missed_area, row.se_area
        ));
    }
    out
}

/// Slope tolerance for the vertex-count law (fraction of the target).
pub const SLOPE_TOL_F0: f64 = 0.20;
/// Slope tolerance for the missed-area law (fraction of the target).
pub const SLOPE_TOL_AREA: f64 = 0.25;

/// Summary of a vertex experiment: fitted slopes against their targets.
#[derive(Debug, Clone, Serialize)]
pub struct VertexSummary {
    pub experiment: String,
    pub region: String,
    pub slope_f0: f64,
    pub target_slope_f0: f64,
    pub tolerance_f0: f64,
    pub pass_f0: bool,
    pub slope_area: f64,
    pub target_slope_area: f64,
    pub tolerance_area: f64,
    pub pass_area: bool,
    pub pass: bool,
}

impl VertexSummary {
    pub fn from_result(region: &str, res: &ExperimentResult) -> Self {
        let pass_f0 =
            (res.slope_f0 - res.target_slope_f0).abs() <= SLOPE_TOL_F0 * res.target_slope_f0;
        let pass_area =
            (res.slope_area - res.target_slope_area).abs() <= SLOPE_TOL_AREA * res.target_slope_area;
        VertexSummary {
            experiment: "vertex".into(),
            region: region.into(),
            slope_f0: res.slope_f0,
            target_slope_f0: res.target_slope_f0,
            tolerance_f0: SLOPE_TOL_F0,
            pass_f0,
            slope_area: res.slope_area,
            target_slope_area: res.target_slope_area,
            tolerance_area: SLOPE_TOL_AREA,
            pass_area,
            pass: pass_f0 && pass_area,
        }
    }
}

/// Tolerance on the rescaled vertex count of the smooth-region experiment.
pub const SMOOTH_TOL_F0: f64 = 0.15;

/// Summary of a smooth-region experiment: rescaled estimates at the largest
/// `n` against the predicted limits.
#[derive(Debug, Clone, Serialize)]
pub struct SmoothSummary {
    pub experiment: String,
    pub region: String,
    pub c_value: f64,
    pub scaled_f0: f64,
    pub vertex_limit: f64,
    pub tolerance_f0: f64,
    pub pass_f0: bool,
    pub scaled_missed_area: f64,
    pub missed_area_limit: f64,
}

impl SmoothSummary {
    pub fn from_result(region: &str, res: &SmoothResult) -> Option<Self> {
        let last = res.rows.last()?;
        let n = last.n as f64;
        let scaled_f0 = last.mean_f0 * n.powf(-1.0 / 3.0);
        let scaled_missed = last.mean_missed_area * n.powf(2.0 / 3.0);
        let pass_f0 = (scaled_f0 - res.vertex_limit).abs() <= SMOOTH_TOL_F0 * res.vertex_limit;
        Some(SmoothSummary {
            experiment: "smooth".into(),
            region: region.into(),
            c_value: res.c_value,
            scaled_f0,
            vertex_limit: res.vertex_limit,
            tolerance_f0: SMOOTH_TOL_F0,
            pass_f0,
            scaled_missed_area: scaled_missed,
            missed_area_limit: res.missed_area_limit,
        })
    }
}

/// Write through a temp file in the same directory, then rename.
pub fn atomic_write(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("out")
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

/// Optional config file mirroring the CLI experiment flags (TOML).
#[derive(Debug, Clone, Default, Deserialize)]
pub struct ConfigFile {
    pub region: Option<String>,
    pub n_values: Option<Vec<usize>>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub pairs: Option<usize>,
    pub r: Option<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, IoError> {
        let text = fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| IoError::BadRegion(format!("config: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc_polygon::reuleaux_triangle;

    #[test]
    fn region_round_trip_rescales_by_r() {
        // A side-2 triangle with r = 2 loads as the unit reuleaux triangle.
        let unit = reuleaux_triangle();
        let doubled: Vec<Point> = unit.vertices().iter().map(|p| *p * 2.0).collect();
        let file = RegionFile::disc_polygon(2.0, &doubled);
        let text = serde_json::to_string(&file).unwrap();
        let parsed: RegionFile = serde_json::from_str(&text).unwrap();
        let region = parsed.into_region().unwrap();
        match region {
            Region::Poly(p) => {
                assert_eq!(p.f0(), 3);
                for (a, b) in p.vertices().iter().zip(unit.vertices()) {
                    assert!(a.dist(*b) <= 1e-12);
                }
            }
            _ => panic!("expected a polygon"),
        }
    }

    #[test]
    fn region_schema_is_flat_r_plus_vertices() {
        let file = RegionFile::disc_polygon(1.0, reuleaux_triangle().vertices());
        let v: serde_json::Value = serde_json::to_value(&file).unwrap();
        assert!(v.get("r").is_some());
        assert!(v.get("vertices").is_some());
        assert!(v.get("circle").is_none());
    }

    #[test]
    fn smooth_region_files_parse() {
        let circle: RegionFile =
            serde_json::from_str(r#"{"r": 1.0, "circle": {"radius": 0.5}}"#).unwrap();
        assert!(matches!(
            circle.into_region().unwrap(),
            Region::Smooth(SmoothDisc::Circle { radius }) if (radius - 0.5).abs() <= 1e-15
        ));
        let ellipse: RegionFile =
            serde_json::from_str(r#"{"r": 2.0, "ellipse": {"a": 1.4, "b": 1.0}}"#).unwrap();
        assert!(matches!(
            ellipse.into_region().unwrap(),
            Region::Smooth(SmoothDisc::Ellipse { a, b })
                if (a - 0.7).abs() <= 1e-15 && (b - 0.5).abs() <= 1e-15
        ));
    }

    #[test]
    fn bad_region_files_rejected() {
        let both: RegionFile = serde_json::from_str(
            r#"{"r": 1.0, "circle": {"radius": 0.5}, "vertices": [[0,0]]}"#,
        )
        .unwrap();
        assert!(both.into_region().is_err());
        let none: RegionFile = serde_json::from_str(r#"{"r": 1.0}"#).unwrap();
        assert!(none.into_region().is_err());
        let bad_r: RegionFile =
            serde_json::from_str(r#"{"r": -1.0, "circle": {"radius": 0.5}}"#).unwrap();
        assert!(bad_r.into_region().is_err());
    }

    #[test]
    fn points_csv_with_comments() {
        let text = "# sample\n0.1,0.2\n\n 0.3 , 0.4 # trailing comment\n";
        let pts = read_points_csv(text.as_bytes()).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts[1].dist(Point::new(0.3, 0.4)) <= 1e-15);
        assert!(read_points_csv("0.1".as_bytes()).is_err());
        assert!(read_points_csv("a,b".as_bytes()).is_err());
        assert!(read_points_csv("1,2,3".as_bytes()).is_err());
    }

    #[test]
    fn results_csv_has_exact_header() {
        let rows = vec![ResultRow {
            n: 100,
            trials: 10,
            mean_f0: 5.5,
            se_f0: 0.1,
            mean_missed_area: 0.02,
            se_area: 0.001,
        }];
        let csv = results_csv("vertex", "reuleaux", &rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "experiment,region,n,trials,mean_f0,se_f0,mean_missed_area,se_area"
        );
        assert_eq!(lines.next().unwrap(), "vertex,reuleaux,100,10,5.5,0.1,0.02,0.001");
    }

    #[test]
    fn atomic_write_creates_file() {
        let dir = std::env::temp_dir().join("discpoly-io-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.csv");
        atomic_write(&path, b"hello").unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"hello");
        atomic_write(&path, b"world").unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"world");
        fs::remove_dir_all(&dir).unwrap();
    }
}
