//! Instance, result and curve files.
//!
//! All files are JSON with a `version` field. Instances list regions as
//!
//! * lines: `{"a", "b", "c"}` for `a·x + b·y = c`, or `{"p1", "p2"}`;
//! * rays: `{"apex", "dir"}` or `{"apex", "angle_degrees"}`,
//!
//! with points written as `{"x", "y"}`. Floats use the shortest decimal form
//! that reads back to the same double.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::geom::{Line, OrientedRect, Point, Polyline, Ray};
use crate::oracles::RatioCertificate;
use crate::sweep::{Mode, TourResult};
use crate::RegionSet;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("region {index}: {message}")]
    Record { index: usize, message: String },
    #[error("instance has no regions")]
    Empty,
    #[error("expected a {expected} instance, got {found}")]
    KindMismatch { expected: RegionKind, found: RegionKind },
    #[error("result was computed for a different instance (hash {result} vs {instance})")]
    HashMismatch { result: String, instance: String },
    #[error("invalid curve: {0}")]
    Curve(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    Lines,
    Rays,
}

impl std::fmt::Display for RegionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RegionKind::Lines => "lines",
            RegionKind::Rays => "rays",
        })
    }
}

impl RegionSet {
    pub fn kind(&self) -> RegionKind {
        match self {
            RegionSet::Lines(_) => RegionKind::Lines,
            RegionSet::Rays(_) => RegionKind::Rays,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum RegionRecord {
    Coefficients { a: f64, b: f64, c: f64 },
    TwoPoints { p1: Point, p2: Point },
    ApexDir { apex: Point, dir: Point },
    ApexAngle { apex: Point, angle_degrees: f64 },
}

#[derive(Deserialize)]
struct RawInstance {
    version: u32,
    kind: RegionKind,
    regions: Vec<serde_json::Value>,
}

#[derive(Serialize)]
struct InstanceOut<'a> {
    version: u32,
    kind: RegionKind,
    regions: &'a [RegionRecord],
}

/// Parses an instance; errors name the offending region index.
pub fn parse_instance(text: &str) -> Result<RegionSet, IoError> {
    let raw: RawInstance = serde_json::from_str(text)?;
    if raw.version != FORMAT_VERSION {
        return Err(IoError::Version(raw.version));
    }
    if raw.regions.is_empty() {
        return Err(IoError::Empty);
    }
    let records = raw
        .regions
        .into_iter()
        .enumerate()
        .map(|(index, v)| {
            serde_json::from_value::<RegionRecord>(v)
                .map_err(|_| IoError::Record { index, message: "not a line or ray record".into() })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let bad = |index: usize, message: String| IoError::Record { index, message };
    Ok(match raw.kind {
        RegionKind::Lines => RegionSet::Lines(
            records
                .iter()
                .enumerate()
                .map(|(i, r)| match *r {
                    RegionRecord::Coefficients { a, b, c } => Line::new(a, b, c).map_err(|e| bad(i, e.to_string())),
                    RegionRecord::TwoPoints { p1, p2 } => Line::through(p1, p2).map_err(|e| bad(i, e.to_string())),
                    _ => Err(bad(i, "ray record in a lines instance".into())),
                })
                .collect::<Result<_, _>>()?,
        ),
        RegionKind::Rays => RegionSet::Rays(
            records
                .iter()
                .enumerate()
                .map(|(i, r)| match *r {
                    RegionRecord::ApexDir { apex, dir } => Ray::new(apex, dir).map_err(|e| bad(i, e.to_string())),
                    RegionRecord::ApexAngle { apex, angle_degrees } => {
                        Ray::from_angle(apex, angle_degrees.to_radians()).map_err(|e| bad(i, e.to_string()))
                    }
                    _ => Err(bad(i, "line record in a rays instance".into())),
                })
                .collect::<Result<_, _>>()?,
        ),
    })
}

/// Canonical JSON: lines as `{a, b, c}`, rays as `{apex, dir}`.
pub fn instance_to_json(regions: &RegionSet) -> String {
    let records: Vec<RegionRecord> = match regions {
        RegionSet::Lines(v) => v.iter().map(|l| RegionRecord::Coefficients { a: l.a(), b: l.b(), c: l.c() }).collect(),
        RegionSet::Rays(v) => v.iter().map(|r| RegionRecord::ApexDir { apex: r.apex(), dir: r.dir() }).collect(),
    };
    let out = InstanceOut { version: FORMAT_VERSION, kind: regions.kind(), regions: &records };
    serde_json::to_string_pretty(&out).expect("instance serializes") + "\n"
}

/// SHA-256 of the canonical JSON, so formatting and record style do not
/// change it.
pub fn instance_hash(regions: &RegionSet) -> String {
    hex::encode(Sha256::digest(instance_to_json(regions).as_bytes()))
}

pub fn read_instance(path: &Path) -> Result<RegionSet, IoError> {
    parse_instance(&read(path)?)
}

pub fn write_instance(path: &Path, regions: &RegionSet) -> Result<(), IoError> {
    write_atomic(path, instance_to_json(regions).as_bytes())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectangleRecord {
    pub frame_angle: f64,
    pub x1: f64,
    pub x2: f64,
    pub y1: f64,
    pub y2: f64,
    /// World corners `q1..q4`.
    pub corners: [Point; 4],
}

impl From<&OrientedRect> for RectangleRecord {
    fn from(r: &OrientedRect) -> Self {
        Self { frame_angle: r.frame_angle, x1: r.x1, x2: r.x2, y1: r.y1, y2: r.y2, corners: r.corners() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub solve_seconds: f64,
}

/// Everything a run produces. Apart from `timing`, the content is a pure
/// function of the instance and the flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub version: u32,
    pub kind: RegionKind,
    pub mode: Mode,
    pub epsilon: f64,
    pub seed: u64,
    pub m: usize,
    pub winning_angle_index: usize,
    pub winning_angle: f64,
    pub rectangle: RectangleRecord,
    pub objective_value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<Point>>,
    pub degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<RatioCertificate>,
    pub instance_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl ResultFile {
    pub fn new(result: &TourResult, regions: &RegionSet, seed: u64, timing: Option<Timing>) -> Self {
        Self {
            version: FORMAT_VERSION,
            kind: regions.kind(),
            mode: result.mode,
            epsilon: result.epsilon,
            seed,
            m: result.m,
            winning_angle_index: result.winning_angle_index,
            winning_angle: result.winning_angle,
            rectangle: (&result.rect).into(),
            objective_value: result.objective_value,
            path: result.path.clone(),
            degenerate: result.degenerate,
            certificate: result.certificate.clone(),
            instance_hash: instance_hash(regions),
            timing,
        }
    }

    /// Back to an algorithm result; the rectangle is rebuilt from its frame
    /// extents.
    pub fn to_tour_result(&self) -> Result<TourResult, IoError> {
        let r = &self.rectangle;
        let rect = OrientedRect::new(r.frame_angle, r.x1, r.x2, r.y1, r.y2)
            .map_err(|e| IoError::Curve(format!("rectangle: {e}")))?;
        Ok(TourResult {
            rect,
            objective_value: self.objective_value,
            mode: self.mode,
            winning_angle_index: self.winning_angle_index,
            winning_angle: self.winning_angle,
            epsilon: self.epsilon,
            m: self.m,
            path: self.path.clone(),
            degenerate: self.degenerate,
            certificate: self.certificate.clone(),
        })
    }

    /// Fails unless this result was computed for `regions`.
    pub fn check_instance(&self, regions: &RegionSet) -> Result<(), IoError> {
        if self.kind != regions.kind() {
            return Err(IoError::KindMismatch { expected: self.kind, found: regions.kind() });
        }
        let h = instance_hash(regions);
        if h != self.instance_hash {
            return Err(IoError::HashMismatch { result: self.instance_hash.clone(), instance: h });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let r: ResultFile = serde_json::from_str(text)?;
        if r.version != FORMAT_VERSION {
            return Err(IoError::Version(r.version));
        }
        Ok(r)
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        Self::from_json(&read(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), IoError> {
        write_atomic(path, self.to_json().as_bytes())
    }
}

#[derive(Serialize, Deserialize)]
struct CurveFile {
    version: u32,
    vertices: Vec<Point>,
}

pub fn parse_curve(text: &str) -> Result<Polyline, IoError> {
    let c: CurveFile = serde_json::from_str(text)?;
    if c.version != FORMAT_VERSION {
        return Err(IoError::Version(c.version));
    }
    Polyline::new(c.vertices).map_err(|e| IoError::Curve(e.to_string()))
}

pub fn curve_to_json(curve: &Polyline) -> String {
    let c = CurveFile { version: FORMAT_VERSION, vertices: curve.vertices().to_vec() };
    serde_json::to_string_pretty(&c).expect("curve serializes") + "\n"
}

pub fn read_curve(path: &Path) -> Result<Polyline, IoError> {
    parse_curve(&read(path)?)
}

pub fn write_curve(path: &Path, curve: &Polyline) -> Result<(), IoError> {
    write_atomic(path, curve_to_json(curve).as_bytes())
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_owned(), source })
}

/// Writes to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), IoError> {
    let err = |source| IoError::Write { path: path.to_owned(), source };
    let name = path.file_name().ok_or_else(|| err(std::io::Error::other("not a file path")))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, bytes).map_err(err)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        err(e)
    })
}
