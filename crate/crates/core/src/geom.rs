//! Planar primitives: points, lines, rays, rectangles in rotated frames and
//! the clipping-based intersection predicates used by the verifiers.
//!
//! A *frame* at angle `α` is the world coordinate system rotated
//! counterclockwise by `α`. Converting a world point into frame coordinates
//! therefore rotates it by `-α`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::GeomError;

/// Default absolute slack on signed distances.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Below this magnitude a frame normal component counts as zero.
pub const VERTICAL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    /// Panics on non-finite input; use [`Point::try_new`] for untrusted data.
    pub fn new(x: f64, y: f64) -> Self {
        Self::try_new(x, y).expect("point coordinates must be finite")
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self, GeomError> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(GeomError::NonFinite)
        }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn sub(self, other: Point) -> Point {
        Point { x: self.x - other.x, y: self.y - other.y }
    }

    pub fn add_scaled(self, dir: Point, t: f64) -> Point {
        Point { x: self.x + t * dir.x, y: self.y + t * dir.y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// World coordinates to frame coordinates: rotation by `-angle`.
pub fn rotate_into_frame(p: Point, angle: f64) -> Point {
    IntoFrame::new(angle).apply(p)
}

/// [`rotate_into_frame`] with the sine and cosine computed once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntoFrame {
    sin: f64,
    cos: f64,
}

impl IntoFrame {
    pub fn new(angle: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        Self { sin, cos }
    }

    #[inline]
    pub fn apply(self, p: Point) -> Point {
        let (s, c) = (self.sin, self.cos);
        Point { x: p.x * c + p.y * s, y: -p.x * s + p.y * c }
    }
}

/// Frame coordinates back to world coordinates: rotation by `+angle`.
pub fn rotate_out_of_frame(p: Point, angle: f64) -> Point {
    let (s, c) = angle.sin_cos();
    Point { x: p.x * c - p.y * s, y: p.x * s + p.y * c }
}

/// The locus `a·x + b·y = c` with `a² + b² = 1` and the first nonzero of
/// `(a, b)` positive, so equal lines have equal coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line {
    a: f64,
    b: f64,
    c: f64,
}

impl Line {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, GeomError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let norm = a.hypot(b);
        if norm == 0.0 {
            return Err(GeomError::DegenerateLine);
        }
        // Already-normalized input is kept bit for bit, so canonical lines
        // survive a write/read cycle.
        let norm = if (norm - 1.0).abs() <= 2.0 * f64::EPSILON { 1.0 } else { norm };
        let (mut a, mut b, mut c) = (a / norm, b / norm, c / norm);
        if a < 0.0 || (a == 0.0 && b < 0.0) {
            a = -a;
            b = -b;
            c = -c;
        }
        // -0.0 would break canonical equality
        Ok(Self { a: a + 0.0, b: b + 0.0, c: c + 0.0 })
    }

    /// The line through two distinct points.
    pub fn through(p1: Point, p2: Point) -> Result<Self, GeomError> {
        let d = p2.sub(p1);
        if d.norm() == 0.0 {
            return Err(GeomError::CoincidentPoints);
        }
        Self::new(-d.y, d.x, -d.y * p1.x + d.x * p1.y)
    }

    /// `y = slope·x + intercept`.
    pub fn from_slope_intercept(slope: f64, intercept: f64) -> Result<Self, GeomError> {
        Self::new(-slope, 1.0, intercept)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn normal(&self) -> Point {
        Point { x: self.a, y: self.b }
    }

    pub fn direction(&self) -> Point {
        Point { x: -self.b, y: self.a }
    }

    /// Foot of the perpendicular from the origin.
    pub fn anchor(&self) -> Point {
        Point { x: self.a * self.c, y: self.b * self.c }
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y - self.c
    }

    /// Canonical equality up to `eps` on every coefficient.
    pub fn approx_eq(&self, other: &Line, eps: f64) -> bool {
        (self.a - other.a).abs() <= eps && (self.b - other.b).abs() <= eps && (self.c - other.c).abs() <= eps
    }

    pub fn scaled(&self, s: f64) -> Line {
        Line { a: self.a, b: self.b, c: self.c * s }
    }

    pub fn rotated(&self, angle: f64) -> Line {
        let n = rotate_out_of_frame(self.normal(), angle);
        Line::new(n.x, n.y, self.c).expect("rotation preserves normalization")
    }
}

/// A half-infinite ray `{apex + t·dir : t ≥ 0}` with unit `dir`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ray {
    apex: Point,
    dir: Point,
}

impl Ray {
    pub fn new(apex: Point, dir: Point) -> Result<Self, GeomError> {
        if !(apex.x.is_finite() && apex.y.is_finite() && dir.x.is_finite() && dir.y.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let norm = dir.norm();
        if norm == 0.0 {
            return Err(GeomError::ZeroDirection);
        }
        let norm = if (norm - 1.0).abs() <= 2.0 * f64::EPSILON { 1.0 } else { norm };
        Ok(Self { apex, dir: Point { x: dir.x / norm, y: dir.y / norm } })
    }

    pub fn from_angle(apex: Point, radians: f64) -> Result<Self, GeomError> {
        let (s, c) = radians.sin_cos();
        Self::new(apex, Point { x: c, y: s })
    }

    pub fn apex(&self) -> Point {
        self.apex
    }

    pub fn dir(&self) -> Point {
        self.dir
    }

    pub fn supporting_line(&self) -> Line {
        Line::new(-self.dir.y, self.dir.x, -self.dir.y * self.apex.x + self.dir.x * self.apex.y)
            .expect("unit direction")
    }

    pub fn scaled(&self, s: f64) -> Ray {
        Ray { apex: Point { x: self.apex.x * s, y: self.apex.y * s }, dir: self.dir }
    }

    pub fn rotated(&self, angle: f64) -> Ray {
        Ray::new(rotate_out_of_frame(self.apex, angle), rotate_out_of_frame(self.dir, angle))
            .expect("rotation preserves validity")
    }
}

/// Slope of a line seen from a rotated frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrameSlope {
    Slope(f64),
    Vertical,
}

pub fn slope_in_frame(line: &Line, angle: f64) -> FrameSlope {
    let n = rotate_into_frame(line.normal(), angle);
    if n.y.abs() < VERTICAL_EPS {
        FrameSlope::Vertical
    } else {
        FrameSlope::Slope(-n.x / n.y)
    }
}

/// Quadrant of a direction, half-open: `[0, π/2) → 1`, `[π/2, π) → 2`,
/// `[π, 3π/2) → 3`, `[3π/2, 2π) → 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    First,
    Second,
    Third,
    Fourth,
}

impl Quadrant {
    pub fn of_direction(d: Point) -> Quadrant {
        if d.x > 0.0 && d.y >= 0.0 {
            Quadrant::First
        } else if d.x <= 0.0 && d.y > 0.0 {
            Quadrant::Second
        } else if d.x < 0.0 && d.y <= 0.0 {
            Quadrant::Third
        } else {
            Quadrant::Fourth
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Quadrant::First => 1,
            Quadrant::Second => 2,
            Quadrant::Third => 3,
            Quadrant::Fourth => 4,
        }
    }
}

pub fn quadrant_in_frame(ray: &Ray, angle: f64) -> Quadrant {
    Quadrant::of_direction(rotate_into_frame(ray.dir, angle))
}

/// `[x1, x2] × [y1, y2]` in the frame at `frame_angle`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedRect {
    pub frame_angle: f64,
    pub x1: f64,
    pub x2: f64,
    pub y1: f64,
    pub y2: f64,
}

impl OrientedRect {
    pub fn new(frame_angle: f64, x1: f64, x2: f64, y1: f64, y2: f64) -> Result<Self, GeomError> {
        if ![frame_angle, x1, x2, y1, y2].iter().all(|v| v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        if x1 > x2 || y1 > y2 {
            return Err(GeomError::InvertedRect);
        }
        Ok(Self { frame_angle: frame_angle.rem_euclid(PI), x1, x2, y1, y2 }.normalize_angle(frame_angle))
    }

    // Folding the angle into [0, π) is a half turn, which maps the frame
    // box onto its point reflection.
    fn normalize_angle(self, original: f64) -> Self {
        let turns = ((original - self.frame_angle) / PI).round() as i64;
        if turns.rem_euclid(2) == 0 {
            self
        } else {
            Self { frame_angle: self.frame_angle, x1: -self.x2, x2: -self.x1, y1: -self.y2, y2: -self.y1 }
        }
    }

    /// From LP variables ordered `(x1, x2, y1, y2)`. Tiny inversions left by
    /// floating point are collapsed.
    pub fn from_lp_point(frame_angle: f64, v: [f64; 4]) -> Self {
        let (x1, x2) = if v[0] <= v[1] {
            (v[0], v[1])
        } else {
            let m = 0.5 * (v[0] + v[1]);
            (m, m)
        };
        let (y1, y2) = if v[2] <= v[3] {
            (v[2], v[3])
        } else {
            let m = 0.5 * (v[2] + v[3]);
            (m, m)
        };
        Self::new(frame_angle, x1, x2, y1, y2).expect("finite LP point")
    }

    pub fn width(&self) -> f64 {
        self.x2 - self.x1
    }

    pub fn height(&self) -> f64 {
        self.y2 - self.y1
    }

    pub fn per(&self) -> f64 {
        2.0 * (self.width() + self.height())
    }

    pub fn long(&self) -> f64 {
        self.width().max(self.height())
    }

    /// Frame corners `q1..q4`, counterclockwise from the lower-left.
    pub fn frame_corners(&self) -> [Point; 4] {
        [
            Point { x: self.x1, y: self.y1 },
            Point { x: self.x2, y: self.y1 },
            Point { x: self.x2, y: self.y2 },
            Point { x: self.x1, y: self.y2 },
        ]
    }

    /// World corners `q1..q4`, counterclockwise from the frame lower-left.
    pub fn corners(&self) -> [Point; 4] {
        self.frame_corners().map(|p| rotate_out_of_frame(p, self.frame_angle))
    }

    /// The open path made of three sides, leaving out one longest side.
    /// When width and height tie, the side `q2–q3` is the one dropped.
    pub fn three_side_path(&self) -> [Point; 4] {
        let [q1, q2, q3, q4] = self.corners();
        if self.width() > self.height() {
            [q4, q1, q2, q3]
        } else {
            [q3, q4, q1, q2]
        }
    }

    /// Closed boundary `q1 q2 q3 q4 q1`.
    pub fn boundary(&self) -> [Point; 5] {
        let [q1, q2, q3, q4] = self.corners();
        [q1, q2, q3, q4, q1]
    }

    pub fn sides(&self) -> [(Point, Point); 4] {
        let [q1, q2, q3, q4] = self.corners();
        [(q1, q2), (q2, q3), (q3, q4), (q4, q1)]
    }

    pub fn center(&self) -> Point {
        rotate_out_of_frame(Point { x: 0.5 * (self.x1 + self.x2), y: 0.5 * (self.y1 + self.y2) }, self.frame_angle)
    }

    pub fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }
}

/// An open polygonal curve with at least two vertices and positive length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct Polyline {
    vertices: Vec<Point>,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        if vertices.len() < 2 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        if vertices.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(GeomError::NonFinite);
        }
        if let Some(i) = vertices.windows(2).position(|w| w[0] == w[1]) {
            return Err(GeomError::RepeatedVertex(i + 1));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn length(&self) -> f64 {
        self.vertices.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    pub fn first(&self) -> Point {
        self.vertices[0]
    }

    pub fn last(&self) -> Point {
        *self.vertices.last().expect("at least two vertices")
    }
}

impl TryFrom<Vec<Point>> for Polyline {
    type Error = GeomError;

    fn try_from(v: Vec<Point>) -> Result<Self, Self::Error> {
        Polyline::new(v)
    }
}

impl From<Polyline> for Vec<Point> {
    fn from(p: Polyline) -> Self {
        p.vertices
    }
}

/// Liang–Barsky clip of `origin + t·dir`, `t ∈ [t_lo, t_hi]`, against the
/// frame box grown by `tol` on every side. Works in frame coordinates.
fn clip_param(origin: Point, dir: Point, mut t_lo: f64, mut t_hi: f64, rect: &OrientedRect, tol: f64) -> bool {
    let slabs = [(origin.x, dir.x, rect.x1 - tol, rect.x2 + tol), (origin.y, dir.y, rect.y1 - tol, rect.y2 + tol)];
    for (o, d, lo, hi) in slabs {
        if d == 0.0 {
            if o < lo || o > hi {
                return false;
            }
            continue;
        }
        let (mut ta, mut tb) = ((lo - o) / d, (hi - o) / d);
        if ta > tb {
            std::mem::swap(&mut ta, &mut tb);
        }
        t_lo = t_lo.max(ta);
        t_hi = t_hi.min(tb);
        if t_lo > t_hi {
            return false;
        }
    }
    true
}

/// Whether the line meets the closed rectangle, with slack `tol`.
pub fn line_intersects_rect(line: &Line, rect: &OrientedRect, tol: f64) -> bool {
    let o = rotate_into_frame(line.anchor(), rect.frame_angle);
    let d = rotate_into_frame(line.direction(), rect.frame_angle);
    clip_param(o, d, f64::NEG_INFINITY, f64::INFINITY, rect, tol)
}

/// Whether the ray meets the closed rectangle, with slack `tol`.
pub fn ray_intersects_rect(ray: &Ray, rect: &OrientedRect, tol: f64) -> bool {
    let o = rotate_into_frame(ray.apex, rect.frame_angle);
    let d = rotate_into_frame(ray.dir, rect.frame_angle);
    clip_param(o, d, 0.0, f64::INFINITY, rect, tol)
}

/// Whether the line meets the closed segment `p–q`, with slack `tol`.
pub fn line_intersects_segment(line: &Line, p: Point, q: Point, tol: f64) -> bool {
    let (dp, dq) = (line.signed_distance(p), line.signed_distance(q));
    dp.min(dq) <= tol && dp.max(dq) >= -tol
}

/// Whether the ray meets the closed segment `p–q`, with slack `tol`.
pub fn ray_intersects_segment(ray: &Ray, p: Point, q: Point, tol: f64) -> bool {
    segment_ray_distance(p, q, ray) <= tol
}

pub fn point_segment_distance(x: Point, p: Point, q: Point) -> f64 {
    let d = q.sub(p);
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return x.dist(p);
    }
    let t = (x.sub(p).dot(d) / len2).clamp(0.0, 1.0);
    x.dist(p.add_scaled(d, t))
}

pub fn point_ray_distance(x: Point, ray: &Ray) -> f64 {
    let t = x.sub(ray.apex).dot(ray.dir).max(0.0);
    x.dist(ray.apex.add_scaled(ray.dir, t))
}

/// Distance between a closed segment and a ray; zero when they cross.
pub fn segment_ray_distance(p: Point, q: Point, ray: &Ray) -> f64 {
    let line = ray.supporting_line();
    let (dp, dq) = (line.signed_distance(p), line.signed_distance(q));
    if dp * dq <= 0.0 && dp != dq {
        // crossing point of the supporting line along p–q
        let t = dp / (dp - dq);
        let x = p.add_scaled(q.sub(p), t);
        if x.sub(ray.apex).dot(ray.dir) >= 0.0 {
            return 0.0;
        }
    }
    point_ray_distance(p, ray).min(point_ray_distance(q, ray)).min(point_segment_distance(ray.apex, p, q))
}

/// Distance between a closed segment and a line; zero when they cross.
pub fn segment_line_distance(p: Point, q: Point, line: &Line) -> f64 {
    let (dp, dq) = (line.signed_distance(p), line.signed_distance(q));
    if dp * dq <= 0.0 {
        0.0
    } else {
        dp.abs().min(dq.abs())
    }
}

fn point_in_rect(p: Point, rect: &OrientedRect) -> bool {
    let f = rotate_into_frame(p, rect.frame_angle);
    f.x >= rect.x1 && f.x <= rect.x2 && f.y >= rect.y1 && f.y <= rect.y2
}

/// Distance from a line to the closed rectangle; zero when they meet.
pub fn line_rect_distance(line: &Line, rect: &OrientedRect) -> f64 {
    rect.sides().iter().map(|&(p, q)| segment_line_distance(p, q, line)).fold(f64::INFINITY, f64::min)
}

/// Distance from a ray to the closed rectangle; zero when they meet.
pub fn ray_rect_distance(ray: &Ray, rect: &OrientedRect) -> f64 {
    if point_in_rect(ray.apex, rect) {
        return 0.0;
    }
    rect.sides().iter().map(|&(p, q)| segment_ray_distance(p, q, ray)).fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn unit_square() -> OrientedRect {
        OrientedRect::new(0.0, 0.0, 1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn rotation_examples() {
        let p = rotate_into_frame(Point::new(1.0, 0.0), 0.0);
        assert_eq!(p, Point::new(1.0, 0.0));
        let p = rotate_into_frame(Point::new(1.0, 0.0), FRAC_PI_2);
        assert!(p.x.abs() < 1e-15 && (p.y + 1.0).abs() < 1e-15);
        let p = rotate_into_frame(Point::new(1.0, 1.0), FRAC_PI_4);
        assert_relative_eq!(p.x, SQRT_2, epsilon = 1e-15);
        assert!(p.y.abs() < 1e-15);
    }

    #[test]
    fn line_normalization() {
        let l = Line::new(0.0, -2.0, 4.0).unwrap();
        assert_eq!((l.a(), l.b(), l.c()), (0.0, 1.0, -2.0));
        let l = Line::new(-3.0, 4.0, 5.0).unwrap();
        assert_relative_eq!(l.a(), 0.6);
        assert_relative_eq!(l.b(), -0.8);
        assert_relative_eq!(l.c(), -1.0);
        assert!(Line::new(0.0, 0.0, 1.0).is_err());
        assert!(Line::new(f64::NAN, 1.0, 1.0).is_err());
        let a = Line::through(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        let b = Line::from_slope_intercept(1.0, 0.0).unwrap();
        assert!(a.approx_eq(&b, 1e-12));
    }

    #[test]
    fn slopes() {
        let diag = Line::from_slope_intercept(1.0, 0.0).unwrap();
        match slope_in_frame(&diag, 0.0) {
            FrameSlope::Slope(s) => assert_relative_eq!(s, 1.0, epsilon = 1e-12),
            FrameSlope::Vertical => panic!("not vertical"),
        }
        let vertical = Line::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(slope_in_frame(&vertical, 0.0), FrameSlope::Vertical);
        match slope_in_frame(&vertical, FRAC_PI_4) {
            FrameSlope::Slope(s) => assert_relative_eq!(s, 1.0, epsilon = 1e-12),
            FrameSlope::Vertical => panic!("not vertical"),
        }
    }

    #[test]
    fn line_rect_examples() {
        let q = unit_square();
        let tol = DEFAULT_TOL;
        assert!(line_intersects_rect(&Line::from_slope_intercept(0.0, 0.0).unwrap(), &q, tol));
        assert!(!line_intersects_rect(&Line::from_slope_intercept(0.0, 2.0).unwrap(), &q, tol));
        assert!(line_intersects_rect(&Line::from_slope_intercept(1.0, -1.0).unwrap(), &q, tol));
        assert!(!line_intersects_rect(&Line::from_slope_intercept(1.0, -1.1).unwrap(), &q, tol));
    }

    #[test]
    fn ray_rect_examples() {
        let q = unit_square();
        let tol = DEFAULT_TOL;
        let inward = Ray::new(Point::new(2.0, 0.5), Point::new(-1.0, 0.0)).unwrap();
        let outward = Ray::new(Point::new(2.0, 0.5), Point::new(1.0, 0.0)).unwrap();
        assert!(ray_intersects_rect(&inward, &q, tol));
        assert!(!ray_intersects_rect(&outward, &q, tol));
        for k in 0..16 {
            let r = Ray::from_angle(Point::new(0.5, 0.5), k as f64 * 0.4).unwrap();
            assert!(ray_intersects_rect(&r, &q, tol));
        }
    }

    #[test]
    fn quadrants() {
        let o = Point::new(0.0, 0.0);
        let r = |x, y| Ray::new(o, Point::new(x, y)).unwrap();
        assert_eq!(quadrant_in_frame(&r(1.0, 0.0), 0.0).index(), 1);
        assert_eq!(quadrant_in_frame(&r(0.0, 1.0), 0.0).index(), 2);
        assert_eq!(quadrant_in_frame(&r(-1.0, -1.0), 0.0).index(), 3);
        assert_eq!(quadrant_in_frame(&r(0.0, -1.0), 0.0).index(), 4);
        assert_eq!(quadrant_in_frame(&r(-1.0, 0.0), 0.0).index(), 3);
    }

    #[test]
    fn corners_ccw_from_lower_left() {
        for k in 0..12 {
            let angle = k as f64 * 0.26;
            let r = OrientedRect::new(angle, -1.0, 2.0, 0.5, 1.5).unwrap();
            let c = r.corners();
            let f = rotate_into_frame(c[0], angle);
            assert_relative_eq!(f.x, -1.0, epsilon = 1e-12);
            assert_relative_eq!(f.y, 0.5, epsilon = 1e-12);
            for i in 0..4 {
                let (a, b, d) = (c[i], c[(i + 1) % 4], c[(i + 2) % 4]);
                assert!(b.sub(a).cross(d.sub(b)) > 0.0);
            }
        }
    }

    #[test]
    fn angle_folding_keeps_the_same_box() {
        let r = OrientedRect::new(PI + 0.3, 0.0, 2.0, 1.0, 1.5).unwrap();
        let s = OrientedRect { frame_angle: PI + 0.3, x1: 0.0, x2: 2.0, y1: 1.0, y2: 1.5 };
        assert!(r.frame_angle < PI);
        let mut a: Vec<_> = r.corners().iter().map(|p| (p.x, p.y)).collect();
        let mut b: Vec<_> = s.corners().iter().map(|p| (p.x, p.y)).collect();
        a.sort_by(|u, v| u.partial_cmp(v).unwrap());
        b.sort_by(|u, v| u.partial_cmp(v).unwrap());
        for (u, v) in a.iter().zip(&b) {
            assert_relative_eq!(u.0, v.0, epsilon = 1e-12);
            assert_relative_eq!(u.1, v.1, epsilon = 1e-12);
        }
    }

    #[test]
    fn three_side_path_drops_a_longest_side() {
        let wide = OrientedRect::new(0.0, 0.0, 3.0, 0.0, 1.0).unwrap();
        let p = wide.three_side_path();
        let len: f64 = p.windows(2).map(|w| w[0].dist(w[1])).sum();
        assert_relative_eq!(len, wide.per() - wide.long());
        let square = OrientedRect::new(0.0, 0.0, 1.0, 0.0, 1.0).unwrap();
        let p = square.three_side_path();
        let [_, q2, q3, _] = square.corners();
        for w in p.windows(2) {
            assert!(!((w[0] == q2 && w[1] == q3) || (w[0] == q3 && w[1] == q2)));
        }
    }

    #[test]
    fn distances() {
        let q = unit_square();
        assert_relative_eq!(line_rect_distance(&Line::from_slope_intercept(0.0, 2.0).unwrap(), &q), 1.0);
        assert_eq!(line_rect_distance(&Line::from_slope_intercept(0.0, 0.5).unwrap(), &q), 0.0);
        let outward = Ray::new(Point::new(2.0, 0.5), Point::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(ray_rect_distance(&outward, &q), 1.0);
        let inward = Ray::new(Point::new(2.0, 0.5), Point::new(-1.0, 0.0)).unwrap();
        assert_eq!(ray_rect_distance(&inward, &q), 0.0);
    }

    #[test]
    fn polyline_validation() {
        assert!(Polyline::new(vec![Point::new(0.0, 0.0)]).is_err());
        assert!(Polyline::new(vec![Point::new(0.0, 0.0), Point::new(0.0, 0.0)]).is_err());
        let p = Polyline::new(vec![Point::new(0.0, 0.0), Point::new(3.0, 4.0)]).unwrap();
        assert_relative_eq!(p.length(), 5.0);
    }
}
