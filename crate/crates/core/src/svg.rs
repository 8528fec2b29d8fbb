//! SVG figures of an instance and its result.
//!
//! The viewport is the padded bounding box of the rectangle, the emitted
//! path, the ray apexes, and the pairwise line intersections that lie within
//! three rectangle diagonals of the rectangle. Lines and rays are clipped to
//! it. Coordinates are printed with fixed precision, so equal inputs give
//! byte-identical documents.

use std::fmt::Write;

use crate::geom::{Line, Point, Ray};
use crate::sweep::TourResult;
use crate::RegionSet;

/// Above this many lines, pairwise intersections are not used for framing.
const MAX_FRAMING_LINES: usize = 500;
const CANVAS: f64 = 800.0;

#[derive(Debug, Clone, Copy)]
struct Viewport {
    lo: Point,
    hi: Point,
}

impl Viewport {
    fn around(points: &[Point]) -> Self {
        let mut lo = Point { x: f64::INFINITY, y: f64::INFINITY };
        let mut hi = Point { x: f64::NEG_INFINITY, y: f64::NEG_INFINITY };
        for p in points {
            lo = Point { x: lo.x.min(p.x), y: lo.y.min(p.y) };
            hi = Point { x: hi.x.max(p.x), y: hi.y.max(p.y) };
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y);
        let pad = if span > 0.0 { 0.1 * span } else { 1.0 };
        Self { lo: Point { x: lo.x - pad, y: lo.y - pad }, hi: Point { x: hi.x + pad, y: hi.y + pad } }
    }

    fn span(&self) -> f64 {
        (self.hi.x - self.lo.x).max(self.hi.y - self.lo.y)
    }

    /// Parameter interval of `p + t·d` inside the viewport, intersected
    /// with `[t0, ∞)`.
    fn clip(&self, p: Point, d: Point, t0: f64) -> Option<(f64, f64)> {
        let (mut lo, mut hi) = (t0, f64::INFINITY);
        for (pk, dk, a, b) in [(p.x, d.x, self.lo.x, self.hi.x), (p.y, d.y, self.lo.y, self.hi.y)] {
            if dk == 0.0 {
                if pk < a || pk > b {
                    return None;
                }
            } else {
                let (s, t) = ((a - pk) / dk, (b - pk) / dk);
                lo = lo.max(s.min(t));
                hi = hi.min(s.max(t));
            }
        }
        (lo <= hi).then_some((lo, hi))
    }
}

fn framing_points(regions: &RegionSet, result: &TourResult) -> Vec<Point> {
    let mut pts: Vec<Point> = result.rect.corners().to_vec();
    if let Some(path) = &result.path {
        pts.extend(path);
    }
    match regions {
        RegionSet::Rays(rays) => pts.extend(rays.iter().map(Ray::apex)),
        RegionSet::Lines(lines) if lines.len() <= MAX_FRAMING_LINES => {
            let center = result.rect.center();
            let reach = 3.0 * result.rect.diagonal();
            for (i, l) in lines.iter().enumerate() {
                for m in &lines[i + 1..] {
                    if let Some(p) = intersection(l, m) {
                        if p.dist(center) <= reach {
                            pts.push(p);
                        }
                    }
                }
            }
        }
        RegionSet::Lines(_) => {}
    }
    pts
}

fn intersection(l: &Line, m: &Line) -> Option<Point> {
    let det = l.a() * m.b() - l.b() * m.a();
    if det.abs() < 1e-12 {
        return None;
    }
    Some(Point { x: (l.c() * m.b() - l.b() * m.c()) / det, y: (l.a() * m.c() - l.c() * m.a()) / det })
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// World `(x, y)` to SVG user units, which point y downward.
fn xy(p: Point) -> (String, String) {
    (fmt(p.x), fmt(-p.y))
}

/// The figure for `regions` and `result`.
pub fn emit_svg(regions: &RegionSet, result: &TourResult) -> String {
    let vp = Viewport::around(&framing_points(regions, result));
    let span = vp.span();
    let stroke = span / 400.0;
    let (w, h) = (vp.hi.x - vp.lo.x, vp.hi.y - vp.lo.y);
    let (pw, ph) = if w >= h { (CANVAS, CANVAS * h / w) } else { (CANVAS * w / h, CANVAS) };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{} {} {} {}">"#,
        pw,
        ph,
        fmt(vp.lo.x),
        fmt(-vp.hi.y),
        fmt(w),
        fmt(h)
    );
    let _ = writeln!(
        s,
        r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#555"/></marker></defs>"##
    );
    let _ = writeln!(
        s,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#fff"/>"##,
        fmt(vp.lo.x),
        fmt(-vp.hi.y),
        fmt(w),
        fmt(h)
    );

    let _ = writeln!(s, r##"<g id="regions" stroke="#555" stroke-width="{}" fill="none">"##, fmt(stroke));
    match regions {
        RegionSet::Lines(lines) => {
            for l in lines {
                if let Some((t0, t1)) = vp.clip(l.anchor(), l.direction(), f64::NEG_INFINITY) {
                    let (a, b) = (l.anchor().add_scaled(l.direction(), t0), l.anchor().add_scaled(l.direction(), t1));
                    let ((x1, y1), (x2, y2)) = (xy(a), xy(b));
                    let _ = writeln!(s, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
                }
            }
        }
        RegionSet::Rays(rays) => {
            for r in rays {
                if let Some((t0, t1)) = vp.clip(r.apex(), r.dir(), 0.0) {
                    let (a, b) = (r.apex().add_scaled(r.dir(), t0), r.apex().add_scaled(r.dir(), t1));
                    let ((x1, y1), (x2, y2)) = (xy(a), xy(b));
                    let _ = writeln!(s, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" marker-end="url(#arrow)"/>"#);
                    let (cx, cy) = xy(r.apex());
                    let _ = writeln!(s, r##"<circle cx="{cx}" cy="{cy}" r="{}" fill="#555"/>"##, fmt(1.5 * stroke));
                }
            }
        }
    }
    let _ = writeln!(s, "</g>");

    let corners = result.rect.corners();
    let points = |pts: &[Point]| {
        pts.iter()
            .map(|&p| {
                let (x, y) = xy(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(
        s,
        r##"<polygon id="rectangle" points="{}" fill="#1f77b4" fill-opacity="0.12" stroke="#1f77b4" stroke-width="{}"/>"##,
        points(&corners),
        fmt(stroke)
    );
    if let Some(path) = &result.path {
        let _ = writeln!(
            s,
            r##"<polyline id="path" points="{}" fill="none" stroke="#d62728" stroke-width="{}"/>"##,
            points(path),
            fmt(2.0 * stroke)
        );
    }
    let font = 0.03 * span;
    for (k, q) in corners.iter().enumerate() {
        let (x, y) = xy(*q);
        let _ = writeln!(
            s,
            r##"<text x="{x}" y="{y}" font-size="{}" font-family="sans-serif" fill="#1f77b4">q{}</text>"##,
            fmt(font),
            k + 1
        );
    }
    s.push_str("</svg>\n");
    s
}
