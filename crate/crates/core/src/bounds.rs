//! Enclosing rectangles of open polylines.
//!
//! For an open curve of length `L`, the bounding box taken in the frame where
//! the endpoint segment `ab` is horizontal satisfies `w + 2h ≤ √2·L` (so the
//! three shorter sides are at most `√2·L`) and `2(w + h) ≤ √5·L`. Both
//! constants are attained by two-segment curves, exposed here as
//! [`right_isosceles_curve`] and [`wide_isosceles_curve`].

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::BoundsError;
use crate::geom::{rotate_into_frame, Point, Polyline};

pub const SQRT_5: f64 = 2.236_067_977_499_79;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlignedRectStats {
    /// Width along the endpoint segment.
    pub w: f64,
    pub h: f64,
    /// Curve length.
    pub l: f64,
    /// Endpoint distance `|ab|`.
    pub z: f64,
}

/// Bounding box of `γ` in the frame at `angle`, as `(min, max)` corners.
pub fn bounding_box_at(curve: &Polyline, angle: f64) -> (Point, Point) {
    let mut lo = Point { x: f64::INFINITY, y: f64::INFINITY };
    let mut hi = Point { x: f64::NEG_INFINITY, y: f64::NEG_INFINITY };
    for &p in curve.vertices() {
        let f = rotate_into_frame(p, angle);
        lo.x = lo.x.min(f.x);
        lo.y = lo.y.min(f.y);
        hi.x = hi.x.max(f.x);
        hi.y = hi.y.max(f.y);
    }
    (lo, hi)
}

/// Angle of the endpoint segment `ab`, or 0 when the endpoints coincide.
pub fn endpoint_angle(curve: &Polyline) -> f64 {
    let d = curve.last().sub(curve.first());
    if d.norm() == 0.0 {
        0.0
    } else {
        d.y.atan2(d.x)
    }
}

/// Box stats in the frame that makes `ab` horizontal.
pub fn aligned_enclosing_rect(curve: &Polyline) -> AlignedRectStats {
    let (lo, hi) = bounding_box_at(curve, endpoint_angle(curve));
    AlignedRectStats { w: hi.x - lo.x, h: hi.y - lo.y, l: curve.length(), z: curve.first().dist(curve.last()) }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub value: f64,
    pub bound: f64,
    pub slack: f64,
}

impl BoundCheck {
    fn new(value: f64, bound: f64) -> Self {
        Self { value, bound, slack: bound - value }
    }

    /// `slack ≥ −1e-9·L`.
    pub fn holds(&self, length: f64) -> bool {
        self.slack >= -1e-9 * length
    }
}

/// `w + 2h` against `√2·L`.
pub fn three_side_bound(curve: &Polyline) -> BoundCheck {
    let s = aligned_enclosing_rect(curve);
    BoundCheck::new(s.w + 2.0 * s.h, SQRT_2 * s.l)
}

/// `2(w + h)` against `√5·L`.
pub fn perimeter_bound(curve: &Polyline) -> BoundCheck {
    let s = aligned_enclosing_rect(curve);
    BoundCheck::new(2.0 * (s.w + s.h), SQRT_5 * s.l)
}

/// `(2 + √(λ² − 1)) / λ`, the perimeter-to-length ceiling when `w = L/λ`.
/// Its maximum `√5` sits at `λ = √5/2`.
pub fn f_lambda(lambda: f64) -> Result<f64, BoundsError> {
    if !(lambda >= 1.0) || !lambda.is_finite() {
        return Err(BoundsError::Domain { name: "f_lambda", domain: "λ ≥ 1", value: lambda });
    }
    Ok((2.0 + (lambda * lambda - 1.0).sqrt()) / lambda)
}

/// `3 cos α + sin α` on `[0, π/4]`: `w + 2h` for the right isosceles curve
/// tilted by `α` with one endpoint at a box corner.
pub fn three_side_tilt_f(alpha: f64) -> Result<f64, BoundsError> {
    if !(0.0..=PI / 4.0).contains(&alpha) {
        return Err(BoundsError::Domain { name: "three_side_tilt_f", domain: "α ∈ [0, π/4]", value: alpha });
    }
    Ok(3.0 * alpha.cos() + alpha.sin())
}

/// `√5 cos α + (2/√5) sin α` on `[0, arctan(1/2)]`: half the perimeter for the
/// wide isosceles curve tilted by `α`, its far endpoint on the right side and
/// its apex on the top side.
pub fn perimeter_tilt_f(alpha: f64) -> Result<f64, BoundsError> {
    if !(0.0..=0.5f64.atan()).contains(&alpha) {
        return Err(BoundsError::Domain { name: "perimeter_tilt_f", domain: "α ∈ [0, arctan(1/2)]", value: alpha });
    }
    Ok(SQRT_5 * alpha.cos() + (2.0 / SQRT_5) * alpha.sin())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TiltCaseValues {
    pub three_sides: f64,
    pub perimeter: f64,
}

/// Both case functions at one `α`; `α` must lie in both domains.
pub fn tilt_case_functions(alpha: f64) -> Result<TiltCaseValues, BoundsError> {
    Ok(TiltCaseValues { three_sides: three_side_tilt_f(alpha)?, perimeter: perimeter_tilt_f(alpha)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveObjective {
    /// `per − long` of the box.
    ThreeSides,
    Perimeter,
}

impl CurveObjective {
    fn of_box(self, lo: Point, hi: Point) -> f64 {
        let (w, h) = (hi.x - lo.x, hi.y - lo.y);
        match self {
            CurveObjective::ThreeSides => w + h + w.min(h),
            CurveObjective::Perimeter => 2.0 * (w + h),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientationMin {
    pub angle: f64,
    pub value: f64,
}

/// Minimum of the objective over the `k` orientations `i·π/k`, `i < k`.
/// Grids with `k` dividing `k'` are nested, so refining never increases it.
pub fn min_over_orientations(
    curve: &Polyline,
    objective: CurveObjective,
    k: usize,
) -> Result<OrientationMin, BoundsError> {
    if k < 4 {
        return Err(BoundsError::TooFewOrientations(k));
    }
    let mut best = OrientationMin { angle: 0.0, value: f64::INFINITY };
    for i in 0..k {
        let angle = i as f64 * PI / k as f64;
        let (lo, hi) = bounding_box_at(curve, angle);
        let value = objective.of_box(lo, hi);
        if value < best.value {
            best = OrientationMin { angle, value };
        }
    }
    Ok(best)
}

/// Two unit legs of an isosceles right triangle, base along the x-axis.
pub fn right_isosceles_curve() -> Polyline {
    let s = SQRT_2 / 2.0;
    Polyline::new(vec![Point::new(0.0, 0.0), Point::new(s, s), Point::new(SQRT_2, 0.0)]).expect("valid curve")
}

/// Two unit legs of the isosceles triangle with base `4/√5`.
pub fn wide_isosceles_curve() -> Polyline {
    Polyline::new(vec![Point::new(0.0, 0.0), Point::new(2.0 / SQRT_5, 1.0 / SQRT_5), Point::new(4.0 / SQRT_5, 0.0)])
        .expect("valid curve")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn segment() -> Polyline {
        Polyline::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn sqrt5_constant() {
        assert_eq!(SQRT_5, 5f64.sqrt());
    }

    #[test]
    fn segment_stats() {
        let s = aligned_enclosing_rect(&segment());
        assert_eq!((s.w, s.h, s.l, s.z), (1.0, 0.0, 1.0, 1.0));
        let t = three_side_bound(&segment());
        assert_relative_eq!(t.value, 1.0);
        assert_relative_eq!(t.slack, SQRT_2 - 1.0);
        let p = perimeter_bound(&segment());
        assert_relative_eq!(p.value, 2.0);
        assert_relative_eq!(p.slack, SQRT_5 - 2.0);
    }

    #[test]
    fn tight_curves() {
        let s = aligned_enclosing_rect(&right_isosceles_curve());
        assert_relative_eq!(s.w, SQRT_2, epsilon = 1e-12);
        assert_relative_eq!(s.h, SQRT_2 / 2.0, epsilon = 1e-12);
        assert_relative_eq!(s.l, 2.0, epsilon = 1e-12);
        let t = three_side_bound(&right_isosceles_curve());
        assert!(t.slack.abs() < 1e-9);
        assert_relative_eq!(t.value, 2.0 * SQRT_2, epsilon = 1e-12);

        let s = aligned_enclosing_rect(&wide_isosceles_curve());
        assert_relative_eq!(s.w, 4.0 / SQRT_5, epsilon = 1e-12);
        assert_relative_eq!(s.h, 1.0 / SQRT_5, epsilon = 1e-12);
        let p = perimeter_bound(&wide_isosceles_curve());
        assert!(p.slack.abs() < 1e-9);
        assert_relative_eq!(p.value, 2.0 * SQRT_5, epsilon = 1e-12);
    }

    #[test]
    fn rotated_endpoints_are_aligned_first() {
        let c = Polyline::new(vec![Point::new(1.0, 1.0), Point::new(1.0, 3.0)]).unwrap();
        let s = aligned_enclosing_rect(&c);
        assert_relative_eq!(s.w, 2.0, epsilon = 1e-12);
        assert!(s.h.abs() < 1e-12);
    }

    #[test]
    fn closed_curve_has_zero_z() {
        let c =
            Polyline::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, 0.0)])
                .unwrap();
        let s = aligned_enclosing_rect(&c);
        assert_eq!(s.z, 0.0);
        assert!(three_side_bound(&c).holds(s.l));
        assert!(perimeter_bound(&c).holds(s.l));
    }

    #[test]
    fn lambda_function() {
        assert_eq!(f_lambda(1.0).unwrap(), 2.0);
        assert_relative_eq!(f_lambda(SQRT_5 / 2.0).unwrap(), SQRT_5, epsilon = 1e-15);
        assert!(f_lambda(0.99).is_err());
        assert!(f_lambda(f64::NAN).is_err());
    }

    #[test]
    fn case_functions() {
        assert_eq!(three_side_tilt_f(0.0).unwrap(), 3.0);
        assert_relative_eq!(three_side_tilt_f(PI / 4.0).unwrap(), 2.0 * SQRT_2, epsilon = 1e-15);
        assert_eq!(perimeter_tilt_f(0.0).unwrap(), SQRT_5);
        assert_relative_eq!(perimeter_tilt_f(0.5f64.atan()).unwrap(), 12.0 / 5.0, epsilon = 1e-15);
        assert!(three_side_tilt_f(-0.1).is_err());
        assert!(three_side_tilt_f(1.0).is_err());
        assert!(perimeter_tilt_f(0.5).is_err());
        assert!(tilt_case_functions(0.3).is_ok());
        assert!(tilt_case_functions(0.6).is_err());
    }

    #[test]
    fn segment_orientation_minimum() {
        for k in [4, 7, 100] {
            let m = min_over_orientations(&segment(), CurveObjective::Perimeter, k).unwrap();
            assert_relative_eq!(m.value, 2.0, epsilon = 1e-12);
        }
        assert!(min_over_orientations(&segment(), CurveObjective::Perimeter, 3).is_err());
    }
}
