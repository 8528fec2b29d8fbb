//! Approximate tours and paths for infinite lines.
//!
//! In a frame where the rectangle is axis-parallel, a line of nonnegative
//! slope meets `[x1, x2] × [y1, y2]` iff it separates the corners
//! `q2 = (x2, y1)` and `q4 = (x1, y2)`; a line of negative slope iff it
//! separates `q1` and `q3`. Both are linear in the extents, which gives a
//! 4-variable LP per orientation.

use crate::error::LpError;
use crate::error::TspnError;
use crate::geom::{IntoFrame, Line, Point};
use crate::lp::{self, Constraint, ConstraintSource, LpProblem, SolveReport};
use crate::sweep::{self, Mode, Neighborhoods, Objective, SweepConfig, TourResult, NUDGE_THRESHOLD};

/// Which corner pair a supporting line must separate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SlopeClass {
    /// Slope ≥ 0: `q2` below, `q4` above.
    NonNegative,
    /// Slope < 0: `q1` below, `q3` above.
    Negative,
}

/// The two separation constraints for a frame line `n·p = c`.
///
/// `n` must be oriented for its class: `n.x ≤ 0 ≤ n.y` for nonnegative
/// slope, `n.x, n.y ≥ 0` for negative slope. Then "above the line" is
/// `n·p ≥ c`, and `n.y·(y − a·x − b) = n·p − c` with `y = a·x + b`, so each
/// constraint is the slope-intercept one scaled by `n.y ≥ 0`. That scaling
/// keeps coefficients bounded for steep lines and has a vertical limit.
pub(crate) fn separation_constraints(n: Point, c: f64, class: SlopeClass) -> [Constraint; 2] {
    match class {
        // y2 ≥ a·x1 + b  and  y1 ≤ a·x2 + b
        SlopeClass::NonNegative => {
            [Constraint::new([n.x, 0.0, 0.0, n.y], c), Constraint::new([0.0, -n.x, -n.y, 0.0], -c)]
        }
        // y1 ≤ a·x1 + b  and  y2 ≥ a·x2 + b
        SlopeClass::Negative => [Constraint::new([-n.x, 0.0, -n.y, 0.0], -c), Constraint::new([0.0, n.x, 0.0, n.y], c)],
    }
}

/// Frame normal and offset of a line, oriented for its slope class.
/// Zero slope goes with the nonnegative class; so does a vertical line.
#[inline]
fn frame_line(line: &Line, rot: IntoFrame) -> (Point, f64, SlopeClass) {
    let mut n = rot.apply(line.normal());
    let mut c = line.c();
    if n.y < 0.0 || (n.y == 0.0 && n.x > 0.0) {
        n = Point { x: -n.x, y: -n.y };
        c = -c;
    }
    let class = if n.x <= 0.0 { SlopeClass::NonNegative } else { SlopeClass::Negative };
    (n, c, class)
}

/// The intersecting-rectangle LP for `lines` in the frame at `angle`:
/// `2n + 2` constraints, perimeter objective for tours and three-side
/// objective for paths.
pub fn build_lines_lp(lines: &[Line], angle: f64, mode: Mode) -> LpProblem {
    let objective = match mode {
        Mode::Tour => Objective::Perimeter,
        Mode::Path => Objective::ThreeSides,
    };
    lines.build_lp(angle, objective)
}

impl Neighborhoods for [Line] {
    fn count(&self) -> usize {
        self.len()
    }

    fn near_vertical(&self, angle: f64) -> bool {
        let (s, c) = angle.sin_cos();
        // frame y-component of the normal
        self.iter().any(|l| (-l.a() * s + l.b() * c).abs() < NUDGE_THRESHOLD)
    }

    fn build_lp(&self, angle: f64, objective: Objective) -> LpProblem {
        let frame = LinesInFrame { lines: self, rot: IntoFrame::new(angle) };
        LpProblem { objective: objective.coefficients(), constraints: sweep::collect(&frame) }
    }

    fn solve_at(&self, angle: f64, objective: Objective, hints: &[usize]) -> Result<SolveReport, LpError> {
        let frame = LinesInFrame { lines: self, rot: IntoFrame::new(angle) };
        lp::solve_source(objective.coefficients(), &frame, hints)
    }

    fn scale(&self) -> f64 {
        self.iter().map(|l| l.c().abs()).fold(0.0, f64::max)
    }
}

/// The LP constraints of `lines` in one frame, generated on demand: the two
/// structural ones, then two per line.
struct LinesInFrame<'a> {
    lines: &'a [Line],
    rot: IntoFrame,
}

impl LinesInFrame<'_> {
    #[inline]
    fn pair(&self, line: &Line) -> [Constraint; 2] {
        let (n, c, class) = frame_line(line, self.rot);
        separation_constraints(n, c, class)
    }
}

impl ConstraintSource for LinesInFrame<'_> {
    fn len(&self) -> usize {
        2 * self.lines.len() + 2
    }

    fn get(&self, i: usize) -> Constraint {
        match i {
            0 => Constraint::width_nonnegative(),
            1 => Constraint::height_nonnegative(),
            _ => self.pair(&self.lines[(i - 2) / 2])[i % 2],
        }
    }

    fn scan(&self, mut f: impl FnMut(usize, &Constraint) -> bool) {
        if !f(0, &Constraint::width_nonnegative()) || !f(1, &Constraint::height_nonnegative()) {
            return;
        }
        for (k, line) in self.lines.iter().enumerate() {
            let [a, b] = self.pair(line);
            if !f(2 + 2 * k, &a) || !f(3 + 2 * k, &b) {
                return;
            }
        }
    }
}

/// Drops lines equal to an earlier one in canonical form within `1e-12`.
pub fn dedup_lines(lines: &[Line]) -> Vec<Line> {
    let mut order: Vec<usize> = (0..lines.len()).collect();
    order.sort_by(|&i, &j| {
        let (p, q) = (&lines[i], &lines[j]);
        p.a().total_cmp(&q.a()).then(p.b().total_cmp(&q.b())).then(p.c().total_cmp(&q.c())).then(i.cmp(&j))
    });
    let mut keep = vec![true; lines.len()];
    let mut last: Option<usize> = None;
    for &i in &order {
        if let Some(j) = last {
            if lines[i].approx_eq(&lines[j], 1e-12) {
                keep[i] = false;
                continue;
            }
        }
        last = Some(i);
    }
    lines.iter().zip(keep).filter(|(_, k)| *k).map(|(l, _)| *l).collect()
}

fn prepare(lines: &[Line], cfg: &SweepConfig) -> Result<Vec<Line>, TspnError> {
    cfg.validate()?;
    if lines.is_empty() {
        return Err(TspnError::EmptyInstance);
    }
    Ok(sweep::shuffled(&dedup_lines(lines), cfg.seed))
}

/// Minimum-perimeter intersecting rectangle over `cfg.m` orientations
/// `i·2ε` in `[0, π/2)`. Its boundary is a tour within `(4/π)(1+ε)` of optimal.
pub fn tour_lines(lines: &[Line], cfg: &SweepConfig) -> Result<TourResult, TspnError> {
    let lines = prepare(lines, cfg)?;
    let best = sweep::best_over_angles(lines.as_slice(), &cfg.angles(), Objective::Perimeter, true)?;
    Ok(TourResult::from_outcome(best, cfg, Mode::Tour, Objective::Perimeter, lines.scale()))
}

/// Rectangle minimizing `per − long` over `cfg.m` orientations in `[0, π)`;
/// the emitted path is its three sides without a longest one.
pub fn path_lines(lines: &[Line], cfg: &SweepConfig) -> Result<TourResult, TspnError> {
    let lines = prepare(lines, cfg)?;
    let best = sweep::best_over_angles(lines.as_slice(), &cfg.angles(), Objective::ThreeSides, true)?;
    let mut result = TourResult::from_outcome(best, cfg, Mode::Path, Objective::ThreeSides, lines.scale());
    result.path = Some(result.rect.three_side_path().to_vec());
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{line_intersects_rect, OrientedRect, DEFAULT_TOL};
    use crate::lp::solve;
    use approx::assert_relative_eq;

    fn l(slope: f64, icpt: f64) -> Line {
        Line::from_slope_intercept(slope, icpt).unwrap()
    }

    fn triangle() -> Vec<Line> {
        vec![l(1.0, 0.0), l(0.0, 0.0), l(-1.0, 2.0)]
    }

    #[test]
    fn lp_shape() {
        let p = build_lines_lp(&triangle(), 0.0, Mode::Tour);
        assert_eq!(p.constraints.len(), 8);
        assert_eq!(p.objective, [-2.0, 2.0, -2.0, 2.0]);
        assert_eq!(build_lines_lp(&triangle(), 0.0, Mode::Path).objective, [-1.0, 1.0, -2.0, 2.0]);
    }

    #[test]
    fn concurrent_pair_lp_is_zero() {
        let p = build_lines_lp(&[l(1.0, 0.0), l(-1.0, 0.0)], 0.0, Mode::Tour);
        assert!(solve(&p, 0).unwrap().value().unwrap().abs() < 1e-12);
    }

    #[test]
    fn horizontal_line_pins_y_range() {
        // both classes reduce to y1 ≤ b ≤ y2
        let (n, c, class) = frame_line(&l(0.0, 3.0), IntoFrame::new(0.0));
        assert_eq!(class, SlopeClass::NonNegative);
        for cls in [SlopeClass::NonNegative, SlopeClass::Negative] {
            let cons = separation_constraints(n, c, cls);
            let inside = [0.0, 1.0, 2.0, 4.0];
            let above = [0.0, 1.0, 3.5, 4.0];
            assert!(cons.iter().all(|k| k.slack(&inside) >= 0.0));
            assert!(cons.iter().any(|k| k.slack(&above) < 0.0));
        }
    }

    #[test]
    fn encoding_matches_slope_intercept_form() {
        // scaled forms agree with y2 ≥ a·x1 + b etc. on sample points
        for &(a, b) in &[(2.0, 1.0), (-0.5, 3.0), (0.0, -1.0)] {
            let (n, c, class) = frame_line(&l(a, b), IntoFrame::new(0.0));
            let cons = separation_constraints(n, c, class);
            for v in [[0.0, 1.0, -2.0, 5.0], [-3.0, 0.5, 1.0, 1.5], [2.0, 2.0, -1.0, 0.0]] {
                let (x1, x2, y1, y2) = (v[0], v[1], v[2], v[3]);
                let want =
                    if a >= 0.0 { [y2 >= a * x1 + b, y1 <= a * x2 + b] } else { [y1 <= a * x1 + b, y2 >= a * x2 + b] };
                for (k, w) in cons.iter().zip(want) {
                    assert_eq!(k.slack(&v) >= -1e-12, w, "line ({a},{b}) at {v:?}");
                }
            }
        }
    }

    #[test]
    fn vertical_lines_are_encoded() {
        let vertical = Line::new(1.0, 0.0, 2.0).unwrap();
        let p = build_lines_lp(&[vertical, l(0.0, 1.0)], 0.0, Mode::Tour);
        let v = solve(&p, 0).unwrap().point().unwrap();
        let r = OrientedRect::from_lp_point(0.0, v);
        assert!(line_intersects_rect(&vertical, &r, DEFAULT_TOL));
    }

    #[test]
    fn dedup_keeps_first_occurrence_order() {
        let lines = vec![l(1.0, 0.0), l(0.0, 1.0), Line::new(-2.0, 2.0, 0.0).unwrap(), l(0.0, 2.0)];
        let d = dedup_lines(&lines);
        assert_eq!(d, vec![lines[0], lines[1], lines[3]]);
    }

    #[test]
    fn concurrent_tour_is_degenerate() {
        let cfg = SweepConfig::for_tour(0.005, 1).unwrap();
        let r = tour_lines(&[l(1.0, 0.0), l(-1.0, 0.0)], &cfg).unwrap();
        assert!(r.objective_value < 1e-9);
        assert!(r.degenerate);
        let cfg = SweepConfig::for_path(1.0 / 250.0, 1).unwrap();
        let r = path_lines(&[l(1.0, 0.0), l(-1.0, 0.0)], &cfg).unwrap();
        assert!(r.objective_value < 1e-9);
    }

    #[test]
    fn triangle_tour_and_path() {
        let cfg = SweepConfig::for_tour(0.005, 7).unwrap();
        let r = tour_lines(&triangle(), &cfg).unwrap();
        assert!(!r.degenerate);
        assert!(r.objective_value <= 2.0 + 1e-12);
        for line in triangle() {
            assert!(line_intersects_rect(&line, &r.rect, DEFAULT_TOL));
        }
        let cfg = SweepConfig::for_path(1.0 / 250.0, 7).unwrap();
        let p = path_lines(&triangle(), &cfg).unwrap();
        let path = p.path.as_ref().unwrap();
        assert_eq!(path.len(), 4);
        let len: f64 = path.windows(2).map(|w| w[0].dist(w[1])).sum();
        assert_relative_eq!(len, p.objective_value, epsilon = 1e-12);
        // a vertical unit segment is optimal; π/2 is not on the grid
        assert!(p.objective_value <= 1.0 + cfg.epsilon, "{}", p.objective_value);
    }

    #[test]
    fn empty_input_is_an_error() {
        let cfg = SweepConfig::for_tour(0.005, 0).unwrap();
        assert_eq!(tour_lines(&[], &cfg), Err(TspnError::EmptyInstance));
    }
}
