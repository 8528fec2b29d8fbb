//! Approximate tours and paths for half-infinite rays.
//!
//! A ray is classified by the quadrant of its direction in the frame. It
//! meets the axis-parallel rectangle iff its supporting line separates the
//! corner pair of its slope class and its apex lies on the correct side of
//! one corner:
//!
//! | quadrant | separated | apex condition                   |
//! |----------|-----------|----------------------------------|
//! | 1        | q2, q4    | dominated by q3: `p ≤ x2, q ≤ y2` |
//! | 2        | q1, q3    | right of and below q4: `p ≥ x1, q ≤ y2` |
//! | 3        | q2, q4    | dominates q1: `p ≥ x1, q ≥ y1`    |
//! | 4        | q1, q3    | left of and above q2: `p ≤ x2, q ≥ y1` |
//!
//! The apex need not lie inside the rectangle.

use crate::error::LpError;
use crate::error::TspnError;
use crate::geom::{IntoFrame, Point, Quadrant, Ray};
use crate::lines::{separation_constraints, SlopeClass};
use crate::lp::{self, Constraint, ConstraintSource, LpProblem, SolveReport};
use crate::sweep::{self, Mode, Neighborhoods, Objective, SweepConfig, TourResult, NUDGE_THRESHOLD};

/// The per-ray constraints in one frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayConstraintSet {
    pub quadrant: Quadrant,
    pub separation: [Constraint; 2],
    pub apex: [Constraint; 2],
}

impl RayConstraintSet {
    pub fn in_frame(ray: &Ray, angle: f64) -> Self {
        Self::with(ray, IntoFrame::new(angle))
    }

    #[inline]
    fn with(ray: &Ray, rot: IntoFrame) -> Self {
        let apex = rot.apply(ray.apex());
        let d = rot.apply(ray.dir());
        let quadrant = Quadrant::of_direction(d);
        // Normal of the supporting line, oriented for the class of the quadrant.
        let (n, class) = match quadrant {
            Quadrant::First => (Point { x: -d.y, y: d.x }, SlopeClass::NonNegative),
            Quadrant::Third => (Point { x: d.y, y: -d.x }, SlopeClass::NonNegative),
            Quadrant::Second => (Point { x: d.y, y: -d.x }, SlopeClass::Negative),
            Quadrant::Fourth => (Point { x: -d.y, y: d.x }, SlopeClass::Negative),
        };
        let separation = separation_constraints(n, n.dot(apex), class);
        let (p, q) = (apex.x, apex.y);
        let apex = match quadrant {
            Quadrant::First => [Constraint::new([0.0, 1.0, 0.0, 0.0], p), Constraint::new([0.0, 0.0, 0.0, 1.0], q)],
            Quadrant::Second => [Constraint::new([-1.0, 0.0, 0.0, 0.0], -p), Constraint::new([0.0, 0.0, 0.0, 1.0], q)],
            Quadrant::Third => [Constraint::new([-1.0, 0.0, 0.0, 0.0], -p), Constraint::new([0.0, 0.0, -1.0, 0.0], -q)],
            Quadrant::Fourth => [Constraint::new([0.0, 1.0, 0.0, 0.0], p), Constraint::new([0.0, 0.0, -1.0, 0.0], -q)],
        };
        Self { quadrant, separation, apex }
    }

    pub fn constraints(&self) -> [Constraint; 4] {
        [self.separation[0], self.separation[1], self.apex[0], self.apex[1]]
    }

    /// Whether extents `v = (x1, x2, y1, y2)` satisfy all four constraints.
    pub fn satisfied_by(&self, v: &[f64; 4], tol: f64) -> bool {
        self.constraints().iter().all(|c| c.slack(v) >= -tol)
    }
}

/// The perimeter LP for `rays` in the frame at `angle`: up to four
/// constraints per ray plus `x1 ≤ x2`, `y1 ≤ y2`.
pub fn build_rays_lp(rays: &[Ray], angle: f64) -> LpProblem {
    rays.build_lp(angle, Objective::Perimeter)
}

impl Neighborhoods for [Ray] {
    fn count(&self) -> usize {
        self.len()
    }

    fn near_vertical(&self, angle: f64) -> bool {
        let (s, c) = angle.sin_cos();
        // frame x-component of the direction
        self.iter().any(|r| (r.dir().x * c + r.dir().y * s).abs() < NUDGE_THRESHOLD)
    }

    fn build_lp(&self, angle: f64, objective: Objective) -> LpProblem {
        let frame = RaysInFrame { rays: self, rot: IntoFrame::new(angle) };
        LpProblem { objective: objective.coefficients(), constraints: sweep::collect(&frame) }
    }

    fn solve_at(&self, angle: f64, objective: Objective, hints: &[usize]) -> Result<SolveReport, LpError> {
        let frame = RaysInFrame { rays: self, rot: IntoFrame::new(angle) };
        lp::solve_source(objective.coefficients(), &frame, hints)
    }

    fn scale(&self) -> f64 {
        self.iter().map(|r| r.apex().norm()).fold(0.0, f64::max)
    }
}

/// The LP constraints of `rays` in one frame, generated on demand: the two
/// structural ones, then four per ray.
struct RaysInFrame<'a> {
    rays: &'a [Ray],
    rot: IntoFrame,
}

impl ConstraintSource for RaysInFrame<'_> {
    fn len(&self) -> usize {
        4 * self.rays.len() + 2
    }

    fn get(&self, i: usize) -> Constraint {
        match i {
            0 => Constraint::width_nonnegative(),
            1 => Constraint::height_nonnegative(),
            _ => RayConstraintSet::with(&self.rays[(i - 2) / 4], self.rot).constraints()[(i - 2) % 4],
        }
    }

    fn scan(&self, mut f: impl FnMut(usize, &Constraint) -> bool) {
        if !f(0, &Constraint::width_nonnegative()) || !f(1, &Constraint::height_nonnegative()) {
            return;
        }
        for (k, ray) in self.rays.iter().enumerate() {
            let set = RayConstraintSet::with(ray, self.rot).constraints();
            for (j, c) in set.iter().enumerate() {
                if !f(2 + 4 * k + j, c) {
                    return;
                }
            }
        }
    }
}

/// Drops rays whose apex and direction both match an earlier ray within
/// `1e-12`. Anti-parallel overlapping rays are kept.
pub fn dedup_rays(rays: &[Ray]) -> Vec<Ray> {
    let key = |r: &Ray| [r.apex().x, r.apex().y, r.dir().x, r.dir().y];
    let mut order: Vec<usize> = (0..rays.len()).collect();
    order.sort_by(|&i, &j| {
        let (p, q) = (key(&rays[i]), key(&rays[j]));
        p.iter().zip(&q).fold(std::cmp::Ordering::Equal, |o, (a, b)| o.then(a.total_cmp(b))).then(i.cmp(&j))
    });
    let mut keep = vec![true; rays.len()];
    let mut last: Option<usize> = None;
    for &i in &order {
        if let Some(j) = last {
            let (p, q) = (key(&rays[i]), key(&rays[j]));
            if p.iter().zip(&q).all(|(a, b)| (a - b).abs() <= 1e-12) {
                keep[i] = false;
                continue;
            }
        }
        last = Some(i);
    }
    rays.iter().zip(keep).filter(|(_, k)| *k).map(|(r, _)| *r).collect()
}

fn sweep_rays(rays: &[Ray], cfg: &SweepConfig, mode: Mode) -> Result<TourResult, TspnError> {
    cfg.validate()?;
    if rays.is_empty() {
        return Err(TspnError::EmptyInstance);
    }
    let rays = sweep::shuffled(&dedup_rays(rays), cfg.seed);
    let best = sweep::best_over_angles(rays.as_slice(), &cfg.angles(), Objective::Perimeter, true)?;
    Ok(TourResult::from_outcome(best, cfg, mode, Objective::Perimeter, rays.scale()))
}

/// Minimum-perimeter intersecting rectangle over `cfg.m` orientations in
/// `[0, π/2)`; a tour within `(4/π)(1+ε)` of optimal.
pub fn tour_rays(rays: &[Ray], cfg: &SweepConfig) -> Result<TourResult, TspnError> {
    sweep_rays(rays, cfg, Mode::Tour)
}

/// The same rectangle as [`tour_rays`], emitted as a closed boundary walk.
/// Its perimeter is within `(1+ε)√5` of the optimal open path.
pub fn path_rays(rays: &[Ray], cfg: &SweepConfig) -> Result<TourResult, TspnError> {
    let mut result = sweep_rays(rays, cfg, Mode::Path)?;
    result.path = Some(result.rect.boundary().to_vec());
    Ok(result)
}
