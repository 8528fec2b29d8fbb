//! Brute-force ground truth for the algorithms.
//!
//! * [`lp_basis_enum`] solves an extents LP by trying every vertex.
//! * [`dense_angle_sweep`] approximates the best intersecting rectangle from
//!   above with a fine orientation grid.
//! * [`certify`] turns a dense sweep into a lower bound on the optimum and a
//!   ratio for a result.
//! * [`verify_output`] checks a result by clipping, sharing no code with the
//!   constraint encodings.

use std::f64::consts::{PI, SQRT_2};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::SQRT_5;
use crate::error::{LpError, OracleError};
use crate::geom::{
    line_rect_distance, ray_rect_distance, segment_line_distance, segment_ray_distance, Line, Point, Ray,
};
use crate::lp::{Constraint, LpProblem, LpSolution};
use crate::sweep::{self, Mode, Objective, TourResult};
use crate::RegionSet;

/// Constraint cap for [`lp_basis_enum`]; cost grows as `n choose 4`.
pub const BASIS_ENUM_CAP: usize = 100;

/// Default orientation count of the dense sweep.
pub const DEFAULT_SWEEP_K: usize = 100_000;

/// Half-width of the box that makes every feasible region a polytope.
const ENUM_BOX: f64 = 1e4;
const ENUM_GROWTH: f64 = 100.0;
/// Vertices are exact up to roundoff, so feasibility is checked tightly.
const VERTEX_TOL: f64 = 1e-11;

/// Exact optimum of a small LP by vertex enumeration.
///
/// A box `|v_k| ≤ B` is added so that a feasible problem always has a vertex
/// (parallel separating lines leave a line of optima otherwise). If the best
/// vertex lies on the box, the enumeration is repeated with larger boxes; a
/// value that keeps dropping means the objective is unbounded.
pub fn lp_basis_enum(problem: &LpProblem) -> Result<LpSolution, LpError> {
    problem.validate()?;
    if problem.constraints.len() > BASIS_ENUM_CAP {
        return Err(LpError::TooManyConstraints { cap: BASIS_ENUM_CAP, got: problem.constraints.len() });
    }
    let scale = problem.constraints.iter().map(|c| c.rhs.abs()).fold(1.0, f64::max);
    let mut bound = ENUM_BOX * scale;
    let Some(mut best) = enumerate(problem, bound) else {
        return Ok(LpSolution::Infeasible);
    };
    for _ in 0..3 {
        if best.0.iter().all(|x| x.abs() < bound * (1.0 - 1e-9)) {
            return Ok(LpSolution::Optimal { point: best.0, value: best.1 });
        }
        let wider = enumerate(problem, bound * ENUM_GROWTH).expect("a wider box keeps the problem feasible");
        if wider.1 >= best.1 - 1e-9 * (1.0 + best.1.abs()) {
            // a face of optima reaches the box; the value is settled
            return Ok(LpSolution::Optimal { point: best.0, value: best.1 });
        }
        (best, bound) = (wider, bound * ENUM_GROWTH);
    }
    Err(LpError::UnboundedObjective)
}

fn enumerate(problem: &LpProblem, bound: f64) -> Option<([f64; 4], f64)> {
    let mut all = problem.constraints.clone();
    for k in 0..4 {
        let mut g = [0.0; 4];
        g[k] = 1.0;
        all.push(Constraint::new(g, -bound));
        g[k] = -1.0;
        all.push(Constraint::new(g, -bound));
    }
    let n = all.len();
    let mut best: Option<([f64; 4], f64)> = None;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                // Three hyperplanes meet in a line p + t·u; each fourth
                // constraint then fixes t.
                let Some((p, u)) = solution_line([&all[a], &all[b], &all[c]]) else { continue };
                for row in &all[c + 1..] {
                    let gu: f64 = (0..4).map(|k| row.coeffs[k] * u[k]).sum();
                    let mag: f64 = (0..4).map(|k| (row.coeffs[k] * u[k]).abs()).sum();
                    if gu.abs() <= 1e-12 * mag.max(f64::MIN_POSITIVE) {
                        continue;
                    }
                    let t = (row.rhs - row.lhs(&p)) / gu;
                    let v: [f64; 4] = std::array::from_fn(|k| p[k] + t * u[k]);
                    let value = problem.value_at(&v);
                    if let Some((bp, bv)) = best {
                        let tie = 1e-12 * (1.0 + bv.abs());
                        if value > bv + tie || (value >= bv - tie && !lex_less(&v, &bp)) {
                            continue;
                        }
                    }
                    if all.iter().all(|k| feasible(k, &v)) {
                        best = Some((v, value));
                    }
                }
            }
        }
    }
    best
}

fn feasible(c: &Constraint, v: &[f64; 4]) -> bool {
    let mag = 1.0 + c.rhs.abs() + c.coeffs.iter().zip(v).map(|(g, x)| (g * x).abs()).sum::<f64>();
    c.slack(v) >= -VERTEX_TOL * mag
}

fn lex_less(a: &[f64; 4], b: &[f64; 4]) -> bool {
    for k in [0, 2, 1, 3] {
        if a[k] != b[k] {
            return a[k] < b[k];
        }
    }
    false
}

/// Solutions of three equations `g_i·v = h_i` as `p + t·u`, or `None`
/// below rank 3. Gaussian elimination with full pivoting; the one column
/// left without a pivot is the free variable.
fn solution_line(rows: [&Constraint; 3]) -> Option<([f64; 4], [f64; 4])> {
    let mut m = [[0.0; 5]; 3];
    for (r, c) in rows.iter().enumerate() {
        m[r][..4].copy_from_slice(&c.coeffs);
        m[r][4] = c.rhs;
    }
    let scale = m.iter().flat_map(|r| r[..4].iter()).fold(0.0f64, |a, x| a.max(x.abs()));
    let mut pivot_col = [0usize; 3];
    let mut used = [false; 4];
    for r in 0..3 {
        let (mut pr, mut pc, mut pv) = (r, 0, 0.0f64);
        for (i, row) in m.iter().enumerate().skip(r) {
            for (k, &x) in row[..4].iter().enumerate() {
                if !used[k] && x.abs() > pv {
                    (pr, pc, pv) = (i, k, x.abs());
                }
            }
        }
        if pv <= 1e-12 * scale {
            return None;
        }
        m.swap(r, pr);
        used[pc] = true;
        pivot_col[r] = pc;
        for i in 0..3 {
            if i != r {
                let f = m[i][pc] / m[r][pc];
                if f != 0.0 {
                    for k in 0..5 {
                        m[i][k] -= f * m[r][k];
                    }
                }
            }
        }
    }
    let free = (0..4).find(|&k| !used[k]).expect("one column is free");
    let mut p = [0.0; 4];
    let mut u = [0.0; 4];
    u[free] = 1.0;
    for r in 0..3 {
        let pc = pivot_col[r];
        p[pc] = m[r][4] / m[r][pc];
        u[pc] = -m[r][free] / m[r][pc];
    }
    Some((p, u))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DenseSweep {
    pub angle: f64,
    pub value: f64,
}

/// Minimum of the rectangle measure over the `k` orientations `i·π/k`.
///
/// The measure is taken from the solved rectangle: `per` for
/// [`Objective::Perimeter`], `per − long` for [`Objective::ThreeSides`].
/// A rectangle's perimeter is the same in frames `θ` and `θ + π/2`, so for
/// the perimeter with even `k` only the first half of the grid is solved.
pub fn dense_angle_sweep(regions: &RegionSet, objective: Objective, k: usize) -> Result<DenseSweep, OracleError> {
    if k == 0 {
        return Err(LpError::Malformed("dense sweep needs at least one orientation".into()).into());
    }
    let solved = if objective == Objective::Perimeter && k % 2 == 0 { k / 2 } else { k };
    let angles: Vec<f64> = (0..solved).map(|i| i as f64 * PI / k as f64).collect();
    let best = match regions {
        RegionSet::Lines(lines) => sweep::best_over_angles(lines.as_slice(), &angles, objective, false)?,
        RegionSet::Rays(rays) => sweep::best_over_angles(rays.as_slice(), &angles, objective, false)?,
    };
    Ok(DenseSweep { angle: best.angle, value: best.measure })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    /// Lower bound derived from a dense orientation sweep.
    DenseSweep,
    /// Optimum known by construction.
    KnownOptimum,
    /// Optimum of a single LP by vertex enumeration.
    BasisEnum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioCertificate {
    pub output_value: f64,
    pub lower_bound: f64,
    /// `output_value / lower_bound`; absent when the lower bound is zero.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ratio: Option<f64>,
    /// Largest ratio the guarantee allows, with `1e-3` slack.
    pub bound: f64,
    pub method: CertificateMethod,
    pub passed: bool,
}

impl RatioCertificate {
    pub fn new(output_value: f64, lower_bound: f64, bound: f64, method: CertificateMethod) -> Self {
        let ratio = (lower_bound > 0.0).then(|| output_value / lower_bound);
        let passed = ratio.is_some_and(|r| r <= bound);
        Self { output_value, lower_bound, ratio, bound, method, passed }
    }
}

/// Lower bound on the optimum from a dense sweep, and the ratio of `result`
/// against it.
///
/// * Tours: the best intersecting rectangle is at most `4/π` times the
///   optimal tour, so `LB = (π/4)·dense`.
/// * Line paths: per − long of the box aligned with an optimal path is at
///   most `√2` times its length, so `LB = dense/√2`.
/// * Ray paths: that box's perimeter is at most `√5` times the path length,
///   so `LB = dense/√5`.
///
/// `dense` is the sweep minimum, a close upper estimate of the best
/// rectangle; the bound is therefore a surrogate, accurate to `O(1/k)`.
pub fn certify(result: &TourResult, regions: &RegionSet, k: usize) -> Result<RatioCertificate, OracleError> {
    let eps = result.epsilon;
    let (objective, factor, bound) = match (result.mode, regions) {
        (Mode::Tour, _) => (Objective::Perimeter, PI / 4.0, 4.0 / PI * (1.0 + eps) + 1e-3),
        (Mode::Path, RegionSet::Lines(_)) => (Objective::ThreeSides, 1.0 / SQRT_2, SQRT_2 * (1.0 + eps) + 1e-3),
        (Mode::Path, RegionSet::Rays(_)) => (Objective::Perimeter, 1.0 / SQRT_5, SQRT_5 * (1.0 + eps) + 1e-3),
    };
    let dense = dense_angle_sweep(regions, objective, k)?;
    let lower_bound = factor * dense.value;
    if lower_bound <= 1e-12 * (1.0 + regions.scale()) {
        return Err(OracleError::DegenerateInstance);
    }
    Ok(RatioCertificate::new(output_length(result), lower_bound, bound, CertificateMethod::DenseSweep))
}

/// Length of what `result` emits, measured rather than read from
/// `objective_value`: the polyline for paths, the perimeter for tours.
pub fn output_length(result: &TourResult) -> f64 {
    match (&result.path, result.mode) {
        (Some(path), Mode::Path) => path.windows(2).map(|w| w[0].dist(w[1])).sum(),
        _ => result.rect.per(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub ok: bool,
    /// Largest distance from a region to the output; zero when all meet it.
    pub max_violation: f64,
    /// Region attaining `max_violation`.
    pub worst_region: Option<usize>,
}

/// Checks that every region meets the output within `tol`.
///
/// Path results are checked against their emitted polyline, tours against
/// the rectangle boundary (for unbounded regions, meeting the rectangle and
/// meeting its boundary coincide).
pub fn verify_output(result: &TourResult, regions: &RegionSet, tol: f64) -> Verification {
    let polyline: Option<&[Point]> = match result.mode {
        Mode::Path => result.path.as_deref(),
        Mode::Tour => None,
    };
    let distances: Vec<f64> = match (regions, polyline) {
        (RegionSet::Lines(lines), None) => lines.iter().map(|l| line_rect_distance(l, &result.rect)).collect(),
        (RegionSet::Rays(rays), None) => rays.iter().map(|r| ray_rect_distance(r, &result.rect)).collect(),
        (RegionSet::Lines(lines), Some(path)) => lines.iter().map(|l| polyline_line_distance(path, l)).collect(),
        (RegionSet::Rays(rays), Some(path)) => rays.iter().map(|r| polyline_ray_distance(path, r)).collect(),
    };
    let worst = distances.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1));
    let (worst_region, max_violation) = match worst {
        Some((i, &d)) if d > 0.0 => (Some(i), d),
        _ => (None, 0.0),
    };
    Verification { ok: max_violation <= tol, max_violation, worst_region }
}

fn polyline_line_distance(path: &[Point], line: &Line) -> f64 {
    path.windows(2).map(|w| segment_line_distance(w[0], w[1], line)).fold(f64::INFINITY, f64::min)
}

fn polyline_ray_distance(path: &[Point], ray: &Ray) -> f64 {
    path.windows(2).map(|w| segment_ray_distance(w[0], w[1], ray)).fold(f64::INFINITY, f64::min)
}

/// `n` lines through pairs of uniform points in `[-1, 1]²`.
pub fn random_lines(n: usize, rng: &mut impl Rng) -> Vec<Line> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let q = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if p.dist(q) > 1e-3 {
            out.push(Line::through(p, q).expect("distinct points"));
        }
    }
    out
}

/// `n` rays with uniform apexes in `[-1, 1]²` and uniform directions.
pub fn random_rays(n: usize, rng: &mut impl Rng) -> Vec<Ray> {
    (0..n)
        .map(|_| {
            let apex = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            Ray::from_angle(apex, rng.gen_range(0.0..2.0 * PI)).expect("unit direction")
        })
        .collect()
}

/// `n` rays that all cross the segment `p q`: each apex lies off the segment
/// and its direction aims at a uniform point of the segment.
pub fn rays_crossing_segment(p: Point, q: Point, n: usize, rng: &mut impl Rng) -> Vec<Ray> {
    let len = p.dist(q);
    (0..n)
        .map(|_| loop {
            let target = p.add_scaled(q.sub(p), rng.gen_range(0.0..=1.0));
            let apex = target.add_scaled(Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), len);
            if let Ok(r) = Ray::new(apex, target.sub(apex)) {
                break r;
            }
        })
        .collect()
}

/// Rays with apexes on the segment `(0, 0)–(len, 0)` pointing into the upper
/// half-plane, the two extreme ones vertical. Any path must span the gap
/// between the vertical rays, so the segment is an optimal path of length
/// `len`.
pub fn collinear_apex_rays(len: f64, n: usize, rng: &mut impl Rng) -> Vec<Ray> {
    assert!(n >= 2 && len > 0.0);
    let up = Point::new(0.0, 1.0);
    let mut rays = vec![Ray::new(Point::new(0.0, 0.0), up).unwrap(), Ray::new(Point::new(len, 0.0), up).unwrap()];
    for _ in 2..n {
        let apex = Point::new(rng.gen_range(0.0..=len), 0.0);
        rays.push(Ray::from_angle(apex, rng.gen_range(0.05..PI - 0.05)).unwrap());
    }
    rays
}

/// Deterministic generator for test instances.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
