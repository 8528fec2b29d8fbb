//! Orientation sweep shared by the line and ray algorithms.
//!
//! Each swept orientation yields one small LP over the rectangle extents in
//! that frame. Orientations are processed in fixed-size chunks: chunks run in
//! parallel, and inside a chunk each solve is seeded with the basis of the
//! previous orientation. Chunking is independent of the thread count, so the
//! reduction (smallest metric, ties to the smallest index) is deterministic.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LpError, TspnError};
use crate::geom::{OrientedRect, Point};
use crate::lp::{Constraint, ConstraintSource, LpProblem, LpSolution, SolveReport};

pub const DEFAULT_TOUR_EPSILON: f64 = 1.0 / 200.0;
pub const DEFAULT_LINE_PATH_EPSILON: f64 = 1.0 / 250.0;
pub const DEFAULT_RAY_PATH_EPSILON: f64 = 1.0 / 1000.0;
/// Range of the randomized tour epsilon.
pub const RANDOM_EPSILON_RANGE: (f64, f64) = (1.0 / 300.0, 1.0 / 200.0);

/// A frame normal component below this counts as vertical for the nudge.
pub const NUDGE_THRESHOLD: f64 = 1e-9;
pub const NUDGE_STEP: f64 = 1e-7;
const MAX_NUDGES: usize = 8;

const CHUNK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Tour,
    Path,
}

/// What a per-orientation LP minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `2(x2 - x1) + 2(y2 - y1)`.
    Perimeter,
    /// `(x2 - x1) + 2(y2 - y1)`: three sides, the uncounted one horizontal.
    ThreeSides,
}

impl Objective {
    pub fn coefficients(self) -> [f64; 4] {
        match self {
            Objective::Perimeter => [-2.0, 2.0, -2.0, 2.0],
            Objective::ThreeSides => [-1.0, 1.0, -2.0, 2.0],
        }
    }

    /// The quantity compared across orientations for a rectangle.
    pub fn measure(self, rect: &OrientedRect) -> f64 {
        match self {
            Objective::Perimeter => rect.per(),
            Objective::ThreeSides => rect.per() - rect.long(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub epsilon: f64,
    pub m: usize,
    pub seed: u64,
}

impl SweepConfig {
    /// `m = ⌈π / 4ε⌉` orientations covering `[0, π/2)`.
    pub fn for_tour(epsilon: f64, seed: u64) -> Result<Self, TspnError> {
        check_epsilon(epsilon)?;
        Ok(Self { epsilon, m: (PI / (4.0 * epsilon)).ceil() as usize, seed })
    }

    /// `m = ⌈π / 2ε⌉` orientations covering `[0, π)`.
    pub fn for_path(epsilon: f64, seed: u64) -> Result<Self, TspnError> {
        check_epsilon(epsilon)?;
        Ok(Self { epsilon, m: (PI / (2.0 * epsilon)).ceil() as usize, seed })
    }

    /// Tour config with `ε` drawn uniformly from `[1/300, 1/200]`.
    pub fn randomized_tour(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let (lo, hi) = RANDOM_EPSILON_RANGE;
        let epsilon = rng.gen_range(lo..=hi);
        Self::for_tour(epsilon, seed).expect("epsilon range is valid")
    }

    pub fn angle(&self, i: usize) -> f64 {
        i as f64 * 2.0 * self.epsilon
    }

    pub fn angles(&self) -> Vec<f64> {
        (0..self.m).map(|i| self.angle(i)).collect()
    }

    pub fn validate(&self) -> Result<(), TspnError> {
        check_epsilon(self.epsilon)?;
        if self.m == 0 {
            return Err(TspnError::NoDirections);
        }
        Ok(())
    }
}

fn check_epsilon(epsilon: f64) -> Result<(), TspnError> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(TspnError::BadEpsilon(epsilon))
    }
}

/// A set of regions that can be turned into a per-orientation LP.
pub trait Neighborhoods: Sync {
    fn count(&self) -> usize;

    /// Whether some supporting line is within [`NUDGE_THRESHOLD`] of vertical
    /// in the frame at `angle`.
    fn near_vertical(&self, angle: f64) -> bool;

    /// The LP at `angle` with its constraints stored.
    fn build_lp(&self, angle: f64, objective: Objective) -> LpProblem;

    /// Solves the LP at `angle` on constraints generated on demand; the
    /// result equals solving [`Neighborhoods::build_lp`] with the same hints.
    fn solve_at(&self, angle: f64, objective: Objective, hints: &[usize]) -> Result<SolveReport, LpError>;

    /// Largest distance scale of the input, for degeneracy thresholds.
    fn scale(&self) -> f64;
}

/// Materializes a constraint source.
pub(crate) fn collect<S: ConstraintSource + ?Sized>(source: &S) -> Vec<Constraint> {
    let mut out = Vec::with_capacity(source.len());
    source.scan(|_, c| {
        out.push(*c);
        true
    });
    out
}

/// Shifts `angle` by [`NUDGE_STEP`] until no supporting line is vertical.
pub fn nudged_angle<N: Neighborhoods + ?Sized>(regions: &N, angle: f64) -> f64 {
    let mut a = angle;
    for _ in 0..MAX_NUDGES {
        if !regions.near_vertical(a) {
            break;
        }
        a += NUDGE_STEP;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleOutcome {
    pub index: usize,
    /// Angle actually used, after any nudge.
    pub angle: f64,
    pub rect: OrientedRect,
    pub lp_value: f64,
    pub measure: f64,
}

fn outcome_from(index: usize, angle: f64, solution: LpSolution, objective: Objective) -> Result<AngleOutcome, LpError> {
    match solution {
        LpSolution::Optimal { point, value } => {
            let rect = OrientedRect::from_lp_point(angle, point);
            Ok(AngleOutcome { index, angle, rect, lp_value: value, measure: objective.measure(&rect) })
        }
        LpSolution::Infeasible => Err(LpError::NumericallyIll(format!(
            "orientation {index} reported an infeasible intersecting-rectangle LP"
        ))),
    }
}

fn better(a: AngleOutcome, b: AngleOutcome) -> AngleOutcome {
    if b.measure < a.measure || (b.measure == a.measure && b.index < a.index) {
        b
    } else {
        a
    }
}

/// Solves every angle and returns the best outcome by [`Objective::measure`].
/// `nudge` applies the vertical-line nudge to each angle first.
pub fn best_over_angles<N: Neighborhoods + ?Sized>(
    regions: &N,
    angles: &[f64],
    objective: Objective,
    nudge: bool,
) -> Result<AngleOutcome, LpError> {
    let per_chunk: Vec<AngleOutcome> = angles
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(ci, chunk)| {
            let mut hints: Vec<usize> = Vec::new();
            let mut best: Option<AngleOutcome> = None;
            for (k, &a0) in chunk.iter().enumerate() {
                let angle = if nudge { nudged_angle(regions, a0) } else { a0 };
                let report = regions.solve_at(angle, objective, &hints)?;
                hints = report.basis;
                let out = outcome_from(ci * CHUNK + k, angle, report.solution, objective)?;
                best = Some(match best {
                    Some(b) => better(b, out),
                    None => out,
                });
            }
            Ok(best.expect("chunks are nonempty"))
        })
        .collect::<Result<_, LpError>>()?;
    per_chunk.into_iter().reduce(better).ok_or_else(|| LpError::Malformed("no orientations to sweep".into()))
}

/// Per-angle outcomes in order, for inspection and tests.
pub fn outcomes_over_angles<N: Neighborhoods + ?Sized>(
    regions: &N,
    angles: &[f64],
    objective: Objective,
    nudge: bool,
) -> Result<Vec<AngleOutcome>, LpError> {
    let chunks: Vec<Vec<AngleOutcome>> = angles
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(ci, chunk)| {
            let mut hints: Vec<usize> = Vec::new();
            chunk
                .iter()
                .enumerate()
                .map(|(k, &a0)| {
                    let angle = if nudge { nudged_angle(regions, a0) } else { a0 };
                    let report = regions.solve_at(angle, objective, &hints)?;
                    hints = report.basis;
                    outcome_from(ci * CHUNK + k, angle, report.solution, objective)
                })
                .collect()
        })
        .collect::<Result<_, LpError>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Output of one of the four algorithms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TourResult {
    pub rect: OrientedRect,
    /// `per(rect)` for tours and ray paths, `per(rect) − long(rect)` for line paths.
    pub objective_value: f64,
    pub mode: Mode,
    pub winning_angle_index: usize,
    pub winning_angle: f64,
    pub epsilon: f64,
    pub m: usize,
    /// Emitted path vertices for path modes.
    pub path: Option<Vec<Point>>,
    /// All regions pass through one point, so the optimum is zero.
    pub degenerate: bool,
    pub certificate: Option<crate::oracles::RatioCertificate>,
}

impl TourResult {
    pub(crate) fn from_outcome(
        best: AngleOutcome,
        cfg: &SweepConfig,
        mode: Mode,
        objective: Objective,
        scale: f64,
    ) -> Self {
        let objective_value = objective.measure(&best.rect);
        Self {
            rect: best.rect,
            objective_value,
            mode,
            winning_angle_index: best.index,
            winning_angle: best.angle,
            epsilon: cfg.epsilon,
            m: cfg.m,
            path: None,
            degenerate: objective_value <= 1e-9 * (1.0 + scale),
            certificate: None,
        }
    }
}

/// Seeded shuffle of the input, so constraint order is random for the LPs.
pub(crate) fn shuffled<T: Clone>(items: &[T], seed: u64) -> Vec<T> {
    use rand::seq::SliceRandom;
    let mut out = items.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.shuffle(&mut rng);
    out
}
