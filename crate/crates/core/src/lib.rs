//! Short tours and paths visiting collections of lines or rays.
//!
//! For each of a small set of frame orientations, a 4-variable LP over the
//! extents `(x1, x2, y1, y2)` finds the smallest axis-parallel rectangle that
//! meets every region. The best rectangle over all orientations gives:
//!
//! * a tour of lines or rays at most `(4/π)(1+ε) ≈ 1.28` times optimal
//!   ([`tour_lines`], [`tour_rays`]);
//! * a path of lines (three sides of a rectangle) at most `√2(1+ε) ≈ 1.42`
//!   times optimal ([`path_lines`]);
//! * a path of rays at most `√5(1+ε) ≈ 2.24` times optimal ([`path_rays`]).
//!
//! [`bounds`] evaluates the curve inequalities behind the path ratios and
//! [`oracles`] provides brute-force checks for all of the above.

pub mod bounds;
pub mod error;
pub mod geom;
pub mod io;
pub mod lines;
pub mod lp;
pub mod oracles;
pub mod rays;
pub mod svg;
pub mod sweep;

pub use error::{BoundsError, GeomError, LpError, OracleError, TspnError};
pub use geom::{Line, OrientedRect, Point, Polyline, Ray};
pub use lines::{build_lines_lp, path_lines, tour_lines};
pub use rays::{build_rays_lp, path_rays, tour_rays};
pub use sweep::{Mode, Objective, SweepConfig, TourResult};

use sweep::Neighborhoods;

/// An instance: lines or rays.
#[derive(Debug, Clone, PartialEq)]
pub enum RegionSet {
    Lines(Vec<Line>),
    Rays(Vec<Ray>),
}

impl RegionSet {
    pub fn len(&self) -> usize {
        match self {
            RegionSet::Lines(v) => v.len(),
            RegionSet::Rays(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Distance scale used for degeneracy thresholds.
    pub fn scale(&self) -> f64 {
        match self {
            RegionSet::Lines(v) => v.as_slice().scale(),
            RegionSet::Rays(v) => v.as_slice().scale(),
        }
    }

    /// Runs the algorithm for `mode` on these regions.
    pub fn solve(&self, mode: Mode, cfg: &SweepConfig) -> Result<TourResult, TspnError> {
        match (self, mode) {
            (RegionSet::Lines(v), Mode::Tour) => tour_lines(v, cfg),
            (RegionSet::Lines(v), Mode::Path) => path_lines(v, cfg),
            (RegionSet::Rays(v), Mode::Tour) => tour_rays(v, cfg),
            (RegionSet::Rays(v), Mode::Path) => path_rays(v, cfg),
        }
    }
}
