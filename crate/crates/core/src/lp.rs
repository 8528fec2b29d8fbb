//! Four-variable linear programming over rectangle extents.
//!
//! Variables are ordered `v = (x1, x2, y1, y2)`. A problem minimizes
//! `objective · v` subject to constraints `g · v ≥ h`. The solver is a
//! randomized incremental (Seidel-style) method: constraints are added one at
//! a time and, whenever the current optimum violates the new constraint, the
//! optimum is recomputed on that constraint's hyperplane by recursing one
//! dimension down over the constraints seen so far. Expected time is linear in
//! the number of constraints when they arrive in random order.
//!
//! Ties on the optimal face are broken lexicographically on `(x1, y1, x2, y2)`
//! so the returned vertex is unique. The recursion is kept bounded by an
//! implicit box `|v_k| ≤ M`; a box that still binds after enlargement means
//! the objective is unbounded.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::LpError;

pub const X1: usize = 0;
pub const X2: usize = 1;
pub const Y1: usize = 2;
pub const Y2: usize = 3;

/// Tie-break order of the variables.
const LEX_ORDER: [usize; 4] = [X1, Y1, X2, Y2];

/// Relative slack accepted while solving.
const SOLVE_TOL: f64 = 1e-10;
/// Relative slack accepted by the post-solve feasibility audit.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Projected coefficients below this fraction of their term magnitude are zero.
const ZERO_REL: f64 = 1e-12;

const BOX_SCALE: f64 = 1e4;
const BOX_GROWTH: f64 = 1e3;
const BOX_ATTEMPTS: usize = 4;

/// `coeffs · v ≥ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constraint {
    pub coeffs: [f64; 4],
    pub rhs: f64,
}

impl Constraint {
    pub fn new(coeffs: [f64; 4], rhs: f64) -> Self {
        Self { coeffs, rhs }
    }

    /// `x1 ≤ x2`.
    pub fn width_nonnegative() -> Self {
        Self::new([-1.0, 1.0, 0.0, 0.0], 0.0)
    }

    /// `y1 ≤ y2`.
    pub fn height_nonnegative() -> Self {
        Self::new([0.0, 0.0, -1.0, 1.0], 0.0)
    }

    #[inline]
    pub fn lhs(&self, v: &[f64; 4]) -> f64 {
        self.coeffs[0] * v[0] + self.coeffs[1] * v[1] + self.coeffs[2] * v[2] + self.coeffs[3] * v[3]
    }

    pub fn slack(&self, v: &[f64; 4]) -> f64 {
        self.lhs(v) - self.rhs
    }

    /// Scale of the terms in `coeffs · v - rhs`, used for relative tolerances.
    #[inline]
    fn magnitude(&self, v: &[f64; 4]) -> f64 {
        1.0 + self.rhs.abs()
            + (self.coeffs[0] * v[0]).abs()
            + (self.coeffs[1] * v[1]).abs()
            + (self.coeffs[2] * v[2]).abs()
            + (self.coeffs[3] * v[3]).abs()
    }

    #[inline]
    fn holds(&self, v: &[f64; 4], rel: f64) -> bool {
        self.lhs(v) >= self.rhs - rel * self.magnitude(v)
    }
}

/// Constraints addressed by index, either stored or generated on demand.
/// Generating them avoids holding the whole list in memory for large inputs.
pub trait ConstraintSource {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, i: usize) -> Constraint;

    /// Visits every constraint in index order while `f` returns `true`.
    fn scan(&self, f: impl FnMut(usize, &Constraint) -> bool);
}

impl ConstraintSource for [Constraint] {
    fn len(&self) -> usize {
        <[Constraint]>::len(self)
    }

    fn get(&self, i: usize) -> Constraint {
        self[i]
    }

    fn scan(&self, mut f: impl FnMut(usize, &Constraint) -> bool) {
        for (i, c) in self.iter().enumerate() {
            if !f(i, c) {
                return;
            }
        }
    }
}

/// Validates the constraints, and returns the largest `|h| / ‖g‖∞` (at
/// least 1): the distance scale that sizes the solver's box.
fn constraints_scale<S: ConstraintSource + ?Sized>(constraints: &S) -> Result<f64, LpError> {
    if constraints.len() < 2 {
        return Err(LpError::Malformed(format!("expected at least 2 constraints, got {}", constraints.len())));
    }
    let mut scale = 1.0f64;
    let mut bad = None;
    constraints.scan(|i, c| {
        if !(c.rhs.is_finite() && c.coeffs.iter().all(|g| g.is_finite())) {
            bad = Some(i);
            return false;
        }
        let g = c.coeffs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if g > 0.0 {
            scale = scale.max(c.rhs.abs() / g);
        }
        true
    });
    match bad {
        Some(i) => Err(LpError::Malformed(format!("constraint {i} has a non-finite coefficient"))),
        None => Ok(scale),
    }
}

fn check_objective(objective: &[f64; 4]) -> Result<(), LpError> {
    if objective.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(LpError::Malformed("objective has a non-finite coefficient".into()))
    }
}

fn max_violation_of<S: ConstraintSource + ?Sized>(constraints: &S, v: &[f64; 4]) -> f64 {
    let mut worst = 0.0f64;
    constraints.scan(|_, c| {
        worst = worst.max(-c.slack(v) / c.magnitude(v));
        true
    });
    worst
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: [f64; 4],
    pub constraints: Vec<Constraint>,
}

impl LpProblem {
    pub fn new(objective: [f64; 4], constraints: Vec<Constraint>) -> Result<Self, LpError> {
        let p = Self { objective, constraints };
        p.validate()?;
        Ok(p)
    }

    /// A problem holding only `x1 ≤ x2` and `y1 ≤ y2`.
    pub fn with_structural(objective: [f64; 4]) -> Self {
        Self { objective, constraints: vec![Constraint::width_nonnegative(), Constraint::height_nonnegative()] }
    }

    pub fn validate(&self) -> Result<(), LpError> {
        check_objective(&self.objective)?;
        constraints_scale(self.constraints.as_slice()).map(|_| ())
    }

    pub fn value_at(&self, v: &[f64; 4]) -> f64 {
        dot(&self.objective, v)
    }

    /// Largest relative violation `max(0, -(slack) / (1 + |h| + Σ|g_k v_k|))`.
    pub fn max_violation(&self, v: &[f64; 4]) -> f64 {
        max_violation_of(self.constraints.as_slice(), v)
    }

    /// Indices of constraints tight at `v` within relative slack `rel`.
    pub fn tight_constraints(&self, v: &[f64; 4], rel: f64) -> Vec<usize> {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.slack(v).abs() <= rel * c.magnitude(v))
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpSolution {
    Optimal { point: [f64; 4], value: f64 },
    Infeasible,
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal { .. } => LpStatus::Optimal,
            LpSolution::Infeasible => LpStatus::Infeasible,
        }
    }

    pub fn point(&self) -> Option<[f64; 4]> {
        match self {
            LpSolution::Optimal { point, .. } => Some(*point),
            LpSolution::Infeasible => None,
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            LpSolution::Optimal { value, .. } => Some(*value),
            LpSolution::Infeasible => None,
        }
    }
}

/// A solution plus the constraints whose hyperplanes pin the optimal vertex.
/// The basis is what a caller can feed back as hints for a nearby problem.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solution: LpSolution,
    pub basis: Vec<usize>,
}

/// Shuffles a copy of the constraints with `seed`, then solves.
pub fn solve(problem: &LpProblem, seed: u64) -> Result<LpSolution, LpError> {
    problem.validate()?;
    let mut shuffled = problem.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shuffled.constraints.shuffle(&mut rng);
    solve_in_order(&shuffled)
}

/// Solves with constraints processed in their stored order. Expected linear
/// time holds when that order is random.
pub fn solve_in_order(problem: &LpProblem) -> Result<LpSolution, LpError> {
    solve_with_hints(problem, &[]).map(|r| r.solution)
}

/// Like [`solve_in_order`], but the constraints at `hints` are processed
/// first. Hints from the basis of a similar problem make most later
/// constraints already satisfied. The optimum does not depend on the hints.
///
/// Large problems are solved on a working set: the hints plus a prefix of the
/// constraints are solved exactly, every constraint violated by that optimum
/// joins the set, and this repeats until nothing is violated. With good hints
/// a single pass over the constraints confirms the optimum.
pub fn solve_with_hints(problem: &LpProblem, hints: &[usize]) -> Result<SolveReport, LpError> {
    solve_source(problem.objective, problem.constraints.as_slice(), hints)
}

/// [`solve_with_hints`] over constraints that need not be stored.
pub fn solve_source<S: ConstraintSource + ?Sized>(
    objective: [f64; 4],
    constraints: &S,
    hints: &[usize],
) -> Result<SolveReport, LpError> {
    check_objective(&objective)?;
    let scale = constraints_scale(constraints)?;
    let n = constraints.len();
    let mut working = WorkingSet::new(n);
    for &i in hints {
        if i < n {
            working.insert(i);
        }
    }
    for i in 0..n.min(SAMPLE) {
        working.insert(i);
    }

    let objectives = lex_objectives(objective);
    let mut bound = BOX_SCALE * scale;
    let mut previous: Option<(SolveReport, f64)> = None;
    for _ in 0..BOX_ATTEMPTS {
        let ctx = Context { objectives, bound };
        let Some(found) = solve_working(constraints, &ctx, &mut working)? else {
            return Ok(SolveReport { solution: LpSolution::Infeasible, basis: Vec::new() });
        };
        let point = found.solution.point().expect("optimal");
        let value = dot(&objective, &point);
        let pinned = point.iter().any(|x| x.abs() >= bound * (1.0 - 1e-6));
        if let Some((prev, prev_value)) = previous.take() {
            if (prev_value - value).abs() <= 1e-9 * (1.0 + prev_value.abs()) {
                return Ok(prev);
            }
        }
        if !pinned {
            return Ok(found);
        }
        previous = Some((found, value));
        bound *= BOX_GROWTH;
    }
    Err(LpError::UnboundedObjective)
}

/// Initial working-set size taken from the front of the constraint list.
const SAMPLE: usize = 512;
/// Most violators added per round.
const MAX_ADDED: usize = 4096;
const MAX_ROUNDS: usize = 64;

struct WorkingSet {
    order: Vec<usize>,
    member: Vec<bool>,
}

impl WorkingSet {
    fn new(n: usize) -> Self {
        Self { order: Vec::new(), member: vec![false; n] }
    }

    fn insert(&mut self, i: usize) -> bool {
        if self.member[i] {
            return false;
        }
        self.member[i] = true;
        self.order.push(i);
        true
    }
}

/// Optimum inside the current box, or `None` when infeasible.
fn solve_working<S: ConstraintSource + ?Sized>(
    constraints: &S,
    ctx: &Context,
    working: &mut WorkingSet,
) -> Result<Option<SolveReport>, LpError> {
    for _ in 0..MAX_ROUNDS {
        let subset: Vec<Constraint> = working.order.iter().map(|&i| constraints.get(i)).collect();
        // Infeasible on a subset means infeasible overall.
        let Some(found) = solve_level(ctx, &Flat::full(), &[&subset]) else {
            return Ok(None);
        };
        let mut added = 0;
        let mut stuck = false;
        constraints.scan(|i, c| {
            if !c.holds(&found.point, SOLVE_TOL) {
                if working.insert(i) {
                    added += 1;
                } else {
                    stuck = true;
                }
            }
            added < MAX_ADDED
        });
        if stuck && added == 0 {
            let violation = max_violation_of(constraints, &found.point);
            if violation > FEASIBILITY_TOL {
                return Err(LpError::NumericallyIll(format!(
                    "optimum violates a constraint by {violation:e} (relative)"
                )));
            }
        } else if added > 0 {
            continue;
        }
        let basis = found.basis.iter().filter_map(|&addr| index_of(&subset, addr).map(|k| working.order[k])).collect();
        return Ok(Some(SolveReport {
            solution: LpSolution::Optimal { point: found.point, value: dot(&ctx.objectives[0], &found.point) },
            basis,
        }));
    }
    Err(LpError::NumericallyIll(format!("working set did not converge in {MAX_ROUNDS} rounds")))
}

fn index_of(slice: &[Constraint], addr: usize) -> Option<usize> {
    let base = slice.as_ptr() as usize;
    let size = std::mem::size_of::<Constraint>();
    (addr >= base && addr < base + slice.len() * size).then(|| (addr - base) / size)
}

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn lex_objectives(c: [f64; 4]) -> [[f64; 4]; 5] {
    let mut out = [[0.0; 4]; 5];
    out[0] = c;
    for (k, &var) in LEX_ORDER.iter().enumerate() {
        out[k + 1][var] = 1.0;
    }
    out
}

struct Context {
    objectives: [[f64; 4]; 5],
    bound: f64,
}

impl Context {
    /// +1 when increasing along `dir` worsens the lexicographic objective.
    fn preferred_sign(&self, dir: &[f64; 4]) -> f64 {
        for ob in &self.objectives {
            let coef: f64 = (0..4).map(|k| ob[k] * dir[k]).sum();
            let mag: f64 = (0..4).map(|k| (ob[k] * dir[k]).abs()).sum();
            if mag > 0.0 && coef.abs() > ZERO_REL * mag {
                return coef.signum();
            }
        }
        1.0
    }
}

/// Affine subspace `origin + Σ u_j basis_j`. Each `basis_j` has a 1 in slot
/// `free[j]` and 0 in the other free slots; `origin` is 0 in free slots, so
/// `u_j` equals the original variable `free[j]`.
#[derive(Clone)]
struct Flat {
    origin: [f64; 4],
    basis: [[f64; 4]; 4],
    free: [usize; 4],
    dim: usize,
}

impl Flat {
    fn full() -> Self {
        let mut basis = [[0.0; 4]; 4];
        for (k, b) in basis.iter_mut().enumerate() {
            b[k] = 1.0;
        }
        Self { origin: [0.0; 4], basis, free: [0, 1, 2, 3], dim: 4 }
    }

    fn point(&self, u: &[f64]) -> [f64; 4] {
        let mut v = self.origin;
        for j in 0..self.dim {
            for k in 0..4 {
                v[k] += u[j] * self.basis[j][k];
            }
        }
        v
    }

    /// Restrict to the hyperplane `c.coeffs · v = c.rhs`. Returns the new flat
    /// and the eliminated original variable, or `None` when the constraint
    /// is constant on this flat.
    fn restrict(&self, c: &Constraint) -> Option<(Flat, usize)> {
        let mut a = [0.0; 4];
        let mut mag = 0.0f64;
        for j in 0..self.dim {
            a[j] = (0..4).map(|k| c.coeffs[k] * self.basis[j][k]).sum();
            mag = mag.max((0..4).map(|k| (c.coeffs[k] * self.basis[j][k]).abs()).sum());
        }
        let p = (0..self.dim).max_by(|&i, &j| a[i].abs().total_cmp(&a[j].abs()))?;
        if mag == 0.0 || a[p].abs() <= ZERO_REL * mag {
            return None;
        }
        let r = c.rhs - (0..4).map(|k| c.coeffs[k] * self.origin[k]).sum::<f64>();
        let bp = self.basis[p];
        let mut origin = self.origin;
        for k in 0..4 {
            origin[k] += (r / a[p]) * bp[k];
        }
        let mut sub = Flat { origin, basis: [[0.0; 4]; 4], free: [0; 4], dim: self.dim - 1 };
        let mut n = 0;
        for j in 0..self.dim {
            if j == p {
                continue;
            }
            let f = a[j] / a[p];
            for k in 0..4 {
                sub.basis[n][k] = self.basis[j][k] - f * bp[k];
            }
            // Exact zeros in the other free slots keep `u_j = v[free[j]]`.
            for l in 0..self.dim {
                if l != j && l != p {
                    sub.basis[n][self.free[l]] = 0.0;
                }
            }
            sub.basis[n][self.free[j]] = 1.0;
            sub.free[n] = self.free[j];
            n += 1;
        }
        for j in 0..sub.dim {
            sub.origin[sub.free[j]] = 0.0;
        }
        Some((sub, self.free[p]))
    }
}

struct LevelSolution {
    point: [f64; 4],
    /// Addresses of the constraints whose hyperplanes define the point.
    basis: Vec<usize>,
}

fn box_pair(var: usize, bound: f64) -> [Constraint; 2] {
    let mut lo = [0.0; 4];
    lo[var] = 1.0;
    let mut hi = [0.0; 4];
    hi[var] = -1.0;
    [Constraint::new(lo, -bound), Constraint::new(hi, -bound)]
}

fn solve_level(ctx: &Context, flat: &Flat, parts: &[&[Constraint]]) -> Option<LevelSolution> {
    if flat.dim == 1 {
        return solve_line(ctx, flat, parts);
    }
    let mut u = [0.0; 4];
    for j in 0..flat.dim {
        u[j] = -ctx.preferred_sign(&flat.basis[j]) * ctx.bound;
    }
    let mut current = LevelSolution { point: flat.point(&u[..flat.dim]), basis: Vec::new() };

    for (pi, part) in parts.iter().enumerate() {
        for (ci, c) in part.iter().enumerate() {
            if c.holds(&current.point, SOLVE_TOL) {
                continue;
            }
            let (sub, eliminated) = flat.restrict(c)?;
            let extras = box_pair(eliminated, ctx.bound);
            let mut sub_parts: Vec<&[Constraint]> = Vec::with_capacity(pi + 2);
            sub_parts.push(&extras);
            sub_parts.extend_from_slice(&parts[..pi]);
            sub_parts.push(&part[..ci]);
            let mut found = solve_level(ctx, &sub, &sub_parts)?;
            found.basis.push(c as *const Constraint as usize);
            current = found;
        }
    }
    Some(current)
}

/// One free variable `t ∈ [-M, M]`: intersect the bounds, then pick the
/// preferred end.
fn solve_line(ctx: &Context, flat: &Flat, parts: &[&[Constraint]]) -> Option<LevelSolution> {
    let dir = flat.basis[0];
    let (mut lo, mut hi) = (-ctx.bound, ctx.bound);
    let (mut lo_by, mut hi_by): (Option<&Constraint>, Option<&Constraint>) = (None, None);
    for part in parts {
        for c in part.iter() {
            let a: f64 = (0..4).map(|k| c.coeffs[k] * dir[k]).sum();
            let mag: f64 = (0..4).map(|k| (c.coeffs[k] * dir[k]).abs()).sum();
            if mag == 0.0 || a.abs() <= ZERO_REL * mag {
                // constant along the flat
                if !c.holds(&flat.origin, SOLVE_TOL) {
                    return None;
                }
                continue;
            }
            let r = c.rhs - (0..4).map(|k| c.coeffs[k] * flat.origin[k]).sum::<f64>();
            let t = r / a;
            if a > 0.0 {
                if t > lo {
                    lo = t;
                    lo_by = Some(c);
                }
            } else if t < hi {
                hi = t;
                hi_by = Some(c);
            }
        }
    }
    if lo > hi {
        let mid = 0.5 * (lo + hi);
        let p = flat.point(&[mid]);
        let ok = [lo_by, hi_by].iter().flatten().all(|c| c.holds(&p, SOLVE_TOL));
        if !ok {
            return None;
        }
        let basis = [lo_by, hi_by].iter().flatten().map(|c| *c as *const Constraint as usize).collect();
        return Some(LevelSolution { point: p, basis });
    }
    let (t, by) = if ctx.preferred_sign(&dir) > 0.0 { (lo, lo_by) } else { (hi, hi_by) };
    Some(LevelSolution {
        point: flat.point(&[t]),
        basis: by.map(|c| c as *const Constraint as usize).into_iter().collect(),
    })
}
