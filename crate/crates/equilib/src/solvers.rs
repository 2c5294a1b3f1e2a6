//! Brute-force solution sets for the equilibrium problem and its convex
//! feasibility dual, Ky Fan point extraction, coercivity checks for
//! unbounded domains, and the truncation-based existence pipelines.
//!
//! Everything here works on sampled value tables. The solution-set
//! operations are exhaustive scans; the coercivity checks replace the
//! sequence quantifiers of the continuous conditions with direction-wise
//! tail conditions over grid points, which is the finitely checkable
//! reading: a pass certifies the condition on every grid-representable
//! escaping sequence, a fail comes with the defeating trajectory.

use serde::Serialize;
use thiserror::Error;

use crate::bifunction::{
    regularize_with, sample_matrix, BifunctionError, BifunctionSpec, ValueTable,
    DEFAULT_REFINEMENT,
};
use crate::envelope::{shape_check, EnvelopeKind, SampledFunction, ShapeKind};
use crate::grid::{ExtendedReal, Grid, GridError, Interval, TruncationSchedule};
use crate::properties::{
    check_monotonicity, check_properly_quasimonotone, check_upper_sign, MonotonicityKind,
    ProperlyQuasimonotoneMethod, Scope,
};
use crate::verdict::Tolerance;

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Bifunction(#[from] BifunctionError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("local scope needs a positive finite radius, got {radius}")]
    BadRadius { radius: f64 },
    #[error("the domain {domain} is bounded; escape analysis needs an unbounded domain")]
    BoundedDomain { domain: Interval },
    #[error("need at least {needed} truncation levels, got {got}")]
    ScheduleTooShort { needed: usize, got: usize },
    #[error("condition C3 steps by 1, which is not a multiple of the grid spacing {spacing}")]
    SpacingIncompatible { spacing: f64 },
}

/// The indices of a grid that solve one of the pointwise problems, sorted
/// ascending. Every index re-verifies its defining inequality against the
/// table it was computed from.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    grid: Grid,
    indices: Vec<usize>,
    tolerance: Tolerance,
}

/// Serializes `points` alongside `indices` so reports are readable without
/// reconstructing the grid.
impl Serialize for SolutionSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("SolutionSet", 4)?;
        s.serialize_field("grid", &self.grid)?;
        s.serialize_field("indices", &self.indices)?;
        s.serialize_field("points", &self.points())?;
        s.serialize_field("tolerance", &self.tolerance)?;
        s.end()
    }
}

impl SolutionSet {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn points(&self) -> Vec<f64> {
        self.indices.iter().map(|&i| self.grid.point(i)).collect()
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Equilibrium points: indices `i` whose whole row is nonnegative, i.e.
/// `min_j table[i][j] >= -tol`.
pub fn solve_ep(table: &ValueTable, tol: Tolerance) -> SolutionSet {
    let indices = (0..table.count())
        .filter(|&i| table.row(i).iter().all(|&v| tol.ge_zero(v)))
        .collect();
    SolutionSet {
        grid: table.grid().clone(),
        indices,
        tolerance: tol,
    }
}

/// Feasibility points: indices `j` whose whole column is nonpositive, i.e.
/// `max_i table[i][j] <= tol`. Local scope restricts the column scan to
/// rows within the radius, so the global set is contained in every local
/// one.
pub fn solve_cfp(
    table: &ValueTable,
    scope: Scope,
    tol: Tolerance,
) -> Result<SolutionSet, SolverError> {
    let radius = match scope {
        Scope::Global => None,
        Scope::Local(r) => {
            if !(r > 0.0 && r.is_finite()) {
                return Err(SolverError::BadRadius { radius: r });
            }
            Some(r)
        }
    };
    let n = table.count();
    let grid = table.grid();
    let indices = (0..n)
        .filter(|&j| {
            (0..n).all(|i| {
                if let Some(r) = radius {
                    if (grid.point(i) - grid.point(j)).abs() > r + tol.slack {
                        return true;
                    }
                }
                tol.le_zero(table.value(i, j))
            })
        })
        .collect();
    Ok(SolutionSet {
        grid: grid.clone(),
        indices,
        tolerance: tol,
    })
}

/// The row whose worst column value is largest, with the max-min floor and
/// the comparison against the diagonal minimum.
///
/// On a convex domain the floor is guaranteed to reach the diagonal
/// minimum when rows are quasiconvex; a finite grid is not convex, so the
/// verdict can fail even for quasiconvex rows and is reported rather than
/// assumed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KyFanPoint {
    pub index: usize,
    pub point: f64,
    pub floor: f64,
    pub diagonal_min: f64,
    pub passed: bool,
    pub tolerance: Tolerance,
}

pub fn ky_fan_point(table: &ValueTable, tol: Tolerance) -> KyFanPoint {
    let row_floor = |i: usize| {
        table
            .row(i)
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    };
    let mut index = 0;
    let mut floor = row_floor(0);
    for i in 1..table.count() {
        let candidate = row_floor(i);
        if candidate > floor {
            index = i;
            floor = candidate;
        }
    }
    let diagonal_min = (0..table.count())
        .map(|i| table.value(i, i))
        .fold(f64::INFINITY, f64::min);
    KyFanPoint {
        index,
        point: table.grid().point(index),
        floor,
        diagonal_min,
        passed: tol.ge_zero(floor - diagonal_min),
        tolerance: tol,
    }
}

/// The three escape conditions, strongest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoercivityKind {
    C1,
    C2,
    C3,
}

impl CoercivityKind {
    pub const ALL: [CoercivityKind; 3] = [
        CoercivityKind::C1,
        CoercivityKind::C2,
        CoercivityKind::C3,
    ];
}

/// An unbounded end of the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Left => -1.0,
            Direction::Right => 1.0,
        }
    }
}

/// One level of a failed tail scan: the tail point that defeated the best
/// available anchor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailFailure {
    pub level: u32,
    pub x: f64,
    pub best_u: f64,
    pub best_value: f64,
}

/// Verdict for one escape direction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectionReport {
    pub direction: Direction,
    pub passed: bool,
    /// The anchor `u` certifying the condition (C1 only; C2/C3 pick `u`
    /// per tail point).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    /// The level `n_0` past which the tail condition holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n0: Option<u32>,
    /// C3 only: whether the unit-step premise held. A false premise passes
    /// the conditional vacuously.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub premise_holds: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<TailFailure>,
}

/// Direction-wise coercivity verdicts for one condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoercivityReport {
    pub kind: CoercivityKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regularization: Option<EnvelopeKind>,
    pub passed: bool,
    pub directions: Vec<DirectionReport>,
}

/// Checks one of the escape conditions on the finest truncation of an
/// unbounded domain, optionally after row regularization.
///
/// Finite semantics, per escape direction:
/// - C1: one anchor `u` from the *coarsest* truncation grid and a level
///   `n_0` such that `f(x, u) <= tol` for every finest-grid `x` beyond
///   `n_0`. Restricting `u` to the coarsest truncation is what encodes
///   "`u` stays fixed while `x` escapes"; anchors near the finest boundary
///   could otherwise satisfy any tail by saturation.
/// - C2: a level `n_0` such that every finest-grid `x` beyond it admits
///   some `u` with `|u| < |x|` (float-safe: `|u| <= |x| - h/2`) and
///   `f(x, u) <= tol`.
/// - C3: if the unit-step premise `f(y, y + sigma) <= tol` holds for every
///   grid `y` (the grid image of a weakly converging escape sequence),
///   the C2-style tail condition is required; a false premise passes
///   vacuously.
pub fn check_coercivity(
    spec: &BifunctionSpec,
    schedule: &TruncationSchedule,
    kind: CoercivityKind,
    regularization: Option<EnvelopeKind>,
    tol: Tolerance,
) -> Result<CoercivityReport, SolverError> {
    let domain = spec.domain();
    if domain.is_bounded() {
        return Err(SolverError::BoundedDomain { domain });
    }
    let levels: Vec<u32> = schedule.levels().collect();
    if levels.len() < 3 {
        return Err(SolverError::ScheduleTooShort {
            needed: 3,
            got: levels.len(),
        });
    }
    let h = schedule.spacing();
    let finest = schedule.truncation(*levels.last().expect("nonempty"))?;
    let grid = finest.grid().clone();
    let table = sample_matrix(spec, &grid)?;
    let table = match regularization {
        Some(envelope) => regularize_with(&table, envelope, Some(spec), DEFAULT_REFINEMENT)?,
        None => table,
    };
    let coarsest = schedule.truncation(levels[0])?;
    let mut anchors: Vec<usize> = coarsest
        .grid()
        .points()
        .iter()
        .map(|&u| {
            grid.index_of(u)
                .expect("coarse lattice points persist on the finest grid")
        })
        .collect();
    anchors.sort_by(|&a, &b| {
        let (ua, ub) = (grid.point(a), grid.point(b));
        (ua.abs(), ua)
            .partial_cmp(&(ub.abs(), ub))
            .expect("grid points are finite")
    });

    let mut directions = Vec::new();
    if matches!(domain.lower(), ExtendedReal::NegInf) {
        directions.push(Direction::Left);
    }
    if matches!(domain.upper(), ExtendedReal::PosInf) {
        directions.push(Direction::Right);
    }

    let reports: Vec<DirectionReport> = directions
        .into_iter()
        .map(|direction| {
            direction_report(direction, kind, &table, &grid, &anchors, &levels, h, tol)
        })
        .collect::<Result<_, _>>()?;
    let passed = reports.iter().all(|r| r.passed);
    Ok(CoercivityReport {
        kind,
        regularization,
        passed,
        directions: reports,
    })
}

/// Tail of the finest grid beyond level `n0` in a direction, ordered by
/// increasing distance from the origin.
fn tail_indices(grid: &Grid, direction: Direction, n0: u32, h: f64) -> Vec<usize> {
    let sign = direction.sign();
    let bound = n0 as f64 + h / 2.0;
    let mut tail: Vec<usize> = (0..grid.count())
        .filter(|&i| sign * grid.point(i) > bound)
        .collect();
    tail.sort_by(|&a, &b| {
        grid.point(a)
            .abs()
            .partial_cmp(&grid.point(b).abs())
            .expect("grid points are finite")
    });
    tail
}

#[allow(clippy::too_many_arguments)]
fn direction_report(
    direction: Direction,
    kind: CoercivityKind,
    table: &ValueTable,
    grid: &Grid,
    anchors: &[usize],
    levels: &[u32],
    h: f64,
    tol: Tolerance,
) -> Result<DirectionReport, SolverError> {
    // Tails past the last level are empty; a vacuous pass there would
    // certify nothing, so n_0 ranges over levels with a nonempty tail.
    let eligible: Vec<u32> = levels
        .iter()
        .copied()
        .filter(|&n0| n0 < *levels.last().expect("nonempty"))
        .collect();

    let report = |passed, u, n0, premise, failures| DirectionReport {
        direction,
        passed,
        u,
        n0,
        premise_holds: premise,
        failures,
    };

    match kind {
        CoercivityKind::C1 => {
            for &n0 in &eligible {
                let tail = tail_indices(grid, direction, n0, h);
                for &u in anchors {
                    if tail.iter().all(|&x| tol.le_zero(table.value(x, u))) {
                        return Ok(report(true, Some(grid.point(u)), Some(n0), None, Vec::new()));
                    }
                }
            }
            let failures = eligible
                .iter()
                .map(|&n0| {
                    let tail = tail_indices(grid, direction, n0, h);
                    anchors
                        .iter()
                        .map(|&u| {
                            let (x, value) = tail
                                .iter()
                                .map(|&x| (x, table.value(x, u)))
                                .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
                                .expect("eligible levels have nonempty tails");
                            TailFailure {
                                level: n0,
                                x: grid.point(x),
                                best_u: grid.point(u),
                                best_value: value,
                            }
                        })
                        .min_by(|a, b| {
                            a.best_value
                                .partial_cmp(&b.best_value)
                                .expect("finite")
                        })
                        .expect("anchor list is nonempty")
                })
                .collect();
            Ok(report(false, None, None, None, failures))
        }
        CoercivityKind::C2 => Ok(tail_scan(direction, table, grid, &eligible, h, tol, None)),
        CoercivityKind::C3 => {
            let steps = 1.0 / h;
            if (steps.round() * h - 1.0).abs() > 1e-9 {
                return Err(SolverError::SpacingIncompatible { spacing: h });
            }
            let step = steps.round() as usize;
            let sign = direction.sign();
            // Premise: every grid y whose unit step y + sigma stays on the
            // grid satisfies f(y, y + sigma) <= tol.
            let premise = (0..grid.count()).all(|y| {
                let target = if sign > 0.0 { y.checked_add(step) } else { y.checked_sub(step) };
                match target {
                    Some(t) if t < grid.count() => tol.le_zero(table.value(y, t)),
                    _ => true,
                }
            });
            if !premise {
                return Ok(DirectionReport {
                    direction,
                    passed: true,
                    u: None,
                    n0: None,
                    premise_holds: Some(false),
                    failures: Vec::new(),
                });
            }
            Ok(tail_scan(
                direction,
                table,
                grid,
                &eligible,
                h,
                tol,
                Some(true),
            ))
        }
    }
}

/// The shared C2-style scan: beyond some level, every tail point must see
/// a nonpositive value at an anchor strictly closer to the origin.
fn tail_scan(
    direction: Direction,
    table: &ValueTable,
    grid: &Grid,
    eligible: &[u32],
    h: f64,
    tol: Tolerance,
    premise: Option<bool>,
) -> DirectionReport {
    // Best admissible anchor for one tail point: minimal value over
    // |u| <= |x| - h/2.
    let best_anchor = |x: usize| -> (f64, f64) {
        let limit = grid.point(x).abs() - h / 2.0;
        (0..grid.count())
            .filter(|&u| grid.point(u).abs() <= limit)
            .map(|u| (grid.point(u), table.value(x, u)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
            .expect("the origin-side anchor always qualifies")
    };
    let mut passing = None;
    let mut failures = Vec::new();
    for &n0 in eligible {
        let tail = tail_indices(grid, direction, n0, h);
        let defeat = tail.iter().find(|&&x| !tol.le_zero(best_anchor(x).1));
        match defeat {
            None => {
                passing = Some(n0);
                break;
            }
            Some(&x) => {
                let (best_u, best_value) = best_anchor(x);
                failures.push(TailFailure {
                    level: n0,
                    x: grid.point(x),
                    best_u,
                    best_value,
                });
            }
        }
    }
    DirectionReport {
        direction,
        passed: passing.is_some(),
        u: None,
        n0: passing,
        premise_holds: premise,
        failures: if passing.is_some() { Vec::new() } else { failures },
    }
}

/// Which existence argument the truncation pipeline follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PipelineVariant {
    /// Equilibrium points of the quasiconvex-regularized truncations plus
    /// the interior-escape step.
    C2,
    /// Feasibility points of the regularized truncations transferred to
    /// equilibrium points through the upper sign property.
    C3,
}

/// What one truncation level contributed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelLog {
    pub level: u32,
    /// Solution indices of the regularized problem on this level's grid
    /// (equilibrium points for C2, feasibility points for C3).
    pub candidates: Vec<usize>,
    /// The candidates that avoid the artificial truncation boundary.
    pub interior: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasimonotone: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properly_quasimonotone: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_sign: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semistrict_rows: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum PipelineOutcome {
    /// An equilibrium point that re-verified on the finest truncation of
    /// the original (unregularized) table.
    Solution { point: f64, index: usize, level: u32 },
    /// No level produced a verifiable interior solution; the matching
    /// coercivity diagnosis explains why the escape argument broke.
    Exhausted {
        coercivity: Option<CoercivityReport>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineResult {
    pub variant: PipelineVariant,
    #[serde(flatten)]
    pub outcome: PipelineOutcome,
    pub levels: Vec<LevelLog>,
}

impl PipelineResult {
    pub fn solution(&self) -> Option<(f64, u32)> {
        match self.outcome {
            PipelineOutcome::Solution { point, level, .. } => Some((point, level)),
            PipelineOutcome::Exhausted { .. } => None,
        }
    }
}

/// Runs the truncation existence argument on an unbounded domain.
///
/// Per level: sample, quasiconvex-regularize the rows, and solve the
/// level problem. A candidate must avoid the artificial truncation
/// boundary, satisfy the variant's side conditions (interior escape value
/// for C2; the upper sign property of the regularized table for C3), and
/// finally re-verify as an equilibrium point of the *original* table on
/// the finest truncation. Exhaustion reports the matching coercivity
/// diagnosis on the regularized rows.
pub fn existence_pipeline(
    spec: &BifunctionSpec,
    schedule: &TruncationSchedule,
    variant: PipelineVariant,
    tol: Tolerance,
) -> Result<PipelineResult, SolverError> {
    let domain = spec.domain();
    if domain.is_bounded() {
        return Err(SolverError::BoundedDomain { domain });
    }
    let levels: Vec<u32> = schedule.levels().collect();
    let finest = schedule.truncation(*levels.last().expect("schedules are nonempty"))?;
    let finest_table = sample_matrix(spec, finest.grid())?;

    let mut logs = Vec::new();
    for &level in &levels {
        let truncation = schedule.truncation(level)?;
        let grid = truncation.grid();
        let table = sample_matrix(spec, grid)?;
        let reg = regularize_with(&table, EnvelopeKind::Quasiconvex, Some(spec), DEFAULT_REFINEMENT)?;
        let mut log = LevelLog {
            level,
            candidates: Vec::new(),
            interior: Vec::new(),
            quasimonotone: None,
            properly_quasimonotone: None,
            upper_sign: None,
            semistrict_rows: None,
            notes: Vec::new(),
        };
        let mut transfer_ok = true;
        match variant {
            PipelineVariant::C2 => {
                log.candidates = solve_ep(&reg, tol).indices().to_vec();
            }
            PipelineVariant::C3 => {
                log.quasimonotone = Some(
                    check_monotonicity(&reg, MonotonicityKind::Quasimonotone, tol).is_pass(),
                );
                let pqm =
                    check_properly_quasimonotone(&reg, ProperlyQuasimonotoneMethod::Pair, tol)
                        .expect("the pair method has no grid-size limit")
                        .is_pass();
                log.properly_quasimonotone = Some(pqm);
                if !pqm {
                    log.notes.push(
                        "proper quasimonotonicity failed; its existence branch is not \
                         verifiable numerically, continuing with the feasibility path"
                            .to_string(),
                    );
                }
                let upper = check_upper_sign(&reg, Scope::Global, tol)
                    .expect("global scope cannot fail")
                    .is_pass();
                log.upper_sign = Some(upper);
                transfer_ok = upper;
                log.semistrict_rows = Some(semistrict_rows(&reg, tol)?);
                log.candidates = solve_cfp(&reg, Scope::Global, tol)?.indices().to_vec();
            }
        }
        log.interior = log
            .candidates
            .iter()
            .copied()
            .filter(|&i| truncation.is_interior(i))
            .collect();

        let interior = log.interior.clone();
        if transfer_ok {
            for i in interior {
                if variant == PipelineVariant::C2 {
                    // Interior escape: the candidate must see a nonpositive
                    // regularized value at some interior point.
                    let escapes = (0..grid.count())
                        .any(|j| truncation.is_interior(j) && tol.le_zero(reg.value(i, j)));
                    if !escapes {
                        continue;
                    }
                }
                let point = grid.point(i);
                let finest_index = finest
                    .grid()
                    .index_of(point)
                    .expect("truncation grids nest into the finest");
                if finest_table.row(finest_index).iter().all(|&v| tol.ge_zero(v)) {
                    logs.push(log);
                    return Ok(PipelineResult {
                        variant,
                        outcome: PipelineOutcome::Solution {
                            point,
                            index: i,
                            level,
                        },
                        levels: logs,
                    });
                }
                log.notes.push(format!(
                    "candidate x = {point} did not re-verify on the finest truncation"
                ));
            }
        }
        logs.push(log);
    }

    let kind = match variant {
        PipelineVariant::C2 => CoercivityKind::C2,
        PipelineVariant::C3 => CoercivityKind::C3,
    };
    let coercivity =
        check_coercivity(spec, schedule, kind, Some(EnvelopeKind::Quasiconvex), tol).ok();
    Ok(PipelineResult {
        variant,
        outcome: PipelineOutcome::Exhausted { coercivity },
        levels: logs,
    })
}

/// Whether every row of the table passes the semistrict quasiconvexity
/// shape check.
fn semistrict_rows(table: &ValueTable, tol: Tolerance) -> Result<bool, SolverError> {
    for row in table.values() {
        let f = SampledFunction::from_finite(table.grid().clone(), row.clone())
            .map_err(BifunctionError::from)?;
        if !shape_check(&f, ShapeKind::SemistrictlyQuasiconvex, tol)
            .map_err(BifunctionError::from)?
            .is_pass()
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Interval;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn spec(name: &str, domain: Interval, expr: &str) -> BifunctionSpec {
        BifunctionSpec::from_expression(name, domain, expr).unwrap()
    }

    fn half_line() -> Interval {
        Interval::at_least(0.0).unwrap()
    }

    fn table_of(s: &BifunctionSpec, grid: &Grid) -> ValueTable {
        sample_matrix(s, grid).unwrap()
    }

    #[test]
    fn nonnegative_table_solves_ep_everywhere() {
        let s = spec("reciprocal", half_line(), "if y == 0: 0; else: 1 / y");
        let grid = Grid::uniform(0.0, 1.0, 9).unwrap();
        let ep = solve_ep(&table_of(&s, &grid), tol());
        assert_eq!(ep.indices(), (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn difference_has_the_single_equilibrium_zero() {
        let s = spec("difference", Interval::bounded(0.0, 1.0).unwrap(), "y - x");
        let grid = Grid::uniform(0.0, 1.0, 9).unwrap();
        let table = table_of(&s, &grid);
        assert_eq!(solve_ep(&table, tol()).indices(), &[0]);
        assert_eq!(
            solve_cfp(&table, Scope::Global, tol()).unwrap().indices(),
            &[0]
        );
    }

    #[test]
    fn guarded_ramp_solves_ep_only_at_the_right_end() {
        let s = spec(
            "guarded-ramp",
            Interval::bounded(0.0, 2.0).unwrap(),
            "if x == 1 and y == 1: 1; if y < x: 0; else: x - y",
        );
        let grid = Grid::uniform(0.0, 2.0, 21).unwrap();
        let ep = solve_ep(&table_of(&s, &grid), tol());
        assert_eq!(ep.indices(), &[20]);
        assert_eq!(ep.points(), vec![2.0]);
    }

    #[test]
    fn truncated_identity_has_boundary_feasibility_points() {
        let s = spec(
            "ramp-flat",
            Interval::bounded(0.0, 1.0).unwrap(),
            "if y < 1: y; else: 0",
        );
        let grid = Grid::uniform(0.0, 1.0, 5).unwrap();
        let table = table_of(&s, &grid);
        let cfp = solve_cfp(&table, Scope::Global, tol()).unwrap();
        assert_eq!(cfp.indices(), &[0, 4]);
        let flat = regularize_with(&table, EnvelopeKind::Convex, Some(&s), 16).unwrap();
        let all = solve_cfp(&flat, Scope::Global, tol()).unwrap();
        assert_eq!(all.indices(), (0..5).collect::<Vec<_>>());
        for row in flat.values() {
            assert!(row.iter().all(|v| v.abs() <= 1e-9));
        }
    }

    #[test]
    fn local_feasibility_contains_global() {
        // Column 4 is globally excluded only by the far row 0.
        let grid = Grid::uniform(0.0, 1.0, 5).unwrap();
        let table = ValueTable::from_fn(grid, |x, y| {
            if x == 0.0 && y == 1.0 {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        let global = solve_cfp(&table, Scope::Global, tol()).unwrap();
        assert_eq!(global.indices(), &[0, 1, 2, 3]);
        let local = solve_cfp(&table, Scope::Local(0.5), tol()).unwrap();
        assert_eq!(local.indices(), &[0, 1, 2, 3, 4]);
        for &j in global.indices() {
            assert!(local.contains_index(j));
        }
        assert!(matches!(
            solve_cfp(&table, Scope::Local(-1.0), tol()),
            Err(SolverError::BadRadius { radius }) if radius == -1.0
        ));
    }

    #[test]
    fn ky_fan_point_of_the_difference_is_zero() {
        let s = spec("difference", Interval::bounded(0.0, 1.0).unwrap(), "y - x");
        let grid = Grid::uniform(0.0, 1.0, 9).unwrap();
        let kf = ky_fan_point(&table_of(&s, &grid), tol());
        assert_eq!(kf.index, 0);
        assert_eq!(kf.floor, 0.0);
        assert_eq!(kf.diagonal_min, 0.0);
        assert!(kf.passed);
    }

    #[test]
    fn constant_tables_reach_their_own_floor() {
        let grid = Grid::uniform(0.0, 1.0, 5).unwrap();
        let table = ValueTable::from_fn(grid, |_, _| 0.25).unwrap();
        let kf = ky_fan_point(&table, tol());
        assert_eq!(kf.index, 0);
        assert_eq!(kf.floor, 0.25);
        assert!(kf.passed);
    }

    #[test]
    fn quasiconvex_rows_alone_do_not_guarantee_the_floor() {
        // Both rows are monotone (hence quasiconvex as sampled vectors),
        // yet the max-min floor sits below the diagonal minimum: the
        // continuous guarantee needs a convex domain, and a two-point grid
        // is not one. Kept as the documented boundary of the discrete
        // analogy.
        let grid = Grid::uniform(0.0, 1.0, 2).unwrap();
        let table = ValueTable::new(grid, vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).unwrap();
        let kf = ky_fan_point(&table, tol());
        assert_eq!(kf.floor, -1.0);
        assert_eq!(kf.diagonal_min, 0.0);
        assert!(!kf.passed);
    }

    fn whole_line_schedule() -> TruncationSchedule {
        TruncationSchedule::new(Interval::whole_line(), 0.125, 1, 8).unwrap()
    }

    fn half_line_schedule(n_max: u32) -> TruncationSchedule {
        TruncationSchedule::new(half_line(), 0.125, 1, n_max).unwrap()
    }

    #[test]
    fn reciprocal_passes_the_strongest_escape_condition_at_zero() {
        let s = spec("reciprocal", half_line(), "if y == 0: 0; else: 1 / y");
        let report =
            check_coercivity(&s, &half_line_schedule(5), CoercivityKind::C1, None, tol()).unwrap();
        assert!(report.passed);
        assert_eq!(report.directions.len(), 1);
        let right = &report.directions[0];
        assert_eq!(right.direction, Direction::Right);
        assert_eq!(right.u, Some(0.0));
        assert_eq!(right.n0, Some(1));
    }

    #[test]
    fn difference_passes_the_strongest_escape_condition_at_zero() {
        let s = spec("difference", half_line(), "y - x");
        let report =
            check_coercivity(&s, &half_line_schedule(5), CoercivityKind::C1, None, tol()).unwrap();
        assert!(report.passed);
        assert_eq!(report.directions[0].u, Some(0.0));
    }

    #[test]
    fn cubic_fails_the_strongest_condition_leftward_only() {
        let s = spec("cubic", Interval::whole_line(), "y^3 - x");
        let report =
            check_coercivity(&s, &whole_line_schedule(), CoercivityKind::C1, None, tol()).unwrap();
        assert!(!report.passed);
        let left = report
            .directions
            .iter()
            .find(|d| d.direction == Direction::Left)
            .unwrap();
        assert!(!left.passed);
        assert!(!left.failures.is_empty());
        // No coarse anchor can keep up with x -> -inf; the best one is
        // still positive on the far tail.
        assert!(left.failures.iter().all(|f| f.best_value > 0.0));
        let right = report
            .directions
            .iter()
            .find(|d| d.direction == Direction::Right)
            .unwrap();
        assert!(right.passed);
        assert_eq!(right.u, Some(0.0));
    }

    #[test]
    fn cubic_passes_the_pointwise_tail_condition_both_ways() {
        let s = spec("cubic", Interval::whole_line(), "y^3 - x");
        let report =
            check_coercivity(&s, &whole_line_schedule(), CoercivityKind::C2, None, tol()).unwrap();
        assert!(report.passed, "per-point anchors u = -|x|^(1/3) exist");
    }

    #[test]
    fn reversed_difference_fails_every_escape_condition() {
        let s = spec("reversed", half_line(), "x - y");
        let schedule = half_line_schedule(5);
        let c1 = check_coercivity(&s, &schedule, CoercivityKind::C1, None, tol()).unwrap();
        assert!(!c1.passed);
        let c2 = check_coercivity(&s, &schedule, CoercivityKind::C2, None, tol()).unwrap();
        assert!(!c2.passed);
        assert!(!c2.directions[0].failures.is_empty());
        let c3 = check_coercivity(&s, &schedule, CoercivityKind::C3, None, tol()).unwrap();
        assert!(!c3.passed);
        assert_eq!(c3.directions[0].premise_holds, Some(true));
    }

    #[test]
    fn unit_step_premise_failures_pass_the_conditional_vacuously() {
        let s = spec("reciprocal", half_line(), "if y == 0: 0; else: 1 / y");
        let report =
            check_coercivity(&s, &half_line_schedule(5), CoercivityKind::C3, None, tol()).unwrap();
        assert!(report.passed);
        assert_eq!(report.directions[0].premise_holds, Some(false));
    }

    #[test]
    fn escape_chain_holds_on_the_unbounded_fixtures() {
        let fixtures = [
            spec("cubic", Interval::whole_line(), "y^3 - x"),
            spec(
                "log-peak",
                Interval::whole_line(),
                "if y == 0: 0; else: -ln(abs(y))",
            ),
            spec("reciprocal", half_line(), "if y == 0: 0; else: 1 / y"),
            spec("difference", half_line(), "y - x"),
            spec("reversed", half_line(), "x - y"),
        ];
        for fixture in &fixtures {
            let schedule =
                TruncationSchedule::new(fixture.domain(), 0.125, 1, 5).unwrap();
            let passes: Vec<bool> = CoercivityKind::ALL
                .iter()
                .map(|&kind| {
                    check_coercivity(fixture, &schedule, kind, None, tol())
                        .unwrap()
                        .passed
                })
                .collect();
            assert!(
                (!passes[0] || passes[1]) && (!passes[1] || passes[2]),
                "{}: C1 {} C2 {} C3 {}",
                fixture.name(),
                passes[0],
                passes[1],
                passes[2]
            );
        }
    }

    #[test]
    fn coercivity_rejects_bounded_domains_and_short_schedules() {
        let bounded = spec("difference", Interval::bounded(0.0, 1.0).unwrap(), "y - x");
        let schedule = TruncationSchedule::new(half_line(), 0.125, 1, 5).unwrap();
        assert!(matches!(
            check_coercivity(&bounded, &schedule, CoercivityKind::C1, None, tol()),
            Err(SolverError::BoundedDomain { .. })
        ));
        let unbounded = spec("difference", half_line(), "y - x");
        let short = TruncationSchedule::new(half_line(), 0.125, 1, 2).unwrap();
        assert!(matches!(
            check_coercivity(&unbounded, &short, CoercivityKind::C1, None, tol()),
            Err(SolverError::ScheduleTooShort { needed: 3, got: 2 })
        ));
        let incompatible = TruncationSchedule::new(half_line(), 0.3, 1, 3).unwrap();
        assert!(matches!(
            check_coercivity(&unbounded, &incompatible, CoercivityKind::C3, None, tol()),
            Err(SolverError::SpacingIncompatible { .. })
        ));
    }

    #[test]
    fn reciprocal_pipeline_finds_the_origin() {
        let s = spec("reciprocal", half_line(), "if y == 0: 0; else: 1 / y");
        let result =
            existence_pipeline(&s, &half_line_schedule(5), PipelineVariant::C3, tol()).unwrap();
        assert_eq!(result.solution(), Some((0.0, 1)));
        let first = &result.levels[0];
        assert_eq!(first.candidates, vec![0]);
        assert_eq!(first.interior, vec![0]);
        assert_eq!(first.upper_sign, Some(true));
        // The regularized rows rise away from y = 0 and never return below
        // the diagonal, so both monotonicity-flavored preconditions fail;
        // the pipeline reports them and proceeds on the feasibility path.
        assert_eq!(first.quasimonotone, Some(false));
        assert_eq!(first.properly_quasimonotone, Some(false));
        assert!(first.notes.iter().any(|n| n.contains("feasibility path")));
    }

    #[test]
    fn difference_pipeline_solves_at_the_first_level() {
        let s = spec("difference", half_line(), "y - x");
        let result =
            existence_pipeline(&s, &half_line_schedule(5), PipelineVariant::C2, tol()).unwrap();
        assert_eq!(result.solution(), Some((0.0, 1)));
        assert_eq!(result.levels.len(), 1);
    }

    #[test]
    fn reversed_difference_pipeline_exhausts_with_diagnostics() {
        let s = spec("reversed", half_line(), "x - y");
        let result =
            existence_pipeline(&s, &half_line_schedule(5), PipelineVariant::C2, tol()).unwrap();
        assert_eq!(result.solution(), None);
        for log in &result.levels {
            // EP of each truncation is the right endpoint, which sits on
            // the artificial boundary.
            assert_eq!(log.candidates.len(), 1);
            assert!(log.interior.is_empty());
        }
        match &result.outcome {
            PipelineOutcome::Exhausted { coercivity } => {
                let report = coercivity.as_ref().expect("diagnostics are computable");
                assert_eq!(report.kind, CoercivityKind::C2);
                assert!(!report.passed);
                assert!(!report.directions[0].failures.is_empty());
            }
            PipelineOutcome::Solution { .. } => unreachable!("checked above"),
        }
    }

    #[test]
    fn pipeline_rejects_bounded_domains() {
        let s = spec("difference", Interval::bounded(0.0, 1.0).unwrap(), "y - x");
        let schedule = TruncationSchedule::new(half_line(), 0.125, 1, 5).unwrap();
        assert!(matches!(
            existence_pipeline(&s, &schedule, PipelineVariant::C2, tol()),
            Err(SolverError::BoundedDomain { .. })
        ));
    }
}
