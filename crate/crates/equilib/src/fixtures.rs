//! Packaged example bifunctions with their expected behavior.
//!
//! Each fixture bundles an expression, a domain, and a default grid or
//! truncation schedule sized so the interesting behavior is visible.
//! [`run_example`] executes the fixture's expectations and reports one
//! named check per claim, so the examples double as executable
//! documentation and as regression anchors for the command-line harness.

use thiserror::Error;

use crate::bifunction::{
    classify_families, regularize_with, sample_matrix, BifunctionError, BifunctionSpec,
    ClassifyOptions, Family, Membership, ValueTable, DEFAULT_REFINEMENT,
};
use crate::envelope::{shape_check, EnvelopeError, EnvelopeKind, SampledFunction, ShapeKind};
use crate::grid::{Grid, GridError, Interval, TruncationSchedule};
use crate::properties::{
    check_monotonicity, check_properly_quasimonotone, check_segment_condition, check_upper_sign,
    MonotonicityKind, ProperlyQuasimonotoneMethod, PropertyError, Scope, SegmentCondition,
};
use crate::report::{CheckOutcome, SuiteReport};
use crate::solvers::{
    check_coercivity, existence_pipeline, solve_cfp, solve_ep, CoercivityKind, PipelineOutcome,
    PipelineVariant, SolverError,
};
use crate::verdict::Tolerance;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown example '{name}'; available examples: {available}")]
    UnknownName { name: String, available: String },
    #[error("example '{name}' lives on an unbounded domain; it has a truncation schedule instead of a grid")]
    NoDefaultGrid { name: &'static str },
    #[error(transparent)]
    Bifunction(#[from] BifunctionError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
    #[error(transparent)]
    Property(#[from] PropertyError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// A packaged bifunction with defaults for sampling it.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    expression: &'static str,
    /// Finite endpoints; `None` marks an unbounded side.
    lower: Option<f64>,
    upper: Option<f64>,
    /// Default point count for a compact domain.
    grid_count: Option<usize>,
    /// Default `(spacing, n_min, n_max)` truncations for an unbounded domain.
    schedule: Option<(f64, u32, u32)>,
}

impl Fixture {
    pub fn domain(&self) -> Interval {
        match (self.lower, self.upper) {
            (Some(a), Some(b)) => Interval::bounded(a, b).expect("fixture endpoints are finite"),
            (Some(a), None) => Interval::at_least(a).expect("fixture endpoints are finite"),
            (None, None) => Interval::whole_line(),
            (None, Some(_)) => unreachable!("no fixture is bounded above only"),
        }
    }

    pub fn expression(&self) -> &'static str {
        self.expression
    }

    pub fn spec(&self) -> BifunctionSpec {
        BifunctionSpec::from_expression(self.name, self.domain(), self.expression)
            .expect("packaged expressions parse")
    }

    /// The default sampling grid, when the domain is compact.
    pub fn default_grid(&self) -> Option<Grid> {
        let count = self.grid_count?;
        let (a, b) = (self.lower?, self.upper?);
        Some(Grid::uniform(a, b, count).expect("fixture grids are valid"))
    }

    /// The default truncation schedule, when the domain is unbounded.
    pub fn default_schedule(&self) -> Option<TruncationSchedule> {
        let (spacing, n_min, n_max) = self.schedule?;
        Some(
            TruncationSchedule::new(self.domain(), spacing, n_min, n_max)
                .expect("fixture schedules are valid"),
        )
    }

    /// Samples the fixture on its default grid (compact fixtures only).
    pub fn sample(&self) -> Result<ValueTable, FixtureError> {
        let grid = self
            .default_grid()
            .ok_or(FixtureError::NoDefaultGrid { name: self.name })?;
        Ok(sample_matrix(&self.spec(), &grid)?)
    }
}

const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "cfp-endpoints",
        summary: "ramp with a flattened top; its dual solutions sit exactly at \
                  the two interval endpoints until regularization flattens the rows",
        expression: "if y < 1: y; else: 0",
        lower: Some(0.0),
        upper: Some(1.0),
        grid_count: Some(201),
        schedule: None,
    },
    Fixture {
        name: "notched-affine",
        summary: "affine drop with a single notch pinned to zero; the quasiconvex \
                  envelope erases the notch and both segment conditions fail at it",
        expression: "if y == 1: 0; else: y - 2",
        lower: Some(0.0),
        upper: Some(2.0),
        grid_count: Some(201),
        schedule: None,
    },
    Fixture {
        name: "spike",
        summary: "zero everywhere except a symmetric positive spike off the \
                  diagonal; monotonicity fails at the spike and every \
                  regularization removes it",
        expression: "if x == 1 and y == 0: 1; if x == 0 and y == 1: 1; else: 0",
        lower: Some(0.0),
        upper: Some(1.0),
        grid_count: Some(201),
        schedule: None,
    },
    Fixture {
        name: "cubic-drift",
        summary: "cubic growth in y with a linear drift in x on the whole line; \
                  quasiconvex envelopes stabilize across truncations, convex ones sink",
        expression: "y^3 - x",
        lower: None,
        upper: None,
        grid_count: None,
        schedule: Some((0.125, 1, 8)),
    },
    Fixture {
        name: "neg-log",
        summary: "negative log of |y| on the whole line; closures stay finite but \
                  every envelope family's values sink as the truncation grows",
        expression: "if y == 0: 0; else: -ln(abs(y))",
        lower: None,
        upper: None,
        grid_count: None,
        schedule: Some((0.125, 1, 8)),
    },
    Fixture {
        name: "one-over-y",
        summary: "reciprocal in y on the right half-line; the regularized rows \
                  shrink like 1/n and the existence pipeline lands on zero",
        expression: "if y == 0: 0; else: 1 / y",
        lower: Some(0.0),
        upper: None,
        grid_count: None,
        schedule: Some((0.125, 1, 5)),
    },
    Fixture {
        name: "guarded-ramp",
        summary: "nonpositive ramp with a guarded positive corner; the equilibrium \
                  set is the right endpoint and survives quasiconvex regularization",
        expression: "if x == 1 and y == 1: 1; if y < x: 0; else: x - y",
        lower: Some(0.0),
        upper: Some(2.0),
        grid_count: Some(201),
        schedule: None,
    },
    Fixture {
        name: "rational-flat",
        summary: "constant zero table standing in for the indicator-style \
                  bifunction of a dense subset; the pointwise original has no \
                  faithful grid sampling, so the fixture stores its regularized \
                  limit directly",
        expression: "0",
        lower: Some(0.0),
        upper: Some(1.0),
        grid_count: Some(11),
        schedule: None,
    },
    Fixture {
        name: "rational-drop",
        summary: "constant minus-one table standing in for a dense-indicator \
                  bifunction after closure; duals exist everywhere while \
                  equilibria are impossible",
        expression: "-1",
        lower: Some(0.0),
        upper: Some(1.0),
        grid_count: Some(11),
        schedule: None,
    },
    Fixture {
        name: "difference",
        summary: "f(x, y) = y - x on the right half-line; monotone, coercive, and \
                  solved at the origin by the equilibrium pipeline",
        expression: "y - x",
        lower: Some(0.0),
        upper: None,
        grid_count: None,
        schedule: Some((0.125, 1, 5)),
    },
    Fixture {
        name: "reverse-difference",
        summary: "f(x, y) = x - y on the right half-line; every escape condition \
                  fails and the pipeline exhausts its truncations with diagnostics",
        expression: "x - y",
        lower: Some(0.0),
        upper: None,
        grid_count: None,
        schedule: Some((0.125, 1, 5)),
    },
];

/// The packaged fixtures.
pub fn registry() -> &'static [Fixture] {
    FIXTURES
}

/// All runnable example names: the fixtures plus the combined
/// `family-split` run.
pub fn example_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = FIXTURES.iter().map(|f| f.name).collect();
    names.push("family-split");
    names
}

/// Looks up a packaged fixture by name.
pub fn fixture(name: &str) -> Result<&'static Fixture, FixtureError> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| unknown(name))
}

fn unknown(name: &str) -> FixtureError {
    FixtureError::UnknownName {
        name: name.to_string(),
        available: example_names().join(", "),
    }
}

/// Runs a packaged example's expectations and reports one check per claim.
pub fn run_example(name: &str, tol: Tolerance) -> Result<SuiteReport, FixtureError> {
    let started = std::time::Instant::now();
    let checks = match name {
        "cfp-endpoints" => cfp_endpoints_checks(tol)?,
        "notched-affine" => notched_affine_checks(tol)?,
        "spike" => spike_checks(tol)?,
        "cubic-drift" => cubic_drift_checks(tol)?,
        "neg-log" => neg_log_checks(tol)?,
        "one-over-y" => one_over_y_checks(tol)?,
        "guarded-ramp" => guarded_ramp_checks(tol)?,
        "rational-flat" => rational_flat_checks(tol)?,
        "rational-drop" => rational_drop_checks(tol)?,
        "difference" => difference_checks(tol)?,
        "reverse-difference" => reverse_difference_checks(tol)?,
        "family-split" => {
            let mut checks = prefixed("cubic-drift", cubic_drift_checks(tol)?);
            checks.extend(prefixed("neg-log", neg_log_checks(tol)?));
            checks
        }
        other => return Err(unknown(other)),
    };
    let mut report = SuiteReport::from_checks(&format!("example:{name}"), checks.len(), checks);
    report.wall_ms = started.elapsed().as_millis();
    Ok(report)
}

fn prefixed(prefix: &str, checks: Vec<CheckOutcome>) -> Vec<CheckOutcome> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{prefix}/{}", c.name);
            c
        })
        .collect()
}

fn max_abs(table: &ValueTable) -> f64 {
    table
        .values()
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
}

fn cfp_endpoints_checks(tol: Tolerance) -> Result<Vec<CheckOutcome>, FixtureError> {
    let fixture = fixture("cfp-endpoints")?;
    let spec = fixture.spec();
    let table = fixture.sample()?;
    let n = table.count();

    let duals = solve_cfp(&table, Scope::Global, tol)?;
    let endpoints_only = duals.indices() == [0, n - 1];

    let reg = regularize_with(&table, EnvelopeKind::Convex, Some(&spec), DEFAULT_REFINEMENT)?;
    let flattened = max_abs(&reg) <= 1e-9;
    let reg_duals = solve_cfp(&reg, Scope::Global, tol)?;

    Ok(vec![
        CheckOutcome::new(
            "duals-at-the-endpoints",
            endpoints_only,
            format!("dual solutions of the sampled table: {:?}", duals.points()),
        ),
        CheckOutcome::new(
            "convex-regularization-flattens",
            flattened,
            format!("largest |entry| after regularization: {:e}", max_abs(&reg)),
        ),
        CheckOutcome::new(
            "regularized-duals-everywhere",
            reg_duals.len() == n,
            format!("{} of {} points are dual solutions after regularization", reg_duals.len(), n),
        ),
    ])
}

fn notched_affine_checks(tol: Tolerance) -> Result<Vec<CheckOutcome>, FixtureError> {
    let fixture = fixture("notched-affine")?;
    let spec = fixture.spec();
    let table = fixture.sample()?;
    let grid = table.grid().clone();

    let reg = regularize_with(
        &table,
        EnvelopeKind::Quasiconvex,
        Some(&spec),
        DEFAULT_REFINEMENT,
    )?;
    let affine: Vec<f64> = grid.points().iter().map(|y| y - 2.0).collect();
    let rows_match = reg.values().iter().all(|row| row == &affine);

    let mut semistrict = true;
    for row in reg.values() {
        let f = SampledFunction::from_finite(grid.clone(), row.clone())?;
        if !shape_check(&f, ShapeKind::SemistrictlyQuasiconvex, tol)?.is_pass() {
            semistrict = false;
            break;
        }
    }

    let alpha = check_segment_condition(&table, SegmentCondition::Alpha, tol);
    let beta = check_segment_condition(&table, SegmentCondition::Beta, tol);
    let alpha_at_notch = !alpha.passed
        && alpha
            .witness()
            .is_some_and(|w| w.mentions_coordinate(1.0, 1e-12));
    let beta_at_notch = !beta.passed
        && beta
            .witness()
            .is_some_and(|w| w.mentions_coordinate(1.0, 1e-12));

    Ok(vec![
        CheckOutcome::new(
            "quasiconvex-rows-drop-the-notch",
            rows_match,
            "every regularized row equals the affine drop y - 2 exactly",
        ),
        CheckOutcome::new(
            "regularized-rows-are-semistrict",
            semistrict,
            "regularized rows pass the semistrictly-quasiconvex shape check",
        ),
        CheckOutcome::new(
            "alpha-fails-at-the-notch",
            alpha_at_notch,
            format!("first segment condition verdict: {:?}", alpha.witness()),
        ),
        CheckOutcome::new(
            "beta-fails-at-the-notch",
            beta_at_notch,
            format!("second segment condition verdict: {:?}", beta.witness()),
        ),
    ])
}

fn spike_checks(tol: Tolerance) -> Result<Vec<CheckOutcome>, FixtureError> {
    let fixture = fixture("spike")?;
    let spec = fixture.spec();
    let table = fixture.sample()?;

    let raw = check_monotonicity(&table, MonotonicityKind::Monotone, tol);
    let witness_at_spike = !raw.passed
        && raw.witness().is_some_and(|w| {
            w.point("x").is_some_and(|p| p.point == 1.0)
                && w.point("y").is_some_and(|p| p.point == 0.0)
        });

    let mut flattened = true;
    let mut regs_monotone = true;
    for kind in [
        EnvelopeKind::Lsc,
        EnvelopeKind::Convex,
        EnvelopeKind::Quasiconvex,
    ] {
        let reg = regularize_with(&table, kind, Some(&spec), DEFAULT_REFINEMENT)?;
        flattened &= max_abs(&reg) <= 1e-9;
        regs_monotone &= check_monotonicity(&reg, MonotonicityKind::Monotone, tol).is_pass();
    }

    Ok(vec![
        CheckOutcome::new(
            "monotonicity-fails-at-the-spike",
            witness_at_spike,
            format!("witness: {:?}", raw.witness()),
        ),
        CheckOutcome::new(
            "regularizations-flatten-the-spike",
            flattened,
            "all three regularization computations produce the zero table",
        ),
        CheckOutcome::new(
            "regularized-tables-are-monotone",
            regs_monotone,
            "monotonicity passes on every regularized table",
        ),
    ])
}

fn membership(report: &crate::bifunction::FamilyReport, family: Family) -> Membership {
    report.verdict(family).membership
}

fn cubic_drift_checks(tol: Tolerance) -> Result<Vec<CheckOutcome>, FixtureError> {
    let fixture = fixture("cubic-drift")?;
    let schedule = fixture.default_schedule().expect("unbounded fixture");
    let options = ClassifyOptions {
        tolerance: tol,
        ..ClassifyOptions::default()
    };
    let report = classify_families(&fixture.spec(), &schedule, &options)?;

    let quasi_member = membership(&report, Family::Quasiconvex) == Membership::Member;
    let convex_out = membership(&report, Family::Convex) == Membership::NotMember
        && report.verdict(Family::Convex).evidence.is_some();
    let closed_agree = membership(&report, Family::ConvexClosed) == Membership::NotMember
        && membership(&report, Family::QuasiconvexClosed) == Membership::Member;
    let shifted_member = membership(&report, Family::Lsc) == Membership::Member
        && membership(&report, Family::SemistrictlyQuasiconvex) == Membership::Member;

    Ok(vec![
        CheckOutcome::new(
            "quasiconvex-family-member",
            quasi_member,
            "quasiconvex envelope values stabilize across truncations",
        ),
        CheckOutcome::new(
            "convex-envelope-diverges",
            convex_out,
            format!(
                "convex trajectory: {:?}",
                report.verdict(Family::Convex).evidence
            ),
        ),
        CheckOutcome::new(
            "closed-variants-agree",
            closed_agree,
            "closed convex diverges with the convex family; closed quasiconvex stays",
        ),
        CheckOutcome::new(
            "shifted-families-member",
            shifted_member,
            "lsc closure and semistrict shape both stabilize",
        ),
    ])
}

fn neg_log_checks(tol: Tolerance) -> Result<Vec<CheckOutcome>, FixtureError> {
    let fixture = fixture("neg-log")?;
    let schedule = fixture.default_schedule().expect("unbounded fixture");
    let options = ClassifyOptions {
        tolerance: tol,
        ..ClassifyOptions::default()
    };
    let report = classify_families(&fixture.spec(), &schedule, &options)?;

    let shifted_member = membership(&report, Family::Lsc) == Membership::Member;
    let quasi_sinks = membership(&report, Family::Quasiconvex) == Membership::NotMember
        && membership(&report, Family::QuasiconvexClosed) == Membership::NotMember
        && report.verdict(Family::Quasiconvex).evidence.is_some();
    let convex_out = membership(&report, Family::Convex) == Membership::NotMember
        && membership(&report, Family::ConvexClosed) == Membership::NotMember;
    let semistrict_out =
        membership(&report, Family::SemistrictlyQuasiconvex) == Membership::NotMember;

    Ok(vec![
        CheckOutcome::new(
            "shifted-family-member",
            shifted_member,
            "the lsc closure stabilizes: the function is its own closure",
        ),
        CheckOutcome::new(
            "quasiconvex-envelope-sinks",
            quasi_sinks,
            format!(
                "quasiconvex trajectory: {:?}",
                report.verdict(Family::Quasiconvex).evidence
            ),
        ),
        CheckOutcome::new(
            "convex-family-excluded",
            convex_out,
            "convex envelopes sink at least as fast as quasiconvex ones",
        ),
        CheckOutcome::new(
            "semistrict-family-excluded",
            semistrict_out,
            "the semistrict family cannot outlive the quasiconvex envelope",
        ),
    ])
}

fn one_over_y_checks(tol: Tolerance) -> Result<Vec<CheckOutcome>, FixtureError> {
    let fixture = fixture("one-over-y")?;
    let spec = fixture.spec();
    let schedule = fixture.default_schedule().expect("unbounded fixture");

    let pipeline = existence_pipeline(&spec, &schedule, PipelineVariant::C3, tol)?;
    let solved_at_zero = pipeline.solution() == Some((0.0, 1));

    let mut shrinks = true;
    let mut detail = String::new();
    for n in schedule.levels() {
        let truncation = schedule.truncation(n)?;
        let table = sample_matrix(&spec, truncation.grid())?;
        let reg = regularize_with(
            &table,
            EnvelopeKind::Quasiconvex,
            Some(&spec),
            DEFAULT_REFINEMENT,
        )?;
        let bound = 1.0 / f64::from(n) + tol.slack;
        let level_ok = reg
            .values()
            .iter()
            .flatten()
            .all(|v| *v >= -tol.slack && *v <= bound);
        shrinks &= level_ok;
        detail.push_str(&format!("n={n}: max {:.6}; ", max_abs(&reg)));
    }

    Ok(vec![
        CheckOutcome::new(
            "pipeline-solves-at-zero",
            solved_at_zero,
            format!("pipeline outcome: {:?}", pipeline.solution()),
        ),
        CheckOutcome::new(
            "regularized-rows-shrink-with-the-truncation",
            shrinks,
            detail,
        ),
    ])
}

fn guarded_ramp_checks(tol: Tolerance) -> Result<Vec<CheckOutcome>, FixtureError> {
    let fixture = fixture("guarded-ramp")?;
    let spec = fixture.spec();
    let table = fixture.sample()?;
    let n = table.count();

    let equilibria = solve_ep(&table, tol);
    let right_edge = equilibria.indices() == [n - 1] && equilibria.points() == [2.0];

    let reg = regularize_with(
        &table,
        EnvelopeKind::Quasiconvex,
        Some(&spec),
        DEFAULT_REFINEMENT,
    )?;
    let reg_equilibria = solve_ep(&reg, tol);
    let preserved = reg_equilibria.indices() == equilibria.indices();

    Ok(vec![
        CheckOutcome::new(
            "equilibrium-at-the-right-edge",
            right_edge,
            format!("equilibrium points: {:?}", equilibria.points()),
        ),
        CheckOutcome::new(
            "regularization-preserves-the-equilibria",
            preserved,
            format!(
                "after quasiconvex regularization: {:?}",
                reg_equilibria.points()
            ),
        ),
    ])
}

fn rational_flat_checks(tol: Tolerance) -> Result<Vec<CheckOutcome>, FixtureError> {
    let fixture = fixture("rational-flat")?;
    let table = fixture.sample()?;
    let n = table.count();

    let pair = check_properly_quasimonotone(&table, ProperlyQuasimonotoneMethod::Pair, tol)?;
    let subset = check_properly_quasimonotone(&table, ProperlyQuasimonotoneMethod::Subset, tol)?;
    let upper = check_upper_sign(&table, Scope::Global, tol)?;
    let equilibria = solve_ep(&table, tol);
    let duals = solve_cfp(&table, Scope::Global, tol)?;

    Ok(vec![
        CheckOutcome::new(
            "properly-quasimonotone-both-methods",
            pair.is_pass() && subset.is_pass(),
            "the zero table passes the pair and subset formulations",
        ),
        CheckOutcome::new(
            "upper-sign-holds",
            upper.is_pass(),
            "vanishing rows satisfy the upper sign property",
        ),
        CheckOutcome::new(
            "everything-is-a-solution",
            equilibria.len() == n && duals.len() == n,
            format!("{} equilibria, {} duals on {} points", equilibria.len(), duals.len(), n),
        ),
    ])
}

fn rational_drop_checks(tol: Tolerance) -> Result<Vec<CheckOutcome>, FixtureError> {
    let fixture = fixture("rational-drop")?;
    let table = fixture.sample()?;
    let n = table.count();

    let pair = check_properly_quasimonotone(&table, ProperlyQuasimonotoneMethod::Pair, tol)?;
    let subset = check_properly_quasimonotone(&table, ProperlyQuasimonotoneMethod::Subset, tol)?;
    let monotone = check_monotonicity(&table, MonotonicityKind::Monotone, tol);
    let equilibria = solve_ep(&table, tol);
    let duals = solve_cfp(&table, Scope::Global, tol)?;

    Ok(vec![
        CheckOutcome::new(
            "properly-quasimonotone-both-methods",
            pair.is_pass() && subset.is_pass(),
            "every strictly negative table passes both formulations",
        ),
        CheckOutcome::new(
            "monotone-as-a-constant-drop",
            monotone.is_pass(),
            "pair sums are constantly -2",
        ),
        CheckOutcome::new(
            "duals-without-equilibria",
            equilibria.is_empty() && duals.len() == n,
            format!("{} equilibria, {} duals on {} points", equilibria.len(), duals.len(), n),
        ),
    ])
}

fn difference_checks(tol: Tolerance) -> Result<Vec<CheckOutcome>, FixtureError> {
    let fixture = fixture("difference")?;
    let spec = fixture.spec();
    let schedule = fixture.default_schedule().expect("unbounded fixture");

    let pipeline = existence_pipeline(&spec, &schedule, PipelineVariant::C2, tol)?;
    let solved_at_zero = pipeline.solution() == Some((0.0, 1));

    let coercivity = check_coercivity(&spec, &schedule, CoercivityKind::C1, None, tol)?;

    Ok(vec![
        CheckOutcome::new(
            "pipeline-solves-at-zero",
            solved_at_zero,
            format!("pipeline outcome: {:?}", pipeline.solution()),
        ),
        CheckOutcome::new(
            "tail-coercivity-holds",
            coercivity.passed,
            "the strongest escape condition holds with a fixed anchor",
        ),
    ])
}

fn reverse_difference_checks(tol: Tolerance) -> Result<Vec<CheckOutcome>, FixtureError> {
    let fixture = fixture("reverse-difference")?;
    let spec = fixture.spec();
    let schedule = fixture.default_schedule().expect("unbounded fixture");

    let pipeline = existence_pipeline(&spec, &schedule, PipelineVariant::C2, tol)?;
    let exhausted_with_diagnosis = match &pipeline.outcome {
        PipelineOutcome::Exhausted { coercivity } => coercivity
            .as_ref()
            .is_some_and(|report| {
                !report.passed
                    && report
                        .directions
                        .iter()
                        .any(|direction| !direction.failures.is_empty())
            }),
        PipelineOutcome::Solution { .. } => false,
    };

    let mut all_fail = true;
    for kind in CoercivityKind::ALL {
        let report = check_coercivity(&spec, &schedule, kind, None, tol)?;
        all_fail &= !report.passed;
    }

    Ok(vec![
        CheckOutcome::new(
            "pipeline-exhausts",
            exhausted_with_diagnosis,
            "no truncation yields a verifiable solution; the report carries tail failures",
        ),
        CheckOutcome::new(
            "escape-conditions-all-fail",
            all_fail,
            "none of the three escape conditions holds in the unbounded direction",
        ),
    ])
}
