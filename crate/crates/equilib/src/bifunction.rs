//! Bifunctions `f(x, y)` on an interval domain: textual specifications,
//! sampled value tables, row-wise regularization, and classification into
//! the envelope families.
//!
//! A *bifunction spec* pairs a piecewise expression with the interval the
//! variables live on. Sampling it on a grid produces a square *value table*
//! `F[i][j] = f(x_i, y_j)`; all later machinery (equilibrium solvers,
//! monotonicity checks, coercivity) consumes tables, so everything measurable
//! about a bifunction flows through here.

use crate::dsl::{DslError, Piecewise};
use crate::envelope::{
    convex_envelope, quasiconvex_envelope, shape_check, EnvelopeError, EnvelopeKind,
    SampledFunction, ShapeKind, ValueClass,
};
use crate::grid::{ExtendedReal, Grid, GridError, Interval, TruncationSchedule};
use crate::verdict::{Tolerance, Witness};
use serde::Serialize;
use thiserror::Error;

/// Probe distance divisor used by the one-sided closure refinement when the
/// caller does not choose one: probes sit at `spacing / 16` from each grid
/// point.
pub const DEFAULT_REFINEMENT: u32 = 16;

#[derive(Debug, Error, PartialEq)]
pub enum BifunctionError {
    #[error(transparent)]
    Expression(#[from] DslError),
    #[error(transparent)]
    Domain(#[from] GridError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
    #[error("line {line}: {message}")]
    SpecFile { line: usize, message: String },
    #[error("spec is missing the required key '{key}'")]
    MissingKey { key: &'static str },
    #[error("grid point {point} lies outside the domain {domain}")]
    PointOutsideDomain { point: f64, domain: Interval },
    #[error("f({x}, {y}) is not finite")]
    NonFiniteSample { x: f64, y: f64 },
    #[error("table row {row} has {len} entries; expected {expected}")]
    RowShape {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("table has {rows} rows; the grid has {expected} points")]
    TableShape { rows: usize, expected: usize },
    #[error("table entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("classification needs a truncation schedule with at least two levels")]
    ScheduleTooShort,
    #[error("probe {point} does not lie on the coarsest truncation grid")]
    ProbeOffGrid { point: f64 },
    #[error("classification needs at least one probe point")]
    NoProbes,
    #[error("divergence bound must be positive and finite, got {bound}")]
    BadDivergenceBound { bound: f64 },
}

fn spec_file_err(line: usize, message: impl Into<String>) -> BifunctionError {
    BifunctionError::SpecFile {
        line,
        message: message.into(),
    }
}

/// A bifunction given by a piecewise expression over an interval domain.
#[derive(Clone, Debug, Serialize)]
pub struct BifunctionSpec {
    name: String,
    domain: Interval,
    expression: String,
    #[serde(skip)]
    pieces: Piecewise,
}

impl BifunctionSpec {
    pub fn from_expression(
        name: &str,
        domain: Interval,
        expression: &str,
    ) -> Result<Self, BifunctionError> {
        let pieces = Piecewise::parse(expression)?;
        Ok(BifunctionSpec {
            name: name.to_string(),
            domain,
            expression: expression.to_string(),
            pieces,
        })
    }

    /// Parses the line-oriented spec format:
    ///
    /// ```text
    /// # free-form comment
    /// name: one-over-y
    /// domain: 0 inf
    /// expression: if y == 0: 0; else: 1 / y
    /// ```
    ///
    /// Each line is `key: value` split at the first colon (the expression
    /// value may itself contain colons); `domain` takes two endpoints, each a
    /// number, `inf`, or `-inf`; `name` is optional.
    pub fn parse_file(text: &str) -> Result<Self, BifunctionError> {
        let mut name: Option<String> = None;
        let mut domain: Option<Interval> = None;
        let mut expression: Option<String> = None;
        for (index, raw) in text.lines().enumerate() {
            let lineno = index + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(spec_file_err(lineno, "expected a 'key: value' line"));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "name" => {
                    if name.replace(value.to_string()).is_some() {
                        return Err(spec_file_err(lineno, "duplicate key 'name'"));
                    }
                }
                "domain" => {
                    if domain.is_some() {
                        return Err(spec_file_err(lineno, "duplicate key 'domain'"));
                    }
                    let ends: Vec<&str> = value.split_whitespace().collect();
                    if ends.len() != 2 {
                        return Err(spec_file_err(
                            lineno,
                            "domain needs two endpoints, e.g. '0 inf'",
                        ));
                    }
                    let lower = parse_endpoint(ends[0], lineno)?;
                    let upper = parse_endpoint(ends[1], lineno)?;
                    domain = Some(Interval::new(lower, upper)?);
                }
                "expression" => {
                    if expression.replace(value.to_string()).is_some() {
                        return Err(spec_file_err(lineno, "duplicate key 'expression'"));
                    }
                }
                other => {
                    return Err(spec_file_err(lineno, format!("unknown key '{other}'")));
                }
            }
        }
        let expression = expression.ok_or(BifunctionError::MissingKey { key: "expression" })?;
        let domain = domain.ok_or(BifunctionError::MissingKey { key: "domain" })?;
        BifunctionSpec::from_expression(name.as_deref().unwrap_or("unnamed"), domain, &expression)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn expression(&self) -> &str {
        &self.expression
    }

    /// Raw value `f(x, y)` with IEEE semantics; may be non-finite.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.pieces.eval(x, y)
    }

    /// `f(x, y)` after checking that both arguments lie in the domain and
    /// that the value is finite.
    pub fn eval_checked(&self, x: f64, y: f64) -> Result<f64, BifunctionError> {
        for point in [x, y] {
            if !self.domain.contains(point) {
                return Err(BifunctionError::PointOutsideDomain {
                    point,
                    domain: self.domain,
                });
            }
        }
        let value = self.eval(x, y);
        if !value.is_finite() {
            return Err(BifunctionError::NonFiniteSample { x, y });
        }
        Ok(value)
    }
}

fn parse_endpoint(token: &str, lineno: usize) -> Result<ExtendedReal, BifunctionError> {
    match token {
        "inf" | "+inf" => Ok(ExtendedReal::PosInf),
        "-inf" => Ok(ExtendedReal::NegInf),
        _ => token
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(ExtendedReal::Finite)
            .ok_or_else(|| {
                spec_file_err(lineno, format!("bad domain endpoint '{token}'"))
            }),
    }
}

/// A square table of bifunction values on one grid: `F[i][j] = f(x_i, y_j)`
/// with rows indexed by the first argument.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValueTable {
    grid: Grid,
    values: Vec<Vec<f64>>,
}

impl ValueTable {
    pub fn new(grid: Grid, values: Vec<Vec<f64>>) -> Result<Self, BifunctionError> {
        let expected = grid.count();
        if values.len() != expected {
            return Err(BifunctionError::TableShape {
                rows: values.len(),
                expected,
            });
        }
        for (row, entries) in values.iter().enumerate() {
            if entries.len() != expected {
                return Err(BifunctionError::RowShape {
                    row,
                    len: entries.len(),
                    expected,
                });
            }
            if let Some(col) = entries.iter().position(|v| !v.is_finite()) {
                return Err(BifunctionError::NonFiniteEntry { row, col });
            }
        }
        Ok(ValueTable { grid, values })
    }

    pub fn from_fn(grid: Grid, mut f: impl FnMut(f64, f64) -> f64) -> Result<Self, BifunctionError> {
        let points = grid.points().to_vec();
        let values = points
            .iter()
            .map(|&x| points.iter().map(|&y| f(x, y)).collect())
            .collect();
        ValueTable::new(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn count(&self) -> usize {
        self.grid.count()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }
}

/// Samples a spec on a grid. Every grid point must belong to the domain, and
/// every sampled value must be finite.
pub fn sample_matrix(spec: &BifunctionSpec, grid: &Grid) -> Result<ValueTable, BifunctionError> {
    let domain = spec.domain();
    for &p in grid.points() {
        if !domain.contains(p) {
            return Err(BifunctionError::PointOutsideDomain { point: p, domain });
        }
    }
    let points = grid.points();
    let mut values = Vec::with_capacity(points.len());
    for &x in points {
        let mut row = Vec::with_capacity(points.len());
        for &y in points {
            let v = spec.eval(x, y);
            if !v.is_finite() {
                return Err(BifunctionError::NonFiniteSample { x, y });
            }
            row.push(v);
        }
        values.push(row);
    }
    ValueTable::new(grid.clone(), values)
}

/// One-sided closure of a sampled row `y ↦ f(x, y)`.
///
/// At each grid point the sampled value is lowered to any finite one-sided
/// limit the expression's branch structure exposes. A probe is placed at
/// distance `spacing / refinement` on each side (skipping sides that leave
/// the grid or the domain); the branch active *at the probe* is followed back
/// to the grid point and its expression evaluated *there*, so a branch that
/// is merely adjacent contributes its limiting value, not a nearby value.
/// Probes whose branch value is not finite are ignored — a branch running to
/// `+∞` cannot lower anything. With `refinement < 2` no probes fit strictly
/// between grid points and the row is returned unchanged.
///
/// Continuous expressions are left bit-for-bit intact: the probe's branch is
/// the sample's own branch, and its expression evaluated at the grid point
/// reproduces the sampled value exactly.
fn close_row(
    spec: &BifunctionSpec,
    x: f64,
    grid: &Grid,
    samples: &[f64],
    refinement: u32,
) -> Vec<f64> {
    let mut out = samples.to_vec();
    let h = grid.spacing();
    if refinement < 2 || h <= 0.0 {
        return out;
    }
    let delta = h / f64::from(refinement);
    let last = grid.count() - 1;
    for (j, value) in out.iter_mut().enumerate() {
        let yj = grid.point(j);
        for side in [-1.0, 1.0] {
            if (side < 0.0 && j == 0) || (side > 0.0 && j == last) {
                continue;
            }
            let probe = yj + side * delta;
            if !spec.domain().contains(probe) {
                continue;
            }
            let branch = spec.pieces.active_branch(x, probe);
            let limit = spec.pieces.eval_branch(branch, x, yj);
            if limit.is_finite() {
                *value = value.min(limit);
            }
        }
    }
    out
}

/// Row-wise regularization of a value table, with the source spec available
/// for closure probing.
///
/// Every kind first replaces each row by its one-sided closure (when `source`
/// is given), then applies the row envelope the kind calls for. On a finite
/// grid the closed and plain variants of the convex and quasiconvex kinds
/// coincide in value — the distinction between them is carried by the family
/// classification, not by the table arithmetic.
pub fn regularize_with(
    table: &ValueTable,
    kind: EnvelopeKind,
    source: Option<&BifunctionSpec>,
    refinement: u32,
) -> Result<ValueTable, BifunctionError> {
    let grid = table.grid().clone();
    let mut rows = Vec::with_capacity(table.count());
    for (i, row) in table.values().iter().enumerate() {
        let x = grid.point(i);
        let closed = match source {
            Some(spec) => close_row(spec, x, &grid, row, refinement),
            None => row.clone(),
        };
        let regular = match kind.value_class() {
            ValueClass::Lsc => closed,
            ValueClass::Convex => {
                let f = SampledFunction::from_finite(grid.clone(), closed)?;
                convex_envelope(&f)?.finite_values()?
            }
            ValueClass::Quasiconvex => {
                let f = SampledFunction::from_finite(grid.clone(), closed)?;
                quasiconvex_envelope(&f)?.finite_values()?
            }
        };
        rows.push(regular);
    }
    ValueTable::new(grid, rows)
}

/// Row-wise regularization of bare samples (no closure probing).
pub fn regularize(table: &ValueTable, kind: EnvelopeKind) -> Result<ValueTable, BifunctionError> {
    regularize_with(table, kind, None, DEFAULT_REFINEMENT)
}

/// The six families a bifunction is classified against, named for what its
/// rows `y ↦ f(x, y)` must support across growing truncations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Convex,
    Quasiconvex,
    ConvexClosed,
    QuasiconvexClosed,
    Lsc,
    SemistrictlyQuasiconvex,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Convex,
        Family::Quasiconvex,
        Family::ConvexClosed,
        Family::QuasiconvexClosed,
        Family::Lsc,
        Family::SemistrictlyQuasiconvex,
    ];
}

/// Classification outcome for one family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    /// Some probed envelope value ran away as the truncation grew.
    NotMember,
    /// Envelope values are finite on every truncation inspected but had not
    /// settled by the last level.
    MemberOnCompactTruncations,
    /// Probed envelope values stabilized across truncation levels.
    Member,
}

/// The envelope-value trajectory that decided a non-stable verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivergenceEvidence {
    pub probe_x: f64,
    pub probe_y: f64,
    /// Regularized value at `(probe_x, probe_y)` per truncation level.
    pub trajectory: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyVerdict {
    pub family: Family,
    pub membership: Membership,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<DivergenceEvidence>,
    /// Shape check of the rows at the finest level (informational for the
    /// envelope families, decisive for the semistrict one).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape_witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub name: String,
    pub levels: Vec<u32>,
    pub probes: Vec<f64>,
    pub verdicts: Vec<FamilyVerdict>,
}

impl FamilyReport {
    pub fn verdict(&self, family: Family) -> &FamilyVerdict {
        self.verdicts
            .iter()
            .find(|v| v.family == family)
            .expect("all families are reported")
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Points whose envelope values are tracked across levels; they must lie
    /// on the coarsest truncation grid. Defaults to all of its points.
    pub probes: Option<Vec<f64>>,
    /// A trajectory ending below `-divergence_bound` counts as diverged even
    /// if its steps are irregular.
    pub divergence_bound: f64,
    pub tolerance: Tolerance,
    pub refinement: u32,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            probes: None,
            divergence_bound: 1e3,
            tolerance: Tolerance::default(),
            refinement: DEFAULT_REFINEMENT,
        }
    }
}

/// How one probe pair's trajectory across levels is judged.
#[derive(Clone, Copy, PartialEq, Eq)]
enum PairFate {
    Stable,
    Diverged,
    Unsettled,
}

fn pair_fate(trajectory: &[f64], tol: Tolerance, bound: f64) -> PairFate {
    let n = trajectory.len();
    let last = trajectory[n - 1];
    if (last - trajectory[n - 2]).abs() <= tol.slack {
        return PairFate::Stable;
    }
    let sinking = trajectory
        .windows(2)
        .all(|w| w[1] < w[0] - tol.slack);
    if sinking || last < -bound {
        return PairFate::Diverged;
    }
    PairFate::Unsettled
}

/// Classifies a bifunction against the six families by regularizing it on
/// each truncation level and watching the regularized values at fixed probe
/// pairs.
///
/// A family's envelope exists on the unbounded domain exactly when the
/// truncated envelopes stop changing: stabilized probes mean membership, a
/// trajectory that sinks at every step (or past the divergence bound) means
/// the envelope runs to `-∞` and membership fails, and anything else is
/// recorded as holding on compact truncations only. The closed families can
/// never do better than the lsc family, nor the convex ones better than
/// their quasiconvex relatives, and the verdicts are reconciled along those
/// containments. The semistrictly quasiconvex family has no envelope of its
/// own: it requires the quasiconvex envelope to exist *and* the
/// quasiconvex-regularized rows at the finest level to pass the semistrict
/// shape check.
pub fn classify_families(
    spec: &BifunctionSpec,
    schedule: &TruncationSchedule,
    options: &ClassifyOptions,
) -> Result<FamilyReport, BifunctionError> {
    let levels: Vec<u32> = schedule.levels().collect();
    if levels.len() < 2 {
        return Err(BifunctionError::ScheduleTooShort);
    }
    if !(options.divergence_bound > 0.0 && options.divergence_bound.is_finite()) {
        return Err(BifunctionError::BadDivergenceBound {
            bound: options.divergence_bound,
        });
    }
    let coarsest = schedule.truncation(levels[0])?;
    let probes: Vec<f64> = match &options.probes {
        Some(points) => {
            for &p in points {
                if coarsest.grid().index_of(p).is_none() {
                    return Err(BifunctionError::ProbeOffGrid { point: p });
                }
            }
            points.clone()
        }
        None => coarsest.grid().points().to_vec(),
    };
    if probes.is_empty() {
        return Err(BifunctionError::NoProbes);
    }

    // trajectories[class][pair] — one regularized value per level.
    let classes = [ValueClass::Convex, ValueClass::Quasiconvex, ValueClass::Lsc];
    let kind_of = |class: ValueClass| match class {
        ValueClass::Convex => EnvelopeKind::Convex,
        ValueClass::Quasiconvex => EnvelopeKind::Quasiconvex,
        ValueClass::Lsc => EnvelopeKind::Lsc,
    };
    let pair_count = probes.len() * probes.len();
    let mut trajectories: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); pair_count]; classes.len()];
    let mut finest_closed: Option<ValueTable> = None;
    let mut finest_quasi: Option<ValueTable> = None;

    for &level in &levels {
        let truncation = schedule.truncation(level)?;
        let grid = truncation.grid();
        let table = sample_matrix(spec, grid)?;
        let index_of = |p: f64| {
            grid.index_of(p)
                .expect("probe points persist on nested truncations")
        };
        let finest = level == *levels.last().expect("nonempty");
        for (c, &class) in classes.iter().enumerate() {
            let regular = regularize_with(&table, kind_of(class), Some(spec), options.refinement)?;
            for (a, &px) in probes.iter().enumerate() {
                let row = index_of(px);
                for (b, &py) in probes.iter().enumerate() {
                    let col = index_of(py);
                    trajectories[c][a * probes.len() + b].push(regular.value(row, col));
                }
            }
            if finest && class == ValueClass::Lsc {
                finest_closed = Some(regular);
            } else if finest && class == ValueClass::Quasiconvex {
                finest_quasi = Some(regular);
            }
        }
    }
    let finest_closed = finest_closed.expect("the last level fills this");
    let finest_quasi = finest_quasi.expect("the last level fills this");

    // Trajectory verdict per envelope class.
    let judge = |class_index: usize| -> (Membership, Option<DivergenceEvidence>) {
        let mut unsettled: Option<usize> = None;
        for (pair, trajectory) in trajectories[class_index].iter().enumerate() {
            match pair_fate(trajectory, options.tolerance, options.divergence_bound) {
                PairFate::Diverged => {
                    return (
                        Membership::NotMember,
                        Some(evidence_for(&probes, pair, trajectory)),
                    )
                }
                PairFate::Unsettled => {
                    unsettled.get_or_insert(pair);
                }
                PairFate::Stable => {}
            }
        }
        match unsettled {
            Some(pair) => (
                Membership::MemberOnCompactTruncations,
                Some(evidence_for(
                    &probes,
                    pair,
                    &trajectories[class_index][pair],
                )),
            ),
            None => (Membership::Member, None),
        }
    };

    let (convex_m, convex_e) = judge(0);
    let (quasi_m, quasi_e) = judge(1);
    let (lsc_m, lsc_e) = judge(2);

    // Shape checks: informational convex/quasiconvex witnesses diagnose the
    // closed rows; the decisive semistrict check runs on the
    // quasiconvex-regularized rows (the family is defined through them).
    let row_shape =
        |table: &ValueTable, shape: ShapeKind| -> Result<Option<Witness>, BifunctionError> {
            for (i, row) in table.values().iter().enumerate() {
                let f = SampledFunction::from_finite(table.grid().clone(), row.clone())?;
                let verdict = shape_check(&f, shape, options.tolerance)?;
                if let Some(witness) = verdict.into_witness() {
                    let x = table.grid().point(i);
                    return Ok(Some(witness.with_point("row", i, x)));
                }
            }
            Ok(None)
        };
    let convex_shape = row_shape(&finest_closed, ShapeKind::Convex)?;
    let quasi_shape = row_shape(&finest_closed, ShapeKind::Quasiconvex)?;
    let semistrict_shape = row_shape(&finest_quasi, ShapeKind::SemistrictlyQuasiconvex)?;

    let mut verdicts = vec![
        FamilyVerdict {
            family: Family::Convex,
            membership: convex_m,
            evidence: convex_e.clone(),
            shape_witness: convex_shape.clone(),
        },
        FamilyVerdict {
            family: Family::Quasiconvex,
            membership: quasi_m,
            evidence: quasi_e.clone(),
            shape_witness: quasi_shape.clone(),
        },
        FamilyVerdict {
            family: Family::ConvexClosed,
            membership: convex_m,
            evidence: convex_e,
            shape_witness: convex_shape,
        },
        FamilyVerdict {
            family: Family::QuasiconvexClosed,
            membership: quasi_m,
            evidence: quasi_e.clone(),
            shape_witness: quasi_shape.clone(),
        },
        FamilyVerdict {
            family: Family::Lsc,
            membership: lsc_m,
            evidence: lsc_e,
            shape_witness: None,
        },
        FamilyVerdict {
            family: Family::SemistrictlyQuasiconvex,
            membership: if semistrict_shape.is_some() {
                Membership::NotMember
            } else {
                Membership::Member
            },
            evidence: None,
            shape_witness: semistrict_shape,
        },
    ];

    // Containments: closed-quasiconvex ⊆ lsc, closed-convex ⊆ closed-qc,
    // convex ⊆ quasiconvex, semistrict ⊆ quasiconvex. A verdict can never
    // exceed the verdict of a family containing it.
    reconcile(&mut verdicts, Family::QuasiconvexClosed, Family::Lsc);
    reconcile(&mut verdicts, Family::ConvexClosed, Family::QuasiconvexClosed);
    reconcile(&mut verdicts, Family::Convex, Family::Quasiconvex);
    reconcile(
        &mut verdicts,
        Family::SemistrictlyQuasiconvex,
        Family::Quasiconvex,
    );

    Ok(FamilyReport {
        name: spec.name().to_string(),
        levels,
        probes,
        verdicts,
    })
}

fn evidence_for(probes: &[f64], pair: usize, trajectory: &[f64]) -> DivergenceEvidence {
    DivergenceEvidence {
        probe_x: probes[pair / probes.len()],
        probe_y: probes[pair % probes.len()],
        trajectory: trajectory.to_vec(),
    }
}

fn reconcile(verdicts: &mut [FamilyVerdict], smaller: Family, larger: Family) {
    let larger_idx = verdicts.iter().position(|v| v.family == larger).unwrap();
    let smaller_idx = verdicts.iter().position(|v| v.family == smaller).unwrap();
    if verdicts[larger_idx].membership < verdicts[smaller_idx].membership {
        verdicts[smaller_idx].membership = verdicts[larger_idx].membership;
        if verdicts[smaller_idx].evidence.is_none() {
            verdicts[smaller_idx].evidence = verdicts[larger_idx].evidence.clone();
        }
    }
}
