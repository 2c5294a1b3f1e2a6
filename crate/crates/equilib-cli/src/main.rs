//! `equilib` — command-line harness for grid-sampled equilibrium problems.
//!
//! Every run emits a single report (JSON by default, CSV where a tabular
//! form exists) that is byte-identical across re-runs with the same flags
//! and seeds, except for the `timestamp` field.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use equilib::bifunction::{
    classify_families, regularize_with, sample_matrix, BifunctionSpec, ClassifyOptions,
    ValueTable, DEFAULT_REFINEMENT,
};
use equilib::envelope::{EnvelopeKind, SampledFunction};
use equilib::fixtures::{fixture, run_example};
use equilib::properties::{
    check_monotonicity, check_properly_quasimonotone, check_segment_condition, check_upper_sign,
    MonotonicityKind, ProperlyQuasimonotoneMethod, Scope, SegmentCondition,
};
use equilib::report::{sampled_to_csv, solutions_to_csv, table_to_csv, Report};
use equilib::solvers::{
    check_coercivity, existence_pipeline, solve_cfp, solve_ep, CoercivityKind, PipelineVariant,
};
use equilib::suites::{run_suite, SuiteConfig, SuiteKind};
use equilib::verdict::Tolerance;

#[derive(Parser)]
#[command(
    name = "equilib",
    version,
    about = "Equilibrium problems, bifunction regularization, and monotonicity checks on 1-d grids"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Regularize a bifunction row-by-row and dump the resulting table.
    Regularize(RegularizeArgs),
    /// Solve the equilibrium problem: indices with min_y f(x,y) >= 0.
    SolveEp(SolveEpArgs),
    /// Solve the dual feasibility problem: indices with max_x f(x,y) <= 0.
    SolveCfp(SolveCfpArgs),
    /// Check a monotonicity, sign, or segment property of the sampled table.
    Check(CheckArgs),
    /// Classify which regularization families a bifunction belongs to.
    Classify(ClassifyArgs),
    /// Evaluate one tail-escape (coercivity) condition along a truncation schedule.
    Coercivity(CoercivityArgs),
    /// Run the truncation existence pipeline until a verified solution or exhaustion.
    Exist(ExistArgs),
    /// Run a packaged example end to end and report its expectations.
    Example(ExampleArgs),
    /// Run a randomized verification suite.
    Suite(SuiteArgs),
}

// ---------------------------------------------------------------------------
// Shared flag groups
// ---------------------------------------------------------------------------

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Name of a packaged bifunction (see `equilib example --help` for the list).
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Path to a bifunction spec file (`name:` / `domain:` / `expression:` lines).
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
}

impl SourceArgs {
    fn resolve(&self) -> Result<(BifunctionSpec, Option<&'static equilib::fixtures::Fixture>)> {
        if let Some(name) = &self.builtin {
            let fx = fixture(name)?;
            return Ok((fx.spec(), Some(fx)));
        }
        let path = self.input.as_ref().expect("clap enforces the group");
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading spec file {}", path.display()))?;
        let spec = BifunctionSpec::parse_file(&text)
            .with_context(|| format!("parsing spec file {}", path.display()))?;
        Ok((spec, None))
    }
}

/// `lower:upper:count`, e.g. `0:1:201`.
#[derive(Clone, Copy)]
struct GridFlag {
    lower: f64,
    upper: f64,
    count: usize,
}

impl FromStr for GridFlag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lower, upper, count] = parts.as_slice() else {
            return Err(format!("expected lower:upper:count, got `{s}`"));
        };
        Ok(GridFlag {
            lower: lower.parse().map_err(|e| format!("bad lower bound: {e}"))?,
            upper: upper.parse().map_err(|e| format!("bad upper bound: {e}"))?,
            count: count.parse().map_err(|e| format!("bad point count: {e}"))?,
        })
    }
}

/// `hmin:nmin:nmax`, e.g. `0.125:1:8`.
#[derive(Clone, Copy)]
struct ScheduleFlag {
    spacing: f64,
    n_min: u32,
    n_max: u32,
}

impl FromStr for ScheduleFlag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [spacing, n_min, n_max] = parts.as_slice() else {
            return Err(format!("expected hmin:nmin:nmax, got `{s}`"));
        };
        Ok(ScheduleFlag {
            spacing: spacing.parse().map_err(|e| format!("bad spacing: {e}"))?,
            n_min: n_min.parse().map_err(|e| format!("bad first level: {e}"))?,
            n_max: n_max.parse().map_err(|e| format!("bad last level: {e}"))?,
        })
    }
}

#[derive(Args)]
struct TolArgs {
    /// Slack tolerance for non-strict comparisons.
    #[arg(long, value_name = "EPS", default_value_t = 1e-9)]
    tol: f64,
    /// Threshold for strict comparisons.
    #[arg(long = "tol-strict", value_name = "EPS", default_value_t = 1e-12)]
    tol_strict: f64,
}

impl TolArgs {
    fn tolerance(&self) -> Tolerance {
        Tolerance::new(self.tol, self.tol_strict)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format. CSV exists for `regularize`, `solve-ep`, and `solve-cfp`.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindFlag {
    /// Lower semicontinuous closure.
    S,
    /// Convex envelope.
    C,
    /// Quasiconvex envelope.
    Q,
    /// Closed convex envelope.
    Cbar,
    /// Closed quasiconvex envelope.
    Qbar,
}

impl KindFlag {
    fn kind(self) -> EnvelopeKind {
        match self {
            KindFlag::S => EnvelopeKind::Lsc,
            KindFlag::C => EnvelopeKind::Convex,
            KindFlag::Q => EnvelopeKind::Quasiconvex,
            KindFlag::Cbar => EnvelopeKind::ConvexClosed,
            KindFlag::Qbar => EnvelopeKind::QuasiconvexClosed,
        }
    }

    fn name(self) -> &'static str {
        match self {
            KindFlag::S => "s",
            KindFlag::C => "c",
            KindFlag::Q => "q",
            KindFlag::Cbar => "cbar",
            KindFlag::Qbar => "qbar",
        }
    }
}

// ---------------------------------------------------------------------------
// Per-verb argument sets
// ---------------------------------------------------------------------------

#[derive(Args)]
struct RegularizeArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Sampling grid as lower:upper:count (defaults to the builtin's grid).
    #[arg(long, value_name = "L:U:N")]
    grid: Option<GridFlag>,
    /// Which envelope to apply to each row.
    #[arg(long, value_enum)]
    kind: KindFlag,
    /// Probe factor for one-sided closures at branch points.
    #[arg(long, value_name = "K", default_value_t = DEFAULT_REFINEMENT)]
    refinement: u32,
    /// Dump only the regularized row at first argument x = X.
    #[arg(long, value_name = "X")]
    row: Option<f64>,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SolveEpArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_name = "L:U:N")]
    grid: Option<GridFlag>,
    /// Regularize each row with this envelope before solving.
    #[arg(long, value_enum)]
    kind: Option<KindFlag>,
    #[arg(long, value_name = "K", default_value_t = DEFAULT_REFINEMENT)]
    refinement: u32,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SolveCfpArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_name = "L:U:N")]
    grid: Option<GridFlag>,
    /// Regularize each row with this envelope before solving.
    #[arg(long, value_enum)]
    kind: Option<KindFlag>,
    #[arg(long, value_name = "K", default_value_t = DEFAULT_REFINEMENT)]
    refinement: u32,
    /// Accept points that satisfy the dual inequality only within this radius.
    #[arg(long, value_name = "R")]
    radius: Option<f64>,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyFlag {
    Monotone,
    Pseudomonotone,
    Quasimonotone,
    ProperlyQuasimonotone,
    UpperSign,
    Alpha,
    Beta,
}

impl PropertyFlag {
    fn name(self) -> &'static str {
        match self {
            PropertyFlag::Monotone => "monotone",
            PropertyFlag::Pseudomonotone => "pseudomonotone",
            PropertyFlag::Quasimonotone => "quasimonotone",
            PropertyFlag::ProperlyQuasimonotone => "properly-quasimonotone",
            PropertyFlag::UpperSign => "upper-sign",
            PropertyFlag::Alpha => "alpha",
            PropertyFlag::Beta => "beta",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodFlag {
    Pair,
    Subset,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_name = "L:U:N")]
    grid: Option<GridFlag>,
    /// Which property to check.
    #[arg(long, value_enum)]
    property: PropertyFlag,
    /// Witness search strategy for properly-quasimonotone.
    #[arg(long, value_enum, default_value_t = MethodFlag::Pair)]
    method: MethodFlag,
    /// Restrict upper-sign to pairs within this radius.
    #[arg(long, value_name = "R")]
    radius: Option<f64>,
    /// Regularize each row with this envelope before checking.
    #[arg(long, value_enum)]
    kind: Option<KindFlag>,
    #[arg(long, value_name = "K", default_value_t = DEFAULT_REFINEMENT)]
    refinement: u32,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Truncation schedule as hmin:nmin:nmax (defaults to the builtin's schedule).
    #[arg(long, value_name = "H:NMIN:NMAX")]
    schedule: Option<ScheduleFlag>,
    /// Envelope trajectories ending below minus this bound count as diverged.
    #[arg(long = "divergence-bound", value_name = "B", default_value_t = 1e3)]
    divergence_bound: f64,
    #[arg(long, value_name = "K", default_value_t = DEFAULT_REFINEMENT)]
    refinement: u32,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionFlag {
    C1,
    C2,
    C3,
}

#[derive(Args)]
struct CoercivityArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_name = "H:NMIN:NMAX")]
    schedule: Option<ScheduleFlag>,
    /// Which escape condition to evaluate.
    #[arg(long, value_enum)]
    condition: ConditionFlag,
    /// Evaluate the condition on rows regularized with this envelope.
    #[arg(long, value_enum)]
    kind: Option<KindFlag>,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantFlag {
    C2,
    C3,
}

#[derive(Args)]
struct ExistArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_name = "H:NMIN:NMAX")]
    schedule: Option<ScheduleFlag>,
    /// Candidate rule: c2 scans equilibria, c3 scans dual solutions.
    #[arg(long, value_enum)]
    variant: VariantFlag,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ExampleArgs {
    /// Packaged example to run.
    name: String,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SuiteArgs {
    /// Verification suite to run.
    name: String,
    /// Randomized instances per claim family.
    #[arg(long, default_value_t = 500)]
    instances: usize,
    /// Base seed; every drawn instance's seed derives from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    tol: TolArgs,
    #[command(flatten)]
    output: OutputArgs,
}

// ---------------------------------------------------------------------------
// Input resolution
// ---------------------------------------------------------------------------

fn resolve_grid(
    spec: &BifunctionSpec,
    fx: Option<&equilib::fixtures::Fixture>,
    flag: Option<GridFlag>,
) -> Result<equilib::grid::Grid> {
    if let Some(g) = flag {
        return Ok(equilib::grid::Grid::uniform(g.lower, g.upper, g.count)?);
    }
    if let Some(fx) = fx {
        if let Some(grid) = fx.default_grid() {
            return Ok(grid);
        }
    }
    let domain = spec.domain();
    if domain.is_bounded() {
        let lower = domain.lower().finite().expect("bounded");
        let upper = domain.upper().finite().expect("bounded");
        return Ok(equilib::grid::Grid::uniform(lower, upper, 201)?);
    }
    bail!(
        "`{}` has unbounded domain {}; pass --grid lower:upper:count to choose a window",
        spec.name(),
        domain
    );
}

fn resolve_schedule(
    spec: &BifunctionSpec,
    fx: Option<&equilib::fixtures::Fixture>,
    flag: Option<ScheduleFlag>,
) -> Result<equilib::grid::TruncationSchedule> {
    if let Some(s) = flag {
        return Ok(equilib::grid::TruncationSchedule::new(
            spec.domain(),
            s.spacing,
            s.n_min,
            s.n_max,
        )?);
    }
    if let Some(fx) = fx {
        if let Some(schedule) = fx.default_schedule() {
            return Ok(schedule);
        }
    }
    bail!(
        "no default schedule for `{}`; pass --schedule hmin:nmin:nmax",
        spec.name()
    );
}

fn grid_input(grid: &equilib::grid::Grid) -> String {
    format!("{}:{}:{}", grid.lower(), grid.upper(), grid.count())
}

fn schedule_input(schedule: &equilib::grid::TruncationSchedule) -> String {
    format!(
        "{}:{}:{}",
        schedule.spacing(),
        schedule.n_min(),
        schedule.n_max()
    )
}

/// The raw sample plus an optional regularization pass shared by the
/// solve/check verbs.
fn prepared_table(
    spec: &BifunctionSpec,
    grid: &equilib::grid::Grid,
    kind: Option<KindFlag>,
    refinement: u32,
) -> Result<ValueTable> {
    let table = sample_matrix(spec, grid)?;
    match kind {
        Some(k) => Ok(regularize_with(&table, k.kind(), Some(spec), refinement)?),
        None => Ok(table),
    }
}

fn spec_inputs(report: Report, spec: &BifunctionSpec, source: &SourceArgs) -> Report {
    let report = report
        .with_input("name", spec.name())
        .with_input("domain", spec.domain())
        .with_input("expression", spec.expression());
    match (&source.builtin, &source.input) {
        (Some(name), _) => report.with_input("builtin", name),
        (_, Some(path)) => report.with_input("input", path.display().to_string()),
        _ => report,
    }
}

fn command_line() -> String {
    let mut args: Vec<String> = std::env::args().collect();
    if let Some(first) = args.first_mut() {
        // The binary may be invoked through an arbitrary path; normalize so
        // reports do not depend on the install location.
        *first = "equilib".to_string();
    }
    args.join(" ")
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

fn emit(output: &OutputArgs, text: String) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(output: &OutputArgs, report: &Report) -> Result<()> {
    emit(output, report.to_json_pretty())
}

fn no_csv(verb: &str) -> anyhow::Error {
    anyhow::anyhow!(
        "`{verb}` has no CSV form; CSV exists for `regularize`, `solve-ep`, and `solve-cfp` — use --format json"
    )
}

// ---------------------------------------------------------------------------
// Verb implementations
// ---------------------------------------------------------------------------

fn run_regularize(args: RegularizeArgs) -> Result<()> {
    let (spec, fx) = args.source.resolve()?;
    let grid = resolve_grid(&spec, fx, args.grid)?;
    let table = sample_matrix(&spec, &grid)?;
    let reg = regularize_with(&table, args.kind.kind(), Some(&spec), args.refinement)?;

    let row = match args.row {
        Some(x) => {
            let Some(index) = grid.index_of(x) else {
                bail!("--row {x} is not a grid point of {}", grid_input(&grid));
            };
            let f = SampledFunction::from_finite(grid.clone(), reg.row(index).to_vec())?;
            Some((x, f))
        }
        None => None,
    };

    if args.output.format == Format::Csv {
        let text = match &row {
            Some((_, f)) => sampled_to_csv("y", f),
            None => table_to_csv(&reg),
        };
        return emit(&args.output, text);
    }

    let mut report = spec_inputs(Report::new(&command_line()), &spec, &args.source)
        .with_input("grid", grid_input(&grid))
        .with_input("kind", args.kind.name())
        .with_input("refinement", args.refinement);
    let mut tables = BTreeMap::new();
    tables.insert("original".to_string(), (&table).into());
    tables.insert("regularized".to_string(), (&reg).into());
    report.results.tables = Some(tables);
    if let Some((x, f)) = row {
        report = report.with_input("row", x);
        let mut functions = BTreeMap::new();
        functions.insert("row".to_string(), (&f).into());
        report.results.functions = Some(functions);
    }
    emit_json(&args.output, &report)
}

fn run_solve_ep(args: SolveEpArgs) -> Result<()> {
    let (spec, fx) = args.source.resolve()?;
    let grid = resolve_grid(&spec, fx, args.grid)?;
    let table = prepared_table(&spec, &grid, args.kind, args.refinement)?;
    let set = solve_ep(&table, args.tol.tolerance());

    if args.output.format == Format::Csv {
        return emit(&args.output, solutions_to_csv(&set));
    }

    let mut report = spec_inputs(Report::new(&command_line()), &spec, &args.source)
        .with_input("grid", grid_input(&grid))
        .with_input("tol", args.tol.tol)
        .with_input("tol-strict", args.tol.tol_strict);
    if let Some(kind) = args.kind {
        report = report.with_input("kind", kind.name());
    }
    let mut sets = BTreeMap::new();
    sets.insert("ep".to_string(), set);
    report.results.solution_sets = Some(sets);
    emit_json(&args.output, &report)
}

fn run_solve_cfp(args: SolveCfpArgs) -> Result<()> {
    let (spec, fx) = args.source.resolve()?;
    let grid = resolve_grid(&spec, fx, args.grid)?;
    let table = prepared_table(&spec, &grid, args.kind, args.refinement)?;
    let scope = match args.radius {
        Some(r) => Scope::Local(r),
        None => Scope::Global,
    };
    let set = solve_cfp(&table, scope, args.tol.tolerance())?;

    if args.output.format == Format::Csv {
        return emit(&args.output, solutions_to_csv(&set));
    }

    let mut report = spec_inputs(Report::new(&command_line()), &spec, &args.source)
        .with_input("grid", grid_input(&grid))
        .with_input("tol", args.tol.tol)
        .with_input("tol-strict", args.tol.tol_strict);
    if let Some(kind) = args.kind {
        report = report.with_input("kind", kind.name());
    }
    if let Some(r) = args.radius {
        report = report.with_input("radius", r);
    }
    let mut sets = BTreeMap::new();
    sets.insert("cfp".to_string(), set);
    report.results.solution_sets = Some(sets);
    emit_json(&args.output, &report)
}

fn run_check(args: CheckArgs) -> Result<()> {
    if args.output.format == Format::Csv {
        return Err(no_csv("check"));
    }
    let (spec, fx) = args.source.resolve()?;
    let grid = resolve_grid(&spec, fx, args.grid)?;
    let table = prepared_table(&spec, &grid, args.kind, args.refinement)?;
    let tol = args.tol.tolerance();

    let scope = match args.radius {
        Some(r) => Scope::Local(r),
        None => Scope::Global,
    };
    let verdict = match args.property {
        PropertyFlag::Monotone => check_monotonicity(&table, MonotonicityKind::Monotone, tol),
        PropertyFlag::Pseudomonotone => {
            check_monotonicity(&table, MonotonicityKind::Pseudomonotone, tol)
        }
        PropertyFlag::Quasimonotone => {
            check_monotonicity(&table, MonotonicityKind::Quasimonotone, tol)
        }
        PropertyFlag::ProperlyQuasimonotone => {
            let method = match args.method {
                MethodFlag::Pair => ProperlyQuasimonotoneMethod::Pair,
                MethodFlag::Subset => ProperlyQuasimonotoneMethod::Subset,
            };
            check_properly_quasimonotone(&table, method, tol)?
        }
        PropertyFlag::UpperSign => check_upper_sign(&table, scope, tol)?,
        PropertyFlag::Alpha => check_segment_condition(&table, SegmentCondition::Alpha, tol),
        PropertyFlag::Beta => check_segment_condition(&table, SegmentCondition::Beta, tol),
    };

    let mut report = spec_inputs(Report::new(&command_line()), &spec, &args.source)
        .with_input("grid", grid_input(&grid))
        .with_input("property", args.property.name())
        .with_input("tol", args.tol.tol)
        .with_input("tol-strict", args.tol.tol_strict);
    if matches!(args.property, PropertyFlag::ProperlyQuasimonotone) {
        let method = match args.method {
            MethodFlag::Pair => "pair",
            MethodFlag::Subset => "subset",
        };
        report = report.with_input("method", method);
    }
    if let Some(r) = args.radius {
        report = report.with_input("radius", r);
    }
    if let Some(kind) = args.kind {
        report = report.with_input("kind", kind.name());
    }
    let mut verdicts = BTreeMap::new();
    verdicts.insert(args.property.name().to_string(), verdict);
    report.results.verdicts = Some(verdicts);
    emit_json(&args.output, &report)
}

fn run_classify(args: ClassifyArgs) -> Result<()> {
    if args.output.format == Format::Csv {
        return Err(no_csv("classify"));
    }
    let (spec, fx) = args.source.resolve()?;
    let schedule = resolve_schedule(&spec, fx, args.schedule)?;
    let options = ClassifyOptions {
        probes: None,
        divergence_bound: args.divergence_bound,
        tolerance: args.tol.tolerance(),
        refinement: args.refinement,
    };
    let families = classify_families(&spec, &schedule, &options)?;

    let mut report = spec_inputs(Report::new(&command_line()), &spec, &args.source)
        .with_input("schedule", schedule_input(&schedule))
        .with_input("divergence-bound", args.divergence_bound)
        .with_input("refinement", args.refinement);
    report.results.families = Some(families);
    emit_json(&args.output, &report)
}

fn run_coercivity(args: CoercivityArgs) -> Result<()> {
    if args.output.format == Format::Csv {
        return Err(no_csv("coercivity"));
    }
    let (spec, fx) = args.source.resolve()?;
    let schedule = resolve_schedule(&spec, fx, args.schedule)?;
    let (condition, label) = match args.condition {
        ConditionFlag::C1 => (CoercivityKind::C1, "c1"),
        ConditionFlag::C2 => (CoercivityKind::C2, "c2"),
        ConditionFlag::C3 => (CoercivityKind::C3, "c3"),
    };
    let regularization = args.kind.map(KindFlag::kind);
    let coercivity =
        check_coercivity(&spec, &schedule, condition, regularization, args.tol.tolerance())?;

    let mut report = spec_inputs(Report::new(&command_line()), &spec, &args.source)
        .with_input("schedule", schedule_input(&schedule))
        .with_input("condition", label);
    if let Some(kind) = args.kind {
        report = report.with_input("kind", kind.name());
    }
    report.results.coercivity = Some(coercivity);
    emit_json(&args.output, &report)
}

fn run_exist(args: ExistArgs) -> Result<()> {
    if args.output.format == Format::Csv {
        return Err(no_csv("exist"));
    }
    let (spec, fx) = args.source.resolve()?;
    let schedule = resolve_schedule(&spec, fx, args.schedule)?;
    let (variant, label) = match args.variant {
        VariantFlag::C2 => (PipelineVariant::C2, "c2"),
        VariantFlag::C3 => (PipelineVariant::C3, "c3"),
    };
    let pipeline = existence_pipeline(&spec, &schedule, variant, args.tol.tolerance())?;

    let mut report = spec_inputs(Report::new(&command_line()), &spec, &args.source)
        .with_input("schedule", schedule_input(&schedule))
        .with_input("variant", label);
    report.results.pipeline = Some(pipeline);
    emit_json(&args.output, &report)
}

fn run_example_verb(args: ExampleArgs) -> Result<()> {
    if args.output.format == Format::Csv {
        return Err(no_csv("example"));
    }
    let suite = run_example(&args.name, args.tol.tolerance())?;

    let mut report = Report::new(&command_line()).with_input("example", &args.name);
    report.results.suite = Some(suite);
    emit_json(&args.output, &report)
}

fn run_suite_verb(args: SuiteArgs) -> Result<()> {
    if args.output.format == Format::Csv {
        return Err(no_csv("suite"));
    }
    let Some(kind) = SuiteKind::from_name(&args.name) else {
        let names: Vec<&str> = SuiteKind::ALL.iter().map(|k| k.name()).collect();
        bail!(
            "unknown suite `{}`; available suites: {}",
            args.name,
            names.join(", ")
        );
    };
    let config = SuiteConfig {
        instances: args.instances,
        seed: args.seed,
        tolerance: args.tol.tolerance(),
    };
    let suite = run_suite(kind, &config);

    let mut report = Report::new(&command_line())
        .with_input("suite", kind.name())
        .with_input("instances", args.instances)
        .with_input("seed", args.seed);
    report.seeds = vec![args.seed];
    report.results.suite = Some(suite);
    emit_json(&args.output, &report)
}

fn run() -> Result<()> {
    match Cli::parse().verb {
        Verb::Regularize(args) => run_regularize(args),
        Verb::SolveEp(args) => run_solve_ep(args),
        Verb::SolveCfp(args) => run_solve_cfp(args),
        Verb::Check(args) => run_check(args),
        Verb::Classify(args) => run_classify(args),
        Verb::Coercivity(args) => run_coercivity(args),
        Verb::Exist(args) => run_exist(args),
        Verb::Example(args) => run_example_verb(args),
        Verb::Suite(args) => run_suite_verb(args),
    }
}

fn main() {
    if let Err(error) = run() {
        // `{:#}` prints the context chain on one line, without a backtrace.
        eprintln!("error: {error:#}");
        std::process::exit(1);
    }
}
