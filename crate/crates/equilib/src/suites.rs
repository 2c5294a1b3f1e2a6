//! Randomized property suites.
//!
//! Each suite states a handful of claims, exercises them over seeded
//! instances, and reports one check per claim. A failing check carries the
//! first failing seed so the instance can be replayed exactly. The claims
//! are chosen so that they hold *exactly* under the checker tolerances —
//! generated magnitudes stay far from the tolerance boundaries — which is
//! what lets the suites demand zero failures rather than a failure budget.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bifunction::{regularize, ValueTable};
use crate::envelope::{
    affine_minorant, convex_envelope, envelope_of, envelope_oracle, shape_check, EnvelopeKind,
    SampledFunction, ShapeKind,
};
use crate::fixtures;
use crate::generators::{random_bifunction, InstanceClass};
use crate::grid::{Grid, TruncationSchedule};
use crate::properties::{
    check_monotonicity, check_properly_quasimonotone, check_segment_condition, check_upper_sign,
    MonotonicityKind, ProperlyQuasimonotoneMethod, Scope, SegmentCondition,
};
use crate::report::{CheckOutcome, SuiteReport};
use crate::solvers::{
    check_coercivity, existence_pipeline, ky_fan_point, solve_cfp, solve_ep, CoercivityKind,
    PipelineOutcome, PipelineVariant,
};
use crate::verdict::Tolerance;

/// How a suite is parameterized.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteConfig {
    /// Instances per claim family (some suites multiply this by their
    /// instance-class count).
    pub instances: usize,
    /// Master seed; instance seeds are derived from it.
    pub seed: u64,
    pub tolerance: Tolerance,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            instances: 500,
            seed: 0,
            tolerance: Tolerance::default(),
        }
    }
}

/// The available property suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteKind {
    /// Fast envelopes against definition-level oracles, idempotence, and
    /// supporting affine minorants.
    EnvelopeOracles,
    /// Equilibrium sets are unchanged by row regularization; dual sets only
    /// grow.
    RegularizationEquality,
    /// Constructed monotonicity classes survive every regularization.
    MonotonicityPreservation,
    /// Monotone implies pseudomonotone implies quasimonotone on checker
    /// outputs, and passing tables have nonpositive diagonals.
    Hierarchy,
    /// The upper sign property transfers from a dominated table to any
    /// entrywise-larger one.
    UpperSignTransfer,
    /// Wherever the upper sign property holds, dual solutions are
    /// equilibrium points.
    CfpSubsetEp,
    /// The three escape conditions form a chain, strongest first.
    CoercivityChain,
    /// Nonnegative drag shrinks equilibria, grows duals, and lowers the
    /// max-min floor.
    SolutionInclusions,
    /// Profile-difference tables with quasiconvex rows reach their diagonal
    /// minimum at the max-min point.
    KyFanFloor,
    /// On diagonal-pivoted semistrict rows, the upper sign property holds
    /// exactly when the diagonal does not sink.
    SqDiagonalCriterion,
    /// The local dual-to-equilibrium transfer under the segment premises.
    LocalCfpSubsetEp,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 11] = [
        SuiteKind::EnvelopeOracles,
        SuiteKind::RegularizationEquality,
        SuiteKind::MonotonicityPreservation,
        SuiteKind::Hierarchy,
        SuiteKind::UpperSignTransfer,
        SuiteKind::CfpSubsetEp,
        SuiteKind::CoercivityChain,
        SuiteKind::SolutionInclusions,
        SuiteKind::KyFanFloor,
        SuiteKind::SqDiagonalCriterion,
        SuiteKind::LocalCfpSubsetEp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::EnvelopeOracles => "envelope-oracles",
            SuiteKind::RegularizationEquality => "regularization-equality",
            SuiteKind::MonotonicityPreservation => "monotonicity-preservation",
            SuiteKind::Hierarchy => "hierarchy",
            SuiteKind::UpperSignTransfer => "upper-sign-transfer",
            SuiteKind::CfpSubsetEp => "cfp-subset-ep",
            SuiteKind::CoercivityChain => "coercivity-chain",
            SuiteKind::SolutionInclusions => "solution-inclusions",
            SuiteKind::KyFanFloor => "ky-fan-floor",
            SuiteKind::SqDiagonalCriterion => "sq-diagonal-criterion",
            SuiteKind::LocalCfpSubsetEp => "local-cfp-subset-ep",
        }
    }

    pub fn from_name(name: &str) -> Option<SuiteKind> {
        SuiteKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// The three distinct regularization computations, one kind per computation.
const REGULARIZATIONS: [EnvelopeKind; 3] = [
    EnvelopeKind::Lsc,
    EnvelopeKind::Convex,
    EnvelopeKind::Quasiconvex,
];

struct Failure {
    seed: Option<u64>,
    detail: String,
}

struct Claim {
    name: &'static str,
    failures: Vec<Failure>,
}

/// Accumulates per-claim failures across the instance loop.
struct Collector {
    claims: Vec<Claim>,
    instances: usize,
}

impl Collector {
    fn new() -> Self {
        Collector {
            claims: Vec::new(),
            instances: 0,
        }
    }

    fn claim(&mut self, name: &'static str) {
        self.claims.push(Claim {
            name,
            failures: Vec::new(),
        });
    }

    fn fail(&mut self, name: &'static str, seed: Option<u64>, detail: impl Into<String>) {
        self.claims
            .iter_mut()
            .find(|c| c.name == name)
            .expect("claims are registered before use")
            .failures
            .push(Failure {
                seed,
                detail: detail.into(),
            });
    }

    fn check(&mut self, name: &'static str, ok: bool, seed: Option<u64>, detail: impl Fn() -> String) {
        if !ok {
            self.fail(name, seed, detail());
        }
    }

    fn add_instances(&mut self, n: usize) {
        self.instances += n;
    }

    fn into_report(self, suite: &str, wall_ms: u128) -> SuiteReport {
        let mut seeds: Vec<u64> = self
            .claims
            .iter()
            .flat_map(|c| c.failures.iter().filter_map(|f| f.seed))
            .collect();
        seeds.sort_unstable();
        seeds.dedup();
        let unseeded = self
            .claims
            .iter()
            .flat_map(|c| c.failures.iter())
            .filter(|f| f.seed.is_none())
            .count();
        let instances = self.instances;
        let checks: Vec<CheckOutcome> = self
            .claims
            .into_iter()
            .map(|claim| {
                let passed = claim.failures.is_empty();
                let detail = if passed {
                    format!("{instances} instances; no failures")
                } else {
                    let samples: Vec<&str> = claim
                        .failures
                        .iter()
                        .take(3)
                        .map(|f| f.detail.as_str())
                        .collect();
                    format!(
                        "{} failures out of {instances} instances; e.g. {}",
                        claim.failures.len(),
                        samples.join(" | ")
                    )
                };
                let seed = claim.failures.iter().find_map(|f| f.seed);
                CheckOutcome {
                    name: claim.name.to_string(),
                    passed,
                    detail,
                    seed,
                }
            })
            .collect();
        SuiteReport {
            suite: suite.to_string(),
            instances,
            failures: seeds.len() + unseeded,
            seeds,
            checks,
            wall_ms,
        }
    }
}

/// Runs one property suite.
pub fn run_suite(kind: SuiteKind, config: &SuiteConfig) -> SuiteReport {
    let started = Instant::now();
    let mut col = Collector::new();
    match kind {
        SuiteKind::EnvelopeOracles => envelope_oracles(config, &mut col),
        SuiteKind::RegularizationEquality => regularization_equality(config, &mut col),
        SuiteKind::MonotonicityPreservation => monotonicity_preservation(config, &mut col),
        SuiteKind::Hierarchy => hierarchy(config, &mut col),
        SuiteKind::UpperSignTransfer => upper_sign_transfer(config, &mut col),
        SuiteKind::CfpSubsetEp => cfp_subset_ep(config, &mut col),
        SuiteKind::CoercivityChain => coercivity_chain(config, &mut col),
        SuiteKind::SolutionInclusions => solution_inclusions(config, &mut col),
        SuiteKind::KyFanFloor => ky_fan_floor(config, &mut col),
        SuiteKind::SqDiagonalCriterion => sq_diagonal_criterion(config, &mut col),
        SuiteKind::LocalCfpSubsetEp => local_cfp_subset_ep(config, &mut col),
    }
    col.into_report(kind.name(), started.elapsed().as_millis())
}

fn suite_grid() -> Grid {
    Grid::uniform(0.0, 1.0, 21).expect("the suite grid is valid")
}

fn max_deviation(a: &SampledFunction, b: &SampledFunction) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| {
            let (x, y) = (
                x.finite().unwrap_or(f64::INFINITY),
                y.finite().unwrap_or(f64::INFINITY),
            );
            (x - y).abs()
        })
        .fold(0.0, f64::max)
}

fn envelope_oracles(cfg: &SuiteConfig, col: &mut Collector) {
    col.claim("fast-envelopes-match-the-oracles");
    col.claim("envelopes-are-idempotent");
    col.claim("envelopes-never-exceed-the-samples");
    col.claim("affine-minorants-support-the-convex-envelope");
    for i in 0..cfg.instances {
        let seed = cfg.seed.wrapping_add(i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=64);
        let grid = Grid::uniform(0.0, 1.0, n).expect("valid grid");
        let values: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = SampledFunction::from_finite(grid.clone(), values.clone()).expect("finite");

        for kind in [EnvelopeKind::Convex, EnvelopeKind::Quasiconvex] {
            let fast = envelope_of(&f, kind).expect("finite input");
            let oracle = envelope_oracle(&f, kind).expect("finite input");
            let dev = max_deviation(&fast, &oracle);
            col.check(
                "fast-envelopes-match-the-oracles",
                dev <= 1e-12,
                Some(seed),
                || format!("{kind:?} deviates from its oracle by {dev:e} on {n} points"),
            );
            let again = envelope_of(&fast, kind).expect("finite input");
            col.check(
                "envelopes-are-idempotent",
                again.values() == fast.values(),
                Some(seed),
                || format!("{kind:?} is not a bit-exact fixed point on {n} points"),
            );
            let below = fast
                .finite_values()
                .expect("finite")
                .iter()
                .zip(&values)
                .all(|(e, v)| e <= v);
            col.check(
                "envelopes-never-exceed-the-samples",
                below,
                Some(seed),
                || format!("{kind:?} exceeds a sample on {n} points"),
            );
        }

        let at = rng.gen_range(0..n);
        let line = affine_minorant(&f, at).expect("two or more points");
        let env = convex_envelope(&f).expect("finite input");
        let env_values = env.finite_values().expect("finite");
        let xs = f.grid().points().to_vec();
        let below = xs
            .iter()
            .zip(&values)
            .all(|(&x, &v)| line.eval(x) <= v + 1e-9);
        let touches = (line.eval(xs[at]) - env_values[at]).abs() <= 1e-9;
        col.check(
            "affine-minorants-support-the-convex-envelope",
            below && touches,
            Some(seed),
            || format!("minorant at index {at} of {n} points: below={below}, touches={touches}"),
        );
    }
    col.add_instances(cfg.instances);
}

fn regularization_equality(cfg: &SuiteConfig, col: &mut Collector) {
    col.claim("equilibria-match-after-regularization");
    col.claim("duals-only-grow-after-regularization");
    let grid = suite_grid();
    let tol = cfg.tolerance;
    for i in 0..cfg.instances {
        let seed = cfg.seed.wrapping_add(i as u64);
        let table = random_bifunction(InstanceClass::Unrestricted, seed, &grid)
            .expect("unrestricted generation cannot exhaust retries");
        let base_ep = solve_ep(&table, tol);
        let base_cfp = solve_cfp(&table, Scope::Global, tol).expect("global scope");
        for kind in REGULARIZATIONS {
            let reg = regularize(&table, kind).expect("finite table");
            let reg_ep = solve_ep(&reg, tol);
            col.check(
                "equilibria-match-after-regularization",
                reg_ep.indices() == base_ep.indices(),
                Some(seed),
                || {
                    format!(
                        "{kind:?}: {:?} vs {:?}",
                        reg_ep.indices(),
                        base_ep.indices()
                    )
                },
            );
            let reg_cfp = solve_cfp(&reg, Scope::Global, tol).expect("global scope");
            let grows = base_cfp
                .indices()
                .iter()
                .all(|&j| reg_cfp.contains_index(j));
            col.check(
                "duals-only-grow-after-regularization",
                grows,
                Some(seed),
                || format!("{kind:?} lost a dual solution"),
            );
        }
    }
    col.add_instances(cfg.instances);
}

fn class_passes(class: InstanceClass, table: &ValueTable, tol: Tolerance) -> bool {
    match class {
        InstanceClass::Monotone => {
            check_monotonicity(table, MonotonicityKind::Monotone, tol).is_pass()
        }
        InstanceClass::Pseudomonotone => {
            check_monotonicity(table, MonotonicityKind::Pseudomonotone, tol).is_pass()
        }
        InstanceClass::Quasimonotone => {
            check_monotonicity(table, MonotonicityKind::Quasimonotone, tol).is_pass()
        }
        InstanceClass::ProperlyQuasimonotone => {
            check_properly_quasimonotone(table, ProperlyQuasimonotoneMethod::Pair, tol)
                .expect("pair method has no size limit")
                .is_pass()
        }
        InstanceClass::Unrestricted | InstanceClass::Sq => true,
    }
}

fn monotonicity_preservation(cfg: &SuiteConfig, col: &mut Collector) {
    col.claim("constructed-instances-pass-their-checker");
    col.claim("the-class-survives-regularization");
    let grid = suite_grid();
    let tol = cfg.tolerance;
    for (ci, class) in InstanceClass::MONOTONICITY.into_iter().enumerate() {
        for i in 0..cfg.instances {
            let seed = cfg.seed.wrapping_add((ci * cfg.instances + i) as u64);
            let table = match random_bifunction(class, seed, &grid) {
                Ok(table) => table,
                Err(err) => {
                    col.fail(
                        "constructed-instances-pass-their-checker",
                        Some(seed),
                        err.to_string(),
                    );
                    continue;
                }
            };
            col.check(
                "constructed-instances-pass-their-checker",
                class_passes(class, &table, tol),
                Some(seed),
                || format!("{class:?} instance fails its own checker"),
            );
            for kind in REGULARIZATIONS {
                let reg = regularize(&table, kind).expect("finite table");
                col.check(
                    "the-class-survives-regularization",
                    class_passes(class, &reg, tol),
                    Some(seed),
                    || format!("{class:?} broken by {kind:?}"),
                );
            }
        }
    }
    col.add_instances(InstanceClass::MONOTONICITY.len() * cfg.instances);
}

fn hierarchy(cfg: &SuiteConfig, col: &mut Collector) {
    col.claim("monotone-implies-pseudomonotone");
    col.claim("pseudomonotone-implies-quasimonotone");
    col.claim("passing-tables-have-nonpositive-diagonals");
    let grid = suite_grid();
    let tol = cfg.tolerance;
    for (ci, class) in InstanceClass::ALL.into_iter().enumerate() {
        for i in 0..cfg.instances {
            let seed = cfg.seed.wrapping_add((ci * cfg.instances + i) as u64);
            let Ok(table) = random_bifunction(class, seed, &grid) else {
                // Generation failures are covered by the preservation suite.
                continue;
            };
            let mut tables = vec![table.clone()];
            for kind in REGULARIZATIONS {
                tables.push(regularize(&table, kind).expect("finite table"));
            }
            for t in &tables {
                let monotone = check_monotonicity(t, MonotonicityKind::Monotone, tol).is_pass();
                let pseudo =
                    check_monotonicity(t, MonotonicityKind::Pseudomonotone, tol).is_pass();
                let quasi = check_monotonicity(t, MonotonicityKind::Quasimonotone, tol).is_pass();
                let pair =
                    check_properly_quasimonotone(t, ProperlyQuasimonotoneMethod::Pair, tol)
                        .expect("pair method has no size limit")
                        .is_pass();
                // The first implication is asserted on the constructed
                // monotone family (and its regularizations), whose pair sums
                // sit far below zero; for arbitrary tables the two
                // tolerances could disagree inside a 1e-9 band.
                if class == InstanceClass::Monotone {
                    col.check(
                        "monotone-implies-pseudomonotone",
                        !monotone || pseudo,
                        Some(seed),
                        || "a monotone-passing table fails pseudomonotonicity".to_string(),
                    );
                }
                col.check(
                    "pseudomonotone-implies-quasimonotone",
                    !pseudo || quasi,
                    Some(seed),
                    || "a pseudomonotone-passing table fails quasimonotonicity".to_string(),
                );
                if monotone || pseudo || quasi || pair {
                    let diag_ok = (0..t.count()).all(|k| t.value(k, k) <= tol.slack);
                    col.check(
                        "passing-tables-have-nonpositive-diagonals",
                        diag_ok,
                        Some(seed),
                        || format!("{class:?}: a passing table has a positive diagonal entry"),
                    );
                }
            }
        }
    }
    col.add_instances(InstanceClass::ALL.len() * cfg.instances);
}

fn upper_sign_transfer(cfg: &SuiteConfig, col: &mut Collector) {
    col.claim("upper-sign-transfers-from-regularizations");
    col.claim("upper-sign-transfers-across-domination");
    col.claim("the-transfer-premise-was-exercised");
    let grid = suite_grid();
    let tol = cfg.tolerance;
    let mut exercised = 0usize;
    for i in 0..cfg.instances {
        let seed = cfg.seed.wrapping_add(i as u64);
        let class = InstanceClass::ALL[i % InstanceClass::ALL.len()];
        if let Ok(table) = random_bifunction(class, seed, &grid) {
            for kind in REGULARIZATIONS {
                let reg = regularize(&table, kind).expect("finite table");
                let reg_pass = check_upper_sign(&reg, Scope::Global, tol)
                    .expect("global scope")
                    .is_pass();
                if reg_pass {
                    exercised += 1;
                    let table_pass = check_upper_sign(&table, Scope::Global, tol)
                        .expect("global scope")
                        .is_pass();
                    col.check(
                        "upper-sign-transfers-from-regularizations",
                        table_pass,
                        Some(seed),
                        || format!("{class:?}/{kind:?}: the regularized table passes, the original does not"),
                    );
                }
            }
        }

        // Domination: a passing base plus nonnegative drag must still pass.
        let base_seed = cfg.seed.wrapping_add(0x5157_0000).wrapping_add(i as u64);
        let base = random_bifunction(InstanceClass::Sq, base_seed, &grid)
            .expect("shape-constructed generation cannot exhaust retries");
        let mut rng = ChaCha8Rng::seed_from_u64(base_seed ^ 0xD0D0);
        let lifted_values: Vec<Vec<f64>> = base
            .values()
            .iter()
            .map(|row| row.iter().map(|v| v + rng.gen_range(0.01..1.0)).collect())
            .collect();
        let lifted =
            ValueTable::new(grid.clone(), lifted_values).expect("square finite table");
        let base_pass = check_upper_sign(&base, Scope::Global, tol)
            .expect("global scope")
            .is_pass();
        col.check(
            "the-transfer-premise-was-exercised",
            base_pass,
            Some(base_seed),
            || "a diagonal-pivoted table failed the upper sign property".to_string(),
        );
        if base_pass {
            exercised += 1;
            let lifted_pass = check_upper_sign(&lifted, Scope::Global, tol)
                .expect("global scope")
                .is_pass();
            col.check(
                "upper-sign-transfers-across-domination",
                lifted_pass,
                Some(base_seed),
                || "adding nonnegative drag broke the upper sign property".to_string(),
            );
        }
    }
    if exercised == 0 {
        col.fail(
            "the-transfer-premise-was-exercised",
            None,
            "no instance satisfied the transfer premise",
        );
    }
    col.add_instances(cfg.instances);
}

fn cfp_subset_ep(cfg: &SuiteConfig, col: &mut Collector) {
    col.claim("duals-are-equilibria-when-upper-sign-holds");
    col.claim("the-inclusion-was-exercised");
    let grid = suite_grid();
    let tol = cfg.tolerance;
    let mut exercised = 0usize;
    for i in 0..cfg.instances {
        let seed = cfg.seed.wrapping_add(i as u64);
        let table = match i % 3 {
            // Nonnegative entries with a few zeroed columns: upper sign
            // holds and the zeroed columns are dual solutions.
            0 => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let n = grid.count();
                let zeroed: Vec<bool> = {
                    let mut z = vec![false; n];
                    let count = rng.gen_range(1..=3);
                    for _ in 0..count {
                        let j = rng.gen_range(0..n);
                        z[j] = true;
                    }
                    z
                };
                let values: Vec<Vec<f64>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|j| {
                                if zeroed[j] {
                                    0.0
                                } else {
                                    rng.gen_range(0.001..1.0)
                                }
                            })
                            .collect()
                    })
                    .collect();
                ValueTable::new(grid.clone(), values).expect("square finite table")
            }
            1 => random_bifunction(InstanceClass::Sq, seed, &grid)
                .expect("shape-constructed generation cannot exhaust retries"),
            _ => random_bifunction(InstanceClass::Unrestricted, seed, &grid)
                .expect("unrestricted generation cannot exhaust retries"),
        };
        let upper = check_upper_sign(&table, Scope::Global, tol)
            .expect("global scope")
            .is_pass();
        if !upper {
            continue;
        }
        let duals = solve_cfp(&table, Scope::Global, tol).expect("global scope");
        let equilibria = solve_ep(&table, tol);
        if !duals.is_empty() {
            exercised += 1;
        }
        let included = duals
            .indices()
            .iter()
            .all(|&j| equilibria.contains_index(j));
        col.check(
            "duals-are-equilibria-when-upper-sign-holds",
            included,
            Some(seed),
            || {
                format!(
                    "duals {:?} not within equilibria {:?}",
                    duals.indices(),
                    equilibria.indices()
                )
            },
        );
    }
    col.check(
        "the-inclusion-was-exercised",
        exercised > 0,
        None,
        || "no instance had both the premise and a nonempty dual set".to_string(),
    );
    col.add_instances(cfg.instances);
}

fn coercivity_chain(cfg: &SuiteConfig, col: &mut Collector) {
    col.claim("the-first-condition-implies-the-second");
    col.claim("the-second-condition-implies-the-third");
    col.claim("exhaustion-carries-tail-diagnostics");
    let tol = cfg.tolerance;
    let names = [
        "cubic-drift",
        "neg-log",
        "one-over-y",
        "difference",
        "reverse-difference",
    ];
    let mut instances = 0usize;
    for name in names {
        let fixture = fixtures::fixture(name).expect("packaged fixture");
        let spec = fixture.spec();
        let schedule = TruncationSchedule::new(fixture.domain(), 0.125, 1, 5)
            .expect("valid schedule");
        for reg in [None, Some(EnvelopeKind::Quasiconvex)] {
            instances += 1;
            let mut passes = Vec::new();
            for kind in CoercivityKind::ALL {
                match check_coercivity(&spec, &schedule, kind, reg, tol) {
                    Ok(report) => passes.push(report.passed),
                    Err(err) => {
                        col.fail(
                            "the-first-condition-implies-the-second",
                            None,
                            format!("{name}: {err}"),
                        );
                        passes.push(false);
                    }
                }
            }
            col.check(
                "the-first-condition-implies-the-second",
                !passes[0] || passes[1],
                None,
                || format!("{name} ({reg:?}): the strongest condition holds but the middle one fails"),
            );
            col.check(
                "the-second-condition-implies-the-third",
                !passes[1] || passes[2],
                None,
                || format!("{name} ({reg:?}): the middle condition holds but the weakest fails"),
            );
        }
    }

    let fixture = fixtures::fixture("reverse-difference").expect("packaged fixture");
    let schedule = fixture.default_schedule().expect("unbounded fixture");
    let pipeline = existence_pipeline(&fixture.spec(), &schedule, PipelineVariant::C2, tol)
        .expect("unbounded domain");
    let diagnosed = match pipeline.outcome {
        PipelineOutcome::Exhausted { coercivity } => coercivity.is_some_and(|report| {
            !report.passed
                && report
                    .directions
                    .iter()
                    .any(|direction| !direction.failures.is_empty())
        }),
        PipelineOutcome::Solution { .. } => false,
    };
    col.check(
        "exhaustion-carries-tail-diagnostics",
        diagnosed,
        None,
        || "the exhausted pipeline lacks a failing coercivity report with tail failures".to_string(),
    );
    col.add_instances(instances + 1);
}

fn solution_inclusions(cfg: &SuiteConfig, col: &mut Collector) {
    col.claim("equilibria-shrink-under-nonnegative-drag");
    col.claim("duals-grow-under-nonnegative-drag");
    col.claim("the-max-min-floor-is-monotone");
    let grid = suite_grid();
    let tol = cfg.tolerance;
    for i in 0..cfg.instances {
        let seed = cfg.seed.wrapping_add(i as u64);
        let table = random_bifunction(InstanceClass::Unrestricted, seed, &grid)
            .expect("unrestricted generation cannot exhaust retries");
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xD1A6);
        let dragged_values: Vec<Vec<f64>> = table
            .values()
            .iter()
            .map(|row| row.iter().map(|v| v - rng.gen_range(0.01..1.0)).collect())
            .collect();
        let dragged = ValueTable::new(grid.clone(), dragged_values).expect("square finite table");

        let ep_high = solve_ep(&table, tol);
        let ep_low = solve_ep(&dragged, tol);
        col.check(
            "equilibria-shrink-under-nonnegative-drag",
            ep_low.indices().iter().all(|&j| ep_high.contains_index(j)),
            Some(seed),
            || "drag created a new equilibrium point".to_string(),
        );

        let cfp_high = solve_cfp(&table, Scope::Global, tol).expect("global scope");
        let cfp_low = solve_cfp(&dragged, Scope::Global, tol).expect("global scope");
        col.check(
            "duals-grow-under-nonnegative-drag",
            cfp_high.indices().iter().all(|&j| cfp_low.contains_index(j)),
            Some(seed),
            || "drag removed a dual solution".to_string(),
        );

        let floor_high = ky_fan_point(&table, tol).floor;
        let floor_low = ky_fan_point(&dragged, tol).floor;
        col.check(
            "the-max-min-floor-is-monotone",
            floor_low <= floor_high + 1e-12,
            Some(seed),
            || format!("floor rose from {floor_high} to {floor_low} under drag"),
        );
    }
    col.add_instances(cfg.instances);
}

fn ky_fan_floor(cfg: &SuiteConfig, col: &mut Collector) {
    col.claim("constructed-rows-are-quasiconvex");
    col.claim("the-floor-reaches-the-diagonal");
    col.claim("equilibria-exist-at-the-profile-minimum");
    col.claim("a-flat-negative-square-is-rejected");
    let tol = cfg.tolerance;
    for i in 0..cfg.instances {
        let seed = cfg.seed.wrapping_add(i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(5..=25);
        let grid = Grid::uniform(0.0, 1.0, n).expect("valid grid");
        let pivot = rng.gen_range(0..n);
        // A strict V-shaped profile with its minimum at the pivot.
        let mut profile = vec![0.0; n];
        profile[pivot] = rng.gen_range(-0.5..0.0);
        for k in (0..pivot).rev() {
            profile[k] = profile[k + 1] + rng.gen_range(0.01..0.2);
        }
        for k in pivot + 1..n {
            profile[k] = profile[k - 1] + rng.gen_range(0.01..0.2);
        }
        let scale: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..2.0)).collect();
        let values: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| scale[i] * (profile[j] - profile[i]))
                    .collect()
            })
            .collect();
        let table = ValueTable::new(grid.clone(), values).expect("square finite table");

        let mut rows_ok = true;
        for row in table.values() {
            let f = SampledFunction::from_finite(grid.clone(), row.clone()).expect("finite");
            if !shape_check(&f, ShapeKind::Quasiconvex, tol)
                .expect("finite")
                .is_pass()
            {
                rows_ok = false;
                break;
            }
        }
        col.check(
            "constructed-rows-are-quasiconvex",
            rows_ok,
            Some(seed),
            || "a profile-difference row fails the quasiconvex shape check".to_string(),
        );

        let ky = ky_fan_point(&table, tol);
        col.check(
            "the-floor-reaches-the-diagonal",
            ky.passed,
            Some(seed),
            || format!("floor {} vs diagonal minimum {}", ky.floor, ky.diagonal_min),
        );
        col.check(
            "equilibria-exist-at-the-profile-minimum",
            solve_ep(&table, tol).contains_index(pivot),
            Some(seed),
            || format!("the profile minimum at index {pivot} is not an equilibrium"),
        );
    }

    // The guarantee needs quasiconvex rows *and* a convex domain; two grid
    // points form a nonconvex domain, and this square fails the verdict.
    let grid = Grid::uniform(0.0, 1.0, 2).expect("valid grid");
    let table =
        ValueTable::new(grid, vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).expect("square table");
    let ky = ky_fan_point(&table, tol);
    col.check(
        "a-flat-negative-square-is-rejected",
        !ky.passed && ky.floor == -1.0 && ky.diagonal_min == 0.0,
        None,
        || format!("expected floor -1 below diagonal 0, got {ky:?}"),
    );
    col.add_instances(cfg.instances + 1);
}

fn sq_diagonal_criterion(cfg: &SuiteConfig, col: &mut Collector) {
    col.claim("zero-diagonal-semistrict-rows-pass-upper-sign");
    col.claim("a-sunken-diagonal-breaks-upper-sign");
    col.claim("row-shapes-survive-the-shift");
    let grid = suite_grid();
    let tol = cfg.tolerance;
    for i in 0..cfg.instances {
        let seed = cfg.seed.wrapping_add(i as u64);
        let table = random_bifunction(InstanceClass::Sq, seed, &grid)
            .expect("shape-constructed generation cannot exhaust retries");
        col.check(
            "zero-diagonal-semistrict-rows-pass-upper-sign",
            check_upper_sign(&table, Scope::Global, tol)
                .expect("global scope")
                .is_pass(),
            Some(seed),
            || "a diagonal-pivoted table failed the upper sign property".to_string(),
        );

        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5112);
        let drops: Vec<f64> = (0..table.count())
            .map(|_| rng.gen_range(0.01..0.5))
            .collect();
        let sunken_values: Vec<Vec<f64>> = table
            .values()
            .iter()
            .zip(&drops)
            .map(|(row, d)| row.iter().map(|v| v - d).collect())
            .collect();
        let sunken = ValueTable::new(grid.clone(), sunken_values).expect("square finite table");
        col.check(
            "a-sunken-diagonal-breaks-upper-sign",
            !check_upper_sign(&sunken, Scope::Global, tol)
                .expect("global scope")
                .is_pass(),
            Some(seed),
            || "the upper sign property survived a strictly negative diagonal".to_string(),
        );

        let mut shapes_ok = true;
        for row in sunken.values() {
            let f = SampledFunction::from_finite(grid.clone(), row.clone()).expect("finite");
            if !shape_check(&f, ShapeKind::SemistrictlyQuasiconvex, tol)
                .expect("finite")
                .is_pass()
            {
                shapes_ok = false;
                break;
            }
        }
        col.check(
            "row-shapes-survive-the-shift",
            shapes_ok,
            Some(seed),
            || "shifting a row broke its semistrict shape".to_string(),
        );
    }
    col.add_instances(cfg.instances);
}

fn local_cfp_subset_ep(cfg: &SuiteConfig, col: &mut Collector) {
    col.claim("local-duals-are-equilibria-under-the-segment-premises");
    col.claim("the-local-inclusion-was-exercised");
    let grid = suite_grid();
    let tol = cfg.tolerance;
    let spacing = grid.spacing();
    let mut exercised = 0usize;
    for i in 0..cfg.instances {
        let seed = cfg.seed.wrapping_add(i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = grid.count();
        let table = if i % 2 == 0 {
            // Column profiles: nonnegative with at least one zero column.
            let mut profile: Vec<f64> = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        0.0
                    } else {
                        rng.gen_range(0.001..1.0)
                    }
                })
                .collect();
            let forced = rng.gen_range(0..n);
            profile[forced] = 0.0;
            let values: Vec<Vec<f64>> = (0..n).map(|_| profile.clone()).collect();
            ValueTable::new(grid.clone(), values).expect("square finite table")
        } else {
            // Sign-snapped noise: every magnitude is zero or at least 1e-3,
            // so the strict and slack thresholds agree on every entry.
            let values: Vec<Vec<f64>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let v: f64 = rng.gen_range(-1.0..1.0);
                            if v.abs() < 1e-3 {
                                0.0
                            } else {
                                v
                            }
                        })
                        .collect()
                })
                .collect();
            ValueTable::new(grid.clone(), values).expect("square finite table")
        };
        let radius = spacing * rng.gen_range(1..=5) as f64;

        let upper_local = check_upper_sign(&table, Scope::Local(radius), tol)
            .expect("positive radius")
            .is_pass();
        let beta = check_segment_condition(&table, SegmentCondition::Beta, tol).is_pass();
        if !(upper_local && beta) {
            continue;
        }
        let duals = solve_cfp(&table, Scope::Local(radius), tol).expect("positive radius");
        let equilibria = solve_ep(&table, tol);
        if !duals.is_empty() {
            exercised += 1;
        }
        col.check(
            "local-duals-are-equilibria-under-the-segment-premises",
            duals.indices().iter().all(|&j| equilibria.contains_index(j)),
            Some(seed),
            || {
                format!(
                    "radius {radius}: local duals {:?} escape the equilibria {:?}",
                    duals.indices(),
                    equilibria.indices()
                )
            },
        );
    }
    col.check(
        "the-local-inclusion-was-exercised",
        exercised > 0,
        None,
        || "no instance satisfied the local premises with a nonempty dual set".to_string(),
    );
    col.add_instances(cfg.instances);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for kind in SuiteKind::ALL {
            assert_eq!(SuiteKind::from_name(kind.name()), Some(kind));
        }
        assert_eq!(SuiteKind::from_name("no-such-suite"), None);
    }

    #[test]
    fn all_suites_pass_with_small_instance_counts() {
        let config = SuiteConfig {
            instances: 40,
            seed: 1,
            tolerance: Tolerance::default(),
        };
        for kind in SuiteKind::ALL {
            let report = run_suite(kind, &config);
            assert!(
                report.passed(),
                "{}: {:?}",
                kind.name(),
                report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .collect::<Vec<_>>()
            );
            assert!(report.instances > 0);
            assert_eq!(report.checks.iter().filter(|c| !c.passed).count(), 0);
        }
    }

    #[test]
    fn suite_runs_are_deterministic() {
        let config = SuiteConfig {
            instances: 10,
            seed: 7,
            tolerance: Tolerance::default(),
        };
        let first = run_suite(SuiteKind::EnvelopeOracles, &config);
        let second = run_suite(SuiteKind::EnvelopeOracles, &config);
        assert_eq!(
            serde_json::to_string(&first).unwrap(),
            serde_json::to_string(&second).unwrap()
        );
    }
}
