//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line
//! (visible with `--nocapture`) and asserting both the behavior and a
//! wall-clock budget.

use std::time::{Duration, Instant};

use equilib::bifunction::{
    classify_families, regularize_with, sample_matrix, ClassifyOptions, Family, Membership,
    DEFAULT_REFINEMENT,
};
use equilib::envelope::{shape_check, EnvelopeKind, SampledFunction, ShapeKind};
use equilib::fixtures::fixture;
use equilib::properties::{
    check_monotonicity, check_segment_condition, MonotonicityKind, Scope, SegmentCondition,
};
use equilib::solvers::{existence_pipeline, solve_cfp, solve_ep, PipelineVariant};
use equilib::suites::{run_suite, SuiteConfig, SuiteKind};
use equilib::verdict::Tolerance;

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Prints the criterion line and enforces both the verdict and the budget.
fn conclude(criterion: &str, passed: bool, elapsed: Duration, budget: Duration, detail: &str) {
    let verdict = if passed && elapsed <= budget {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "ACCEPTANCE {criterion}: {verdict} ({} ms, budget {} ms) {detail}",
        elapsed.as_millis(),
        budget.as_millis()
    );
    assert!(passed, "{criterion}: {detail}");
    assert!(
        elapsed <= budget,
        "{criterion}: took {} ms, budget {} ms",
        elapsed.as_millis(),
        budget.as_millis()
    );
}

fn suite_config(instances: usize) -> SuiteConfig {
    SuiteConfig {
        instances,
        seed: 0,
        tolerance: tol(),
    }
}

#[test]
fn c01_dual_solutions_sit_at_the_endpoints_until_regularization() {
    let started = Instant::now();
    let fixture = fixture("cfp-endpoints").unwrap();
    let spec = fixture.spec();
    let table = fixture.sample().unwrap();
    let n = table.count();
    assert_eq!(n, 201);

    let duals = solve_cfp(&table, Scope::Global, tol()).unwrap();
    let endpoints = duals.indices() == [0, 200];

    let reg = regularize_with(&table, EnvelopeKind::Convex, Some(&spec), DEFAULT_REFINEMENT)
        .unwrap();
    let flat = reg.values().iter().flatten().all(|v| v.abs() <= 1e-9);
    let reg_duals = solve_cfp(&reg, Scope::Global, tol()).unwrap();
    let everywhere = reg_duals.len() == n;

    conclude(
        "c01-dual-endpoints",
        endpoints && flat && everywhere,
        started.elapsed(),
        Duration::from_secs(1),
        &format!(
            "raw duals {:?}; regularized count {}/{}",
            duals.points(),
            reg_duals.len(),
            n
        ),
    );
}

#[test]
fn c02_quasiconvex_regularization_erases_the_notch() {
    let started = Instant::now();
    let fixture = fixture("notched-affine").unwrap();
    let spec = fixture.spec();
    let table = fixture.sample().unwrap();
    let grid = table.grid().clone();

    let reg = regularize_with(
        &table,
        EnvelopeKind::Quasiconvex,
        Some(&spec),
        DEFAULT_REFINEMENT,
    )
    .unwrap();
    let affine: Vec<f64> = grid.points().iter().map(|y| y - 2.0).collect();
    let rows_exact = reg.values().iter().all(|row| row == &affine);

    let semistrict = reg.values().iter().all(|row| {
        let f = SampledFunction::from_finite(grid.clone(), row.clone()).unwrap();
        shape_check(&f, ShapeKind::SemistrictlyQuasiconvex, tol())
            .unwrap()
            .is_pass()
    });

    let alpha = check_segment_condition(&table, SegmentCondition::Alpha, tol());
    let beta = check_segment_condition(&table, SegmentCondition::Beta, tol());
    let both_fail_at_the_notch = !alpha.passed
        && !beta.passed
        && alpha
            .witness()
            .is_some_and(|w| w.mentions_coordinate(1.0, 1e-12))
        && beta
            .witness()
            .is_some_and(|w| w.mentions_coordinate(1.0, 1e-12));

    conclude(
        "c02-notch-regularization",
        rows_exact && semistrict && both_fail_at_the_notch,
        started.elapsed(),
        Duration::from_secs(1),
        &format!(
            "rows exact: {rows_exact}; semistrict: {semistrict}; segment conditions fail at 1: {both_fail_at_the_notch}"
        ),
    );
}

#[test]
fn c03_the_spike_breaks_monotonicity_and_regularization_restores_it() {
    let started = Instant::now();
    let fixture = fixture("spike").unwrap();
    let spec = fixture.spec();
    let table = fixture.sample().unwrap();

    let raw = check_monotonicity(&table, MonotonicityKind::Monotone, tol());
    let witness_ok = !raw.passed
        && raw.witness().is_some_and(|w| {
            w.point("x").is_some_and(|p| p.point == 1.0)
                && w.point("y").is_some_and(|p| p.point == 0.0)
        });

    let mut regs_ok = true;
    for kind in [
        EnvelopeKind::Lsc,
        EnvelopeKind::Convex,
        EnvelopeKind::Quasiconvex,
    ] {
        let reg =
            regularize_with(&table, kind, Some(&spec), DEFAULT_REFINEMENT).unwrap();
        let zero = reg.values().iter().flatten().all(|v| v.abs() <= 1e-9);
        let monotone = check_monotonicity(&reg, MonotonicityKind::Monotone, tol()).is_pass();
        regs_ok &= zero && monotone;
    }

    conclude(
        "c03-spike-monotonicity",
        witness_ok && regs_ok,
        started.elapsed(),
        Duration::from_secs(1),
        &format!("witness at the spike: {witness_ok}; regularizations vanish and pass: {regs_ok}"),
    );
}

#[test]
fn c04_family_classification_separates_the_two_whole_line_examples() {
    let started = Instant::now();
    let options = ClassifyOptions::default();
    assert_eq!(options.divergence_bound, 1e3);

    let cubic = fixture("cubic-drift").unwrap();
    let schedule = cubic.default_schedule().unwrap();
    assert_eq!(schedule.levels().collect::<Vec<_>>(), (1..=8).collect::<Vec<_>>());
    let report = classify_families(&cubic.spec(), &schedule, &options).unwrap();
    let cubic_ok = report.verdict(Family::Quasiconvex).membership == Membership::Member
        && report.verdict(Family::Convex).membership == Membership::NotMember;

    let log = fixture("neg-log").unwrap();
    let schedule = log.default_schedule().unwrap();
    let report = classify_families(&log.spec(), &schedule, &options).unwrap();
    let log_ok = report.verdict(Family::Lsc).membership == Membership::Member
        && report.verdict(Family::QuasiconvexClosed).membership == Membership::NotMember;

    conclude(
        "c04-family-classification",
        cubic_ok && log_ok,
        started.elapsed(),
        Duration::from_secs(5),
        &format!("cubic drift quasiconvex-not-convex: {cubic_ok}; negative log shifted-only: {log_ok}"),
    );
}

#[test]
fn c05_the_reciprocal_pipeline_solves_and_its_rows_shrink() {
    let started = Instant::now();
    let fixture = fixture("one-over-y").unwrap();
    let spec = fixture.spec();
    let schedule = fixture.default_schedule().unwrap();
    assert_eq!(schedule.levels().collect::<Vec<_>>(), (1..=5).collect::<Vec<_>>());

    let pipeline = existence_pipeline(&spec, &schedule, PipelineVariant::C3, tol()).unwrap();
    let solved = pipeline.solution().is_some();

    let mut shrink = true;
    for n in schedule.levels() {
        let truncation = schedule.truncation(n).unwrap();
        let table = sample_matrix(&spec, truncation.grid()).unwrap();
        let reg = regularize_with(
            &table,
            EnvelopeKind::Quasiconvex,
            Some(&spec),
            DEFAULT_REFINEMENT,
        )
        .unwrap();
        let bound = 1.0 / f64::from(n) + 1e-9;
        shrink &= reg
            .values()
            .iter()
            .flatten()
            .all(|v| *v >= -1e-9 && *v <= bound);
    }

    conclude(
        "c05-reciprocal-pipeline",
        solved && shrink,
        started.elapsed(),
        Duration::from_secs(5),
        &format!(
            "solution: {:?}; regularized entries within 1/n of zero: {shrink}",
            pipeline.solution()
        ),
    );
}

#[test]
fn c06_the_guarded_ramp_keeps_its_equilibrium_through_regularization() {
    let started = Instant::now();
    let fixture = fixture("guarded-ramp").unwrap();
    let spec = fixture.spec();
    let table = fixture.sample().unwrap();
    let n = table.count();
    assert_eq!(n, 201);

    let raw = solve_ep(&table, tol());
    let raw_ok = raw.indices() == [n - 1] && raw.points() == [2.0];

    let reg = regularize_with(
        &table,
        EnvelopeKind::Quasiconvex,
        Some(&spec),
        DEFAULT_REFINEMENT,
    )
    .unwrap();
    let reg_set = solve_ep(&reg, tol());
    let preserved = reg_set.indices() == raw.indices();

    conclude(
        "c06-guarded-ramp-equilibria",
        raw_ok && preserved,
        started.elapsed(),
        Duration::from_secs(1),
        &format!("raw equilibria {:?}; preserved: {preserved}", raw.points()),
    );
}

#[test]
fn c07_envelopes_match_their_oracles_on_five_hundred_instances() {
    let started = Instant::now();
    let report = run_suite(SuiteKind::EnvelopeOracles, &suite_config(500));
    conclude(
        "c07-envelope-oracles",
        report.passed() && report.instances == 500,
        started.elapsed(),
        Duration::from_secs(10),
        &format!("{} instances, {} failures", report.instances, report.failures),
    );
}

#[test]
fn c08_equilibria_survive_regularization_on_five_hundred_tables() {
    let started = Instant::now();
    let report = run_suite(SuiteKind::RegularizationEquality, &suite_config(500));
    conclude(
        "c08-regularization-equality",
        report.passed() && report.instances == 500,
        started.elapsed(),
        Duration::from_secs(10),
        &format!("{} instances, {} failures", report.instances, report.failures),
    );
}

#[test]
fn c09_monotonicity_classes_survive_and_order_themselves() {
    let started = Instant::now();
    let preservation = run_suite(SuiteKind::MonotonicityPreservation, &suite_config(500));
    let hierarchy = run_suite(SuiteKind::Hierarchy, &suite_config(500));
    conclude(
        "c09-monotonicity-hierarchy",
        preservation.passed()
            && hierarchy.passed()
            && preservation.instances == 2000
            && hierarchy.instances == 3000,
        started.elapsed(),
        Duration::from_secs(20),
        &format!(
            "preservation: {} instances, {} failures; hierarchy: {} instances, {} failures",
            preservation.instances,
            preservation.failures,
            hierarchy.instances,
            hierarchy.failures
        ),
    );
}

#[test]
fn c10_sign_transfer_and_dual_inclusion_hold_wherever_their_premises_do() {
    let started = Instant::now();
    let transfer = run_suite(SuiteKind::UpperSignTransfer, &suite_config(500));
    let inclusion = run_suite(SuiteKind::CfpSubsetEp, &suite_config(500));
    conclude(
        "c10-sign-transfer-inclusions",
        transfer.passed() && inclusion.passed(),
        started.elapsed(),
        Duration::from_secs(10),
        &format!(
            "transfer: {} failures; inclusion: {} failures",
            transfer.failures, inclusion.failures
        ),
    );
}

#[test]
fn c11_escape_conditions_chain_and_exhaustion_is_diagnosed() {
    let started = Instant::now();
    let report = run_suite(SuiteKind::CoercivityChain, &suite_config(500));
    conclude(
        "c11-coercivity-chain",
        report.passed(),
        started.elapsed(),
        Duration::from_secs(10),
        &format!("{} instances, {} failures", report.instances, report.failures),
    );
}
