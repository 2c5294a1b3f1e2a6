//! Equilibrium problems on one-dimensional grids.
//!
//! The crate samples bifunctions `f(x, y)` on interval grids, regularizes
//! them row by row (lower semicontinuous closure, convex and quasiconvex
//! envelopes), checks generalized-monotonicity and segment properties with
//! explicit witnesses, and solves the associated equilibrium and dual
//! problems — including on unbounded domains through nested truncations,
//! coercivity diagnostics, and an existence pipeline.

pub mod bifunction;
pub mod dsl;
pub mod envelope;
pub mod fixtures;
pub mod generators;
pub mod grid;
pub mod properties;
pub mod report;
pub mod solvers;
pub mod suites;
pub mod verdict;

pub use bifunction::{
    classify_families, regularize, regularize_with, sample_matrix, BifunctionError,
    BifunctionSpec, ClassifyOptions, DivergenceEvidence, Family, FamilyReport, FamilyVerdict,
    Membership, ValueTable, DEFAULT_REFINEMENT,
};
pub use dsl::{DslError, Piecewise};
pub use envelope::{
    affine_minorant, convex_envelope, envelope_of, envelope_oracle, lsc_closure,
    quasiconvex_envelope, shape_check, AffineMinorant, EnvelopeError, EnvelopeKind,
    SampledFunction, ShapeKind, ValueClass,
};
pub use fixtures::{example_names, fixture, run_example, Fixture, FixtureError};
pub use generators::{checker_for, random_bifunction, GeneratorError, InstanceClass, RETRY_BUDGET};
pub use properties::{
    check_monotonicity, check_properly_quasimonotone, check_segment_condition, check_upper_sign,
    MonotonicityKind, ProperlyQuasimonotoneMethod, PropertyError, Scope, SegmentCondition,
    MAX_SUBSET_POINTS,
};
pub use report::{
    sampled_to_csv, solutions_to_csv, table_to_csv, CheckOutcome, Report, Results, SampledDump,
    SuiteReport, TableDump, TOOL_VERSION,
};
pub use solvers::{
    check_coercivity, existence_pipeline, ky_fan_point, solve_cfp, solve_ep, CoercivityKind,
    CoercivityReport, Direction, DirectionReport, KyFanPoint, LevelLog, PipelineOutcome,
    PipelineResult, PipelineVariant, SolutionSet, SolverError, TailFailure,
};
pub use suites::{run_suite, SuiteConfig, SuiteKind};
pub use grid::{ExtendedReal, Grid, GridError, Interval, TruncationGrid, TruncationSchedule};
pub use verdict::{Tolerance, Verdict, Witness, WitnessPoint, WitnessValue};
