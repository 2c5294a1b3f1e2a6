//! Machine-readable run reports.
//!
//! Every command of the command-line harness produces a [`Report`] with a
//! fixed key set, so that downstream tooling can diff runs. The timestamp is
//! the only field that changes between identical runs; everything else is
//! deterministic in the inputs and seeds.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bifunction::{FamilyReport, ValueTable};
use crate::envelope::{AffineMinorant, SampledFunction};
use crate::grid::ExtendedReal;
use crate::solvers::{CoercivityReport, KyFanPoint, PipelineResult, SolutionSet};
use crate::verdict::Verdict;

/// The crate version, stamped into every report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One named assertion inside a suite or example run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Human-readable account of what was measured.
    pub detail: String,
    /// The seed to replay when the check covers a generated instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CheckOutcome {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.to_string(),
            passed,
            detail: detail.into(),
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// The outcome of a property suite or a packaged example run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// How many instances (or checks, for example runs) were exercised.
    pub instances: usize,
    pub failures: usize,
    /// Seeds of failing instances, for replay.
    pub seeds: Vec<u64>,
    pub checks: Vec<CheckOutcome>,
    /// Wall-clock duration; excluded from serialization so reports stay
    /// byte-comparable.
    #[serde(skip)]
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn from_checks(suite: &str, instances: usize, checks: Vec<CheckOutcome>) -> Self {
        let failures = checks.iter().filter(|c| !c.passed).count();
        let seeds = checks
            .iter()
            .filter(|c| !c.passed)
            .filter_map(|c| c.seed)
            .collect();
        SuiteReport {
            suite: suite.to_string(),
            instances,
            failures,
            seeds,
            checks,
            wall_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// A value table flattened for serialization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableDump {
    pub points: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl From<&ValueTable> for TableDump {
    fn from(table: &ValueTable) -> Self {
        TableDump {
            points: table.grid().points().to_vec(),
            values: table.values().to_vec(),
        }
    }
}

/// A sampled one-dimensional function flattened for serialization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledDump {
    pub points: Vec<f64>,
    pub values: Vec<ExtendedReal>,
}

impl From<&SampledFunction> for SampledDump {
    fn from(f: &SampledFunction) -> Self {
        SampledDump {
            points: f.grid().points().to_vec(),
            values: f.values().to_vec(),
        }
    }
}

/// The result payload of a run; only the sections a command actually
/// produced are serialized.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Results {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution_sets: Option<BTreeMap<String, SolutionSet>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<BTreeMap<String, Verdict>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables: Option<BTreeMap<String, TableDump>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functions: Option<BTreeMap<String, SampledDump>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minorants: Option<BTreeMap<String, AffineMinorant>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub families: Option<FamilyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coercivity: Option<CoercivityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ky_fan: Option<KyFanPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteReport>,
}

/// A complete run record.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub command: String,
    /// The effective inputs after defaulting, keyed by flag name.
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub results: Results,
    /// Every seed consumed during the run.
    pub seeds: Vec<u64>,
    /// RFC 3339 creation time; the only field two identical runs differ in.
    pub timestamp: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Results::default(),
            seeds: Vec::new(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    /// Records an effective input value under its flag name.
    pub fn with_input(mut self, key: &str, value: impl Serialize) -> Self {
        let value = serde_json::to_value(value).expect("inputs are plain data");
        self.inputs.insert(key.to_string(), value);
        self
    }

    pub fn to_json_pretty(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports are plain data");
        text.push('\n');
        text
    }
}

fn push_number(line: &mut String, v: f64) {
    // `Display` for doubles is the shortest decimal that round-trips, so the
    // emitted text is deterministic and lossless.
    line.push_str(&format!("{v}"));
}

/// CSV for a sampled function: a `coord,value` header, one row per grid
/// point. Infinite samples print as `inf`/`-inf`.
pub fn sampled_to_csv(coord: &str, f: &SampledFunction) -> String {
    let mut out = format!("{coord},value\n");
    for (x, v) in f.grid().points().iter().zip(f.values()) {
        push_number(&mut out, *x);
        out.push(',');
        match v {
            ExtendedReal::NegInf => out.push_str("-inf"),
            ExtendedReal::PosInf => out.push_str("inf"),
            ExtendedReal::Finite(v) => push_number(&mut out, *v),
        }
        out.push('\n');
    }
    out
}

/// CSV for a value table in long form: an `x,y,value` header, one row per
/// entry, `y` varying fastest.
pub fn table_to_csv(table: &ValueTable) -> String {
    let points = table.grid().points();
    let mut out = String::from("x,y,value\n");
    for (i, row) in table.values().iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            push_number(&mut out, points[i]);
            out.push(',');
            push_number(&mut out, points[j]);
            out.push(',');
            push_number(&mut out, *v);
            out.push('\n');
        }
    }
    out
}

/// CSV for a solution set: an `index,x` header, one row per solution.
pub fn solutions_to_csv(set: &SolutionSet) -> String {
    let mut out = String::from("index,x\n");
    for (&i, &x) in set.indices().iter().zip(set.points().iter()) {
        out.push_str(&format!("{i},"));
        push_number(&mut out, x);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::solvers::solve_ep;
    use crate::verdict::Tolerance;

    #[test]
    fn reports_serialize_with_stable_keys_and_skip_empty_sections() {
        let mut report = Report::new("solve-ep").with_input("tol", 1e-9);
        report.timestamp = "2000-01-01T00:00:00Z".to_string();
        let grid = Grid::uniform(0.0, 1.0, 3).unwrap();
        let table = ValueTable::from_fn(grid, |x, y| y - x).unwrap();
        let set = solve_ep(&table, Tolerance::default());
        report.results.solution_sets = Some(BTreeMap::from([("ep".to_string(), set)]));
        let json = report.to_json_pretty();
        assert!(json.contains("\"tool_version\""));
        assert!(json.contains("\"command\": \"solve-ep\""));
        assert!(json.contains("\"solution_sets\""));
        assert!(!json.contains("\"verdicts\""), "empty sections are omitted");
        assert!(json.ends_with('\n'));
    }

    #[test]
    fn sampled_csv_prints_one_row_per_point() {
        let grid = Grid::uniform(0.0, 2.0, 5).unwrap();
        let values: Vec<f64> = grid.points().iter().map(|y| y - 2.0).collect();
        let f = SampledFunction::from_finite(grid, values).unwrap();
        let csv = sampled_to_csv("y", &f);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines,
            vec!["y,value", "0,-2", "0.5,-1.5", "1,-1", "1.5,-0.5", "2,0"]
        );
    }

    #[test]
    fn table_csv_uses_long_form() {
        let grid = Grid::uniform(0.0, 1.0, 2).unwrap();
        let table = ValueTable::from_fn(grid, |x, y| x + 2.0 * y).unwrap();
        let csv = table_to_csv(&table);
        assert_eq!(csv, "x,y,value\n0,0,0\n0,1,2\n1,0,1\n1,1,3\n");
    }

    #[test]
    fn suite_reports_count_failures_and_collect_seeds() {
        let checks = vec![
            CheckOutcome::new("a", true, "fine"),
            CheckOutcome::new("b", false, "broken").with_seed(42),
        ];
        let report = SuiteReport::from_checks("demo", 2, checks);
        assert!(!report.passed());
        assert_eq!(report.failures, 1);
        assert_eq!(report.seeds, vec![42]);
    }
}
