//! Decision procedures for the generalized-monotonicity hierarchy, the
//! upper sign property, and the two segment conditions, all running on
//! sampled value tables and extracting counterexample witnesses.
//!
//! Every check is an exhaustive scan over grid-exact point combinations.
//! Non-strict inequalities in the defining implications are relaxed by the
//! `slack` tolerance and strict inequalities by the `strict` tolerance, so
//! exact-zero fixtures are classified the way their closed-form analysis
//! says they should be. Scans run in a fixed order (outer index ascending,
//! then inner), so the reported witness is always the lexicographically
//! first violation.

use serde::Serialize;
use thiserror::Error;

use crate::bifunction::ValueTable;
use crate::verdict::{Tolerance, Verdict, Witness};

/// Largest grid for which the subset scan of
/// [`check_properly_quasimonotone`] is allowed to run; the scan is
/// exponential in the point count.
pub const MAX_SUBSET_POINTS: usize = 12;

#[derive(Debug, Error, PartialEq)]
pub enum PropertyError {
    #[error("the subset scan handles at most {MAX_SUBSET_POINTS} grid points, got {count}")]
    TooManyPoints { count: usize },
    #[error("local scope needs a positive finite radius, got {radius}")]
    BadRadius { radius: f64 },
}

/// The three pairwise monotonicity classes, ordered from strongest to
/// weakest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonotonicityKind {
    /// `f(x,y) + f(y,x) <= 0` for every pair.
    Monotone,
    /// `f(x,y) >= 0` implies `f(y,x) <= 0`.
    Pseudomonotone,
    /// `f(x,y) > 0` implies `f(y,x) <= 0`.
    Quasimonotone,
}

impl MonotonicityKind {
    pub const ALL: [MonotonicityKind; 3] = [
        MonotonicityKind::Monotone,
        MonotonicityKind::Pseudomonotone,
        MonotonicityKind::Quasimonotone,
    ];
}

/// How [`check_properly_quasimonotone`] searches for a violation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProperlyQuasimonotoneMethod {
    /// One-dimensional reduction: every hull point is covered by the pair
    /// of subset endpoints flanking it, so scanning pairs (and singletons)
    /// is exhaustive. Linear passes per column.
    Pair,
    /// Literal scan over all subsets of grid points and every grid point in
    /// their interval hull. Exponential; limited to
    /// [`MAX_SUBSET_POINTS`]-point grids.
    Subset,
}

/// Pair selection for the upper-sign scan: all ordered pairs, or only pairs
/// within a metric radius of each other.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "scope", content = "radius")]
pub enum Scope {
    Global,
    Local(f64),
}

/// The two segment conditions. Their interpolation conventions differ and
/// are implemented separately: beta walks `x_t = t*x + (1-t)*y` between a
/// diagonal zero and a strictly negative value; alpha walks
/// `y_t = t*y_1 + (1-t)*y_2` between a non-strict and a strict negative
/// value on one row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentCondition {
    Alpha,
    Beta,
}

/// Checks one of the three pairwise monotonicity classes by exhaustive
/// pair scan.
///
/// The monotone scan walks the lower triangle (`j <= i`) because the
/// defining sum is symmetric; the implication-shaped classes scan all
/// ordered pairs. Diagonal pairs are included: a positive diagonal entry
/// falsifies every class.
pub fn check_monotonicity(table: &ValueTable, kind: MonotonicityKind, tol: Tolerance) -> Verdict {
    let n = table.count();
    let grid = table.grid();
    let witness_for = |i: usize, j: usize| {
        Witness::new()
            .with_point("x", i, grid.point(i))
            .with_point("y", j, grid.point(j))
            .with_value("f(x,y)", table.value(i, j))
            .with_value("f(y,x)", table.value(j, i))
    };
    match kind {
        MonotonicityKind::Monotone => {
            for i in 0..n {
                for j in 0..=i {
                    let sum = table.value(i, j) + table.value(j, i);
                    if !tol.le_zero(sum) {
                        return Verdict::fail(tol, witness_for(i, j).with_value("sum", sum));
                    }
                }
            }
        }
        MonotonicityKind::Pseudomonotone => {
            for i in 0..n {
                for j in 0..n {
                    if tol.ge_zero(table.value(i, j)) && !tol.le_zero(table.value(j, i)) {
                        return Verdict::fail(tol, witness_for(i, j));
                    }
                }
            }
        }
        MonotonicityKind::Quasimonotone => {
            for i in 0..n {
                for j in 0..n {
                    if tol.gt_zero(table.value(i, j)) && !tol.le_zero(table.value(j, i)) {
                        return Verdict::fail(tol, witness_for(i, j));
                    }
                }
            }
        }
    }
    Verdict::pass(tol)
}

/// Checks proper quasimonotonicity: every point of the interval hull of
/// any set of grid points must see a non-positive value from at least one
/// of them.
pub fn check_properly_quasimonotone(
    table: &ValueTable,
    method: ProperlyQuasimonotoneMethod,
    tol: Tolerance,
) -> Result<Verdict, PropertyError> {
    match method {
        ProperlyQuasimonotoneMethod::Pair => Ok(properly_quasimonotone_pairs(table, tol)),
        ProperlyQuasimonotoneMethod::Subset => properly_quasimonotone_subsets(table, tol),
    }
}

fn properly_quasimonotone_pairs(table: &ValueTable, tol: Tolerance) -> Verdict {
    let n = table.count();
    let grid = table.grid();
    for k in 0..n {
        // A violation needs positive values looking at x_k from both sides
        // (the singleton case is i == j == k).
        let left = (0..=k).find(|&i| !tol.le_zero(table.value(i, k)));
        let right = (k..n).find(|&j| !tol.le_zero(table.value(j, k)));
        if let (Some(i), Some(j)) = (left, right) {
            let witness = Witness::new()
                .with_point("x_1", i, grid.point(i))
                .with_point("x_2", j, grid.point(j))
                .with_point("x", k, grid.point(k))
                .with_value("f(x_1,x)", table.value(i, k))
                .with_value("f(x_2,x)", table.value(j, k));
            return Verdict::fail(tol, witness);
        }
    }
    Verdict::pass(tol)
}

fn properly_quasimonotone_subsets(
    table: &ValueTable,
    tol: Tolerance,
) -> Result<Verdict, PropertyError> {
    let n = table.count();
    if n > MAX_SUBSET_POINTS {
        return Err(PropertyError::TooManyPoints { count: n });
    }
    let grid = table.grid();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let lo = members[0];
        let hi = *members.last().expect("mask is nonzero");
        for k in lo..=hi {
            if members.iter().all(|&i| !tol.le_zero(table.value(i, k))) {
                let mut witness = Witness::new();
                for &i in &members {
                    witness = witness
                        .with_point("member", i, grid.point(i))
                        .with_value("f(member,x)", table.value(i, k));
                }
                witness = witness.with_point("x", k, grid.point(k));
                return Ok(Verdict::fail(tol, witness));
            }
        }
    }
    Ok(Verdict::pass(tol))
}

/// Checks the (local) upper sign property.
///
/// For an ordered index pair `(i, j)` the premise ranges over the grid
/// points strictly between them: every such `x_t` must satisfy
/// `f(x_t, x_i) <= 0`. When the premise holds — vacuously for adjacent
/// indices and for `i == j` — the conclusion `f(x_i, x_j) >= 0` is
/// required. Local scope restricts `j` to `|x_i - x_j| <= radius`.
pub fn check_upper_sign(
    table: &ValueTable,
    scope: Scope,
    tol: Tolerance,
) -> Result<Verdict, PropertyError> {
    let radius = match scope {
        Scope::Global => None,
        Scope::Local(r) => {
            if !(r > 0.0 && r.is_finite()) {
                return Err(PropertyError::BadRadius { radius: r });
            }
            Some(r)
        }
    };
    let n = table.count();
    let grid = table.grid();
    for i in 0..n {
        // premise[j]: every k strictly between i and j has f(x_k, x_i) <= 0.
        let mut premise = vec![true; n];
        for j in (0..i.saturating_sub(1)).rev() {
            premise[j] = premise[j + 1] && tol.le_zero(table.value(j + 1, i));
        }
        for j in i + 2..n {
            premise[j] = premise[j - 1] && tol.le_zero(table.value(j - 1, i));
        }
        for j in 0..n {
            if let Some(r) = radius {
                if (grid.point(i) - grid.point(j)).abs() > r + tol.slack {
                    continue;
                }
            }
            if premise[j] && !tol.ge_zero(table.value(i, j)) {
                let witness = Witness::new()
                    .with_point("x", i, grid.point(i))
                    .with_point("y", j, grid.point(j))
                    .with_value("f(x,y)", table.value(i, j));
                return Ok(Verdict::fail(tol, witness));
            }
        }
    }
    Ok(Verdict::pass(tol))
}

/// Checks segment condition alpha or beta on grid-exact segments.
pub fn check_segment_condition(
    table: &ValueTable,
    condition: SegmentCondition,
    tol: Tolerance,
) -> Verdict {
    match condition {
        SegmentCondition::Beta => segment_beta(table, tol),
        SegmentCondition::Alpha => segment_alpha(table, tol),
    }
}

/// Beta: `f(x,y) < 0` and `f(x,x) = 0` force `f(x, x_t) < 0` at every grid
/// point strictly between `x` and `y`.
fn segment_beta(table: &ValueTable, tol: Tolerance) -> Verdict {
    let n = table.count();
    let grid = table.grid();
    for i in 0..n {
        if !tol.eq_zero(table.value(i, i)) {
            continue;
        }
        for j in 0..n {
            if !tol.lt_zero(table.value(i, j)) {
                continue;
            }
            let (lo, hi) = (i.min(j), i.max(j));
            for k in lo + 1..hi {
                if !tol.lt_zero(table.value(i, k)) {
                    let witness = Witness::new()
                        .with_point("x", i, grid.point(i))
                        .with_point("y", j, grid.point(j))
                        .with_point("x_t", k, grid.point(k))
                        .with_value("f(x,y)", table.value(i, j))
                        .with_value("f(x,x)", table.value(i, i))
                        .with_value("f(x,x_t)", table.value(i, k));
                    return Verdict::fail(tol, witness);
                }
            }
        }
    }
    Verdict::pass(tol)
}

/// Alpha: `f(x,y_1) <= 0` and `f(x,y_2) < 0` force `f(x, y_t) < 0` at
/// every grid point strictly between `y_1` and `y_2`.
///
/// The reported witness uses the extremal partners around the first
/// violating `y_t`: the smallest strict-negative index on the left paired
/// with the largest non-positive index on the right when that arrangement
/// exists, otherwise the mirror arrangement.
fn segment_alpha(table: &ValueTable, tol: Tolerance) -> Verdict {
    let n = table.count();
    let grid = table.grid();
    for r in 0..n {
        let row = table.row(r);
        let in_a = |j: usize| tol.le_zero(row[j]);
        let in_b = |j: usize| tol.lt_zero(row[j]);
        for k in 0..n {
            if tol.lt_zero(row[k]) {
                continue;
            }
            let left_b = (0..k).find(|&j| in_b(j));
            let right_a = (k + 1..n).rev().find(|&j| in_a(j));
            let (y1, y2) = if let (Some(b), Some(a)) = (left_b, right_a) {
                (a, b)
            } else {
                let left_a = (0..k).find(|&j| in_a(j));
                let right_b = (k + 1..n).rev().find(|&j| in_b(j));
                match (left_a, right_b) {
                    (Some(a), Some(b)) => (a, b),
                    _ => continue,
                }
            };
            let witness = Witness::new()
                .with_point("x", r, grid.point(r))
                .with_point("y_1", y1, grid.point(y1))
                .with_point("y_2", y2, grid.point(y2))
                .with_point("y_t", k, grid.point(k))
                .with_value("f(x,y_1)", row[y1])
                .with_value("f(x,y_2)", row[y2])
                .with_value("f(x,y_t)", row[k]);
            return Verdict::fail(tol, witness);
        }
    }
    Verdict::pass(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bifunction::{sample_matrix, BifunctionSpec};
    use crate::grid::{Grid, Interval};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn table_from(expr: &str, domain: Interval, grid: &Grid) -> ValueTable {
        let spec = BifunctionSpec::from_expression("t", domain, expr).unwrap();
        sample_matrix(&spec, grid).unwrap()
    }

    fn unit_grid(count: usize) -> Grid {
        Grid::uniform(0.0, 1.0, count).unwrap()
    }

    fn random_table(seed: u64, n: usize) -> ValueTable {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let grid = unit_grid(n);
        ValueTable::from_fn(grid, |_, _| rng.gen_range(-1.0..1.0)).unwrap()
    }

    #[test]
    fn spike_is_not_monotone_and_names_the_corner_pair() {
        let grid = unit_grid(201);
        let table = table_from(
            "if x == 1 and y == 0: 1; if x == 0 and y == 1: 1; else: 0",
            Interval::bounded(0.0, 1.0).unwrap(),
            &grid,
        );
        let verdict = check_monotonicity(&table, MonotonicityKind::Monotone, tol());
        assert!(!verdict.is_pass());
        let witness = verdict.witness().unwrap();
        assert_eq!(witness.point("x").unwrap().point, 1.0);
        assert_eq!(witness.point("y").unwrap().point, 0.0);
        let sum = witness.values.iter().find(|v| v.label == "sum").unwrap();
        assert_eq!(sum.value, 2.0);
    }

    #[test]
    fn difference_is_monotone() {
        let grid = unit_grid(9);
        let table = table_from("y - x", Interval::bounded(0.0, 1.0).unwrap(), &grid);
        assert!(check_monotonicity(&table, MonotonicityKind::Monotone, tol()).is_pass());
        assert!(check_monotonicity(&table, MonotonicityKind::Pseudomonotone, tol()).is_pass());
        assert!(check_monotonicity(&table, MonotonicityKind::Quasimonotone, tol()).is_pass());
    }

    #[test]
    fn pseudomonotone_failure_can_still_be_quasimonotone() {
        // f(x0, x1) = 0 (premise of pseudo, not of quasi) while
        // f(x1, x0) = 0.5 > 0.
        let grid = unit_grid(2);
        let table = ValueTable::new(grid, vec![vec![0.0, 0.0], vec![0.5, 0.0]]).unwrap();
        let pseudo = check_monotonicity(&table, MonotonicityKind::Pseudomonotone, tol());
        assert!(!pseudo.is_pass());
        let witness = pseudo.witness().unwrap();
        assert_eq!(witness.point("x").unwrap().index, 0);
        assert_eq!(witness.point("y").unwrap().index, 1);
        assert!(check_monotonicity(&table, MonotonicityKind::Quasimonotone, tol()).is_pass());
    }

    #[test]
    fn monotonicity_matches_a_literal_oracle_on_random_tables() {
        // Definition-literal recomputation, scanning every ordered pair.
        let oracle = |table: &ValueTable, kind: MonotonicityKind| -> bool {
            let n = table.count();
            for i in 0..n {
                for j in 0..n {
                    let fxy = table.value(i, j);
                    let fyx = table.value(j, i);
                    let bad = match kind {
                        MonotonicityKind::Monotone => fxy + fyx > 1e-9,
                        MonotonicityKind::Pseudomonotone => fxy >= -1e-9 && fyx > 1e-9,
                        MonotonicityKind::Quasimonotone => fxy > 1e-12 && fyx > 1e-9,
                    };
                    if bad {
                        return false;
                    }
                }
            }
            true
        };
        for seed in 0..40 {
            let table = random_table(seed, 8);
            for kind in MonotonicityKind::ALL {
                assert_eq!(
                    check_monotonicity(&table, kind, tol()).is_pass(),
                    oracle(&table, kind),
                    "seed {seed}, kind {kind:?}"
                );
            }
        }
    }

    #[test]
    fn constant_negative_and_zero_tables_are_properly_quasimonotone() {
        let grid = unit_grid(5);
        for constant in [-1.0, 0.0] {
            let table = ValueTable::from_fn(grid.clone(), |_, _| constant).unwrap();
            for method in [
                ProperlyQuasimonotoneMethod::Pair,
                ProperlyQuasimonotoneMethod::Subset,
            ] {
                assert!(check_properly_quasimonotone(&table, method, tol())
                    .unwrap()
                    .is_pass());
            }
        }
    }

    #[test]
    fn difference_on_three_points_is_properly_quasimonotone_both_ways() {
        let grid = Grid::uniform(0.0, 1.0, 3).unwrap();
        let table = table_from("y - x", Interval::bounded(0.0, 1.0).unwrap(), &grid);
        let pair =
            check_properly_quasimonotone(&table, ProperlyQuasimonotoneMethod::Pair, tol()).unwrap();
        let subset =
            check_properly_quasimonotone(&table, ProperlyQuasimonotoneMethod::Subset, tol())
                .unwrap();
        assert!(pair.is_pass());
        assert!(subset.is_pass());
    }

    #[test]
    fn flanked_positive_column_is_caught_with_smallest_flanks() {
        // Column 1 is positive seen from rows 0 and 2.
        let grid = Grid::uniform(0.0, 1.0, 3).unwrap();
        let table = ValueTable::new(
            grid,
            vec![
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
            ],
        )
        .unwrap();
        let verdict =
            check_properly_quasimonotone(&table, ProperlyQuasimonotoneMethod::Pair, tol()).unwrap();
        assert!(!verdict.is_pass());
        let witness = verdict.witness().unwrap();
        assert_eq!(witness.point("x_1").unwrap().index, 0);
        assert_eq!(witness.point("x_2").unwrap().index, 2);
        assert_eq!(witness.point("x").unwrap().index, 1);
        let subset =
            check_properly_quasimonotone(&table, ProperlyQuasimonotoneMethod::Subset, tol())
                .unwrap();
        assert!(!subset.is_pass());
    }

    #[test]
    fn subset_method_rejects_large_grids() {
        let grid = unit_grid(13);
        let table = ValueTable::from_fn(grid, |_, _| 0.0).unwrap();
        assert_eq!(
            check_properly_quasimonotone(&table, ProperlyQuasimonotoneMethod::Subset, tol())
                .unwrap_err(),
            PropertyError::TooManyPoints { count: 13 }
        );
    }

    #[test]
    fn pair_and_subset_methods_agree_on_small_random_tables() {
        for seed in 0..60 {
            let table = random_table(seed, 6);
            let pair = check_properly_quasimonotone(&table, ProperlyQuasimonotoneMethod::Pair, tol())
                .unwrap();
            let subset =
                check_properly_quasimonotone(&table, ProperlyQuasimonotoneMethod::Subset, tol())
                    .unwrap();
            assert_eq!(pair.is_pass(), subset.is_pass(), "seed {seed}");
        }
    }

    #[test]
    fn positive_and_zero_tables_have_the_upper_sign_property() {
        let grid = unit_grid(7);
        for constant in [1.0, 0.0] {
            let table = ValueTable::from_fn(grid.clone(), |_, _| constant).unwrap();
            assert!(check_upper_sign(&table, Scope::Global, tol())
                .unwrap()
                .is_pass());
        }
    }

    #[test]
    fn negative_interior_rows_fail_upper_sign_at_the_first_pair() {
        let grid = Grid::uniform(0.0, 1.0, 3).unwrap();
        let table = ValueTable::from_fn(grid, |x, _| if x > 0.0 { -1.0 } else { 0.0 }).unwrap();
        let verdict = check_upper_sign(&table, Scope::Global, tol()).unwrap();
        assert!(!verdict.is_pass());
        let witness = verdict.witness().unwrap();
        assert_eq!(witness.point("x").unwrap().point, 0.5);
        assert_eq!(witness.point("y").unwrap().point, 0.0);
    }

    #[test]
    fn difference_fails_upper_sign_on_adjacent_pairs() {
        // Discretization note: y - x has the property on the continuum, but
        // adjacent grid pairs have a vacuous premise and a negative
        // conclusion, so the grid check must fail.
        let grid = Grid::uniform(0.0, 1.0, 3).unwrap();
        let table = table_from("y - x", Interval::bounded(0.0, 1.0).unwrap(), &grid);
        let verdict = check_upper_sign(&table, Scope::Global, tol()).unwrap();
        assert!(!verdict.is_pass());
        let witness = verdict.witness().unwrap();
        assert_eq!(witness.point("x").unwrap().point, 0.5);
        assert_eq!(witness.point("y").unwrap().point, 0.0);
    }

    #[test]
    fn local_scope_ignores_violations_beyond_the_radius() {
        // Only the far-apart pair (0, 1) violates; radius 0.5 excludes it.
        let grid = Grid::uniform(0.0, 1.0, 5).unwrap();
        let table = ValueTable::from_fn(grid, |x, y| {
            if x == 0.0 && y == 1.0 {
                -1.0
            } else {
                0.0
            }
        })
        .unwrap();
        let global = check_upper_sign(&table, Scope::Global, tol()).unwrap();
        assert!(!global.is_pass());
        let local = check_upper_sign(&table, Scope::Local(0.5), tol()).unwrap();
        assert!(local.is_pass());
        assert_eq!(
            check_upper_sign(&table, Scope::Local(0.0), tol()).unwrap_err(),
            PropertyError::BadRadius { radius: 0.0 }
        );
    }

    fn vee_with_notch() -> ValueTable {
        // Rows of the value-table analogue of "y - 2 away from y = 1,
        // zero at y = 1" on [0, 2].
        let grid = Grid::uniform(0.0, 2.0, 201).unwrap();
        table_from(
            "if y == 1: 0; else: y - 2",
            Interval::bounded(0.0, 2.0).unwrap(),
            &grid,
        )
    }

    #[test]
    fn notched_ramp_fails_beta_at_the_notch() {
        let verdict = check_segment_condition(&vee_with_notch(), SegmentCondition::Beta, tol());
        assert!(!verdict.is_pass());
        let witness = verdict.witness().unwrap();
        assert_eq!(witness.point("x").unwrap().point, 2.0);
        assert_eq!(witness.point("y").unwrap().point, 0.0);
        assert_eq!(witness.point("x_t").unwrap().point, 1.0);
    }

    #[test]
    fn notched_ramp_fails_alpha_with_extremal_partners() {
        let verdict = check_segment_condition(&vee_with_notch(), SegmentCondition::Alpha, tol());
        assert!(!verdict.is_pass());
        let witness = verdict.witness().unwrap();
        assert_eq!(witness.point("y_1").unwrap().point, 2.0);
        assert_eq!(witness.point("y_2").unwrap().point, 0.0);
        assert_eq!(witness.point("y_t").unwrap().point, 1.0);
    }

    #[test]
    fn difference_satisfies_both_segment_conditions() {
        let grid = unit_grid(9);
        let table = table_from("y - x", Interval::bounded(0.0, 1.0).unwrap(), &grid);
        assert!(check_segment_condition(&table, SegmentCondition::Beta, tol()).is_pass());
        assert!(check_segment_condition(&table, SegmentCondition::Alpha, tol()).is_pass());
    }

    #[test]
    fn segment_conditions_match_literal_oracles_on_random_tables() {
        let beta_oracle = |table: &ValueTable| -> bool {
            let n = table.count();
            for i in 0..n {
                for j in 0..n {
                    for k in i.min(j) + 1..i.max(j) {
                        if table.value(i, j) < -1e-12
                            && table.value(i, i).abs() <= 1e-9
                            && table.value(i, k) >= -1e-12
                        {
                            return false;
                        }
                    }
                }
            }
            true
        };
        let alpha_oracle = |table: &ValueTable| -> bool {
            let n = table.count();
            for r in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        for k in a.min(b) + 1..a.max(b) {
                            if table.value(r, a) <= 1e-9
                                && table.value(r, b) < -1e-12
                                && table.value(r, k) >= -1e-12
                            {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        };
        for seed in 100..140 {
            let table = random_table(seed, 8);
            assert_eq!(
                check_segment_condition(&table, SegmentCondition::Beta, tol()).is_pass(),
                beta_oracle(&table),
                "beta, seed {seed}"
            );
            assert_eq!(
                check_segment_condition(&table, SegmentCondition::Alpha, tol()).is_pass(),
                alpha_oracle(&table),
                "alpha, seed {seed}"
            );
        }
    }

    #[test]
    fn witnesses_reproduce_the_violation() {
        for seed in 200..230 {
            let table = random_table(seed, 8);
            let verdict = check_monotonicity(&table, MonotonicityKind::Monotone, tol());
            if let Some(w) = verdict.witness() {
                let i = w.point("x").unwrap().index;
                let j = w.point("y").unwrap().index;
                assert!(table.value(i, j) + table.value(j, i) > 1e-9);
            }
            let verdict = check_upper_sign(&table, Scope::Global, tol()).unwrap();
            if let Some(w) = verdict.witness() {
                let i = w.point("x").unwrap().index;
                let j = w.point("y").unwrap().index;
                assert!(table.value(i, j) < -1e-9);
                for k in i.min(j) + 1..i.max(j) {
                    assert!(table.value(k, i) <= 1e-9);
                }
            }
        }
    }
}
