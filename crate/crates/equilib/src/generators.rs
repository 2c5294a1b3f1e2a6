//! Seeded random-instance generators for the property suites.
//!
//! Each class is produced by a construction that guarantees the property,
//! then verified against the actual checker anyway (and re-drawn on the
//! rare failure), so a generated instance is never taken on faith.
//! Everything is deterministic in the seed.
//!
//! Component magnitudes are kept well above the checker tolerances
//! (factors at least 1e-2, grid spacings at least 1e-2 on the suite
//! grids), so the strict/non-strict distinctions of the checkers are
//! decided by construction margins, not by float noise.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bifunction::ValueTable;
use crate::grid::Grid;
use crate::properties::{
    check_monotonicity, check_properly_quasimonotone, MonotonicityKind,
    ProperlyQuasimonotoneMethod,
};
use crate::verdict::Tolerance;

/// How many fresh draws a verified construction may take before the
/// generator gives up.
pub const RETRY_BUDGET: u32 = 64;

#[derive(Debug, Error, PartialEq)]
pub enum GeneratorError {
    #[error("class {class:?} exhausted {budget} draws from seed {seed} without passing its checker")]
    RetryBudgetExhausted {
        class: InstanceClass,
        seed: u64,
        budget: u32,
    },
}

/// The instance families the harness can draw from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceClass {
    /// Uniform noise with no structure.
    Unrestricted,
    /// `g(y) - g(x) - d(x,y)` with `d >= 0` symmetric, so the pair sum is
    /// `-2 d(x,y)` exactly.
    Monotone,
    /// `a(x) * (y - x)` with `a > 0`.
    Pseudomonotone,
    /// The pseudomonotone skeleton plus off-diagonal noise small enough to
    /// never flip a sign across the spacing; verified.
    Quasimonotone,
    /// `a(x) * (m(y) - m(x))` for a strictly increasing profile `m`, so
    /// every column is nonpositive from above; verified with both methods
    /// where feasible.
    ProperlyQuasimonotone,
    /// Rows `c_x * |y - x| + q_x * |y - x|^2`: quasiconvex with strictly
    /// monotone flanks around a zero diagonal pivot.
    Sq,
}

impl InstanceClass {
    pub const ALL: [InstanceClass; 6] = [
        InstanceClass::Unrestricted,
        InstanceClass::Monotone,
        InstanceClass::Pseudomonotone,
        InstanceClass::Quasimonotone,
        InstanceClass::ProperlyQuasimonotone,
        InstanceClass::Sq,
    ];

    /// The classes with a monotonicity-style checker of their own.
    pub const MONOTONICITY: [InstanceClass; 4] = [
        InstanceClass::Monotone,
        InstanceClass::Pseudomonotone,
        InstanceClass::Quasimonotone,
        InstanceClass::ProperlyQuasimonotone,
    ];
}

/// Draws a value table of the requested class on the grid,
/// deterministically in the seed.
pub fn random_bifunction(
    class: InstanceClass,
    seed: u64,
    grid: &Grid,
) -> Result<ValueTable, GeneratorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = Tolerance::default();
    for _ in 0..RETRY_BUDGET {
        let table = draw(class, &mut rng, grid);
        if verify(class, &table, tol) {
            return Ok(table);
        }
    }
    Err(GeneratorError::RetryBudgetExhausted {
        class,
        seed,
        budget: RETRY_BUDGET,
    })
}

fn draw(class: InstanceClass, rng: &mut ChaCha8Rng, grid: &Grid) -> ValueTable {
    let n = grid.count();
    let points = grid.points();
    let values: Vec<Vec<f64>> = match class {
        InstanceClass::Unrestricted => (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect(),
        InstanceClass::Monotone => {
            let g: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            // Symmetric nonnegative drag, bounded away from zero off the
            // diagonal so float rounding cannot push a pair sum positive.
            let mut d = vec![vec![0.0; n]; n];
            for i in 0..n {
                d[i][i] = rng.gen_range(0.0..0.1);
                for j in i + 1..n {
                    let drag = rng.gen_range(0.01..1.0);
                    d[i][j] = drag;
                    d[j][i] = drag;
                }
            }
            (0..n)
                .map(|i| (0..n).map(|j| g[j] - g[i] - d[i][j]).collect())
                .collect()
        }
        InstanceClass::Pseudomonotone => {
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
            (0..n)
                .map(|i| (0..n).map(|j| a[i] * (points[j] - points[i])).collect())
                .collect()
        }
        InstanceClass::Quasimonotone => {
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
            let eta = 0.04 * grid.spacing();
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let base = a[i] * (points[j] - points[i]);
                            if i == j {
                                base
                            } else {
                                base + rng.gen_range(-eta..eta)
                            }
                        })
                        .collect()
                })
                .collect()
        }
        InstanceClass::ProperlyQuasimonotone => {
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
            // Strictly increasing profile spanning one unit, with gaps
            // bounded below.
            let gaps: Vec<f64> = (0..n.saturating_sub(1))
                .map(|_| rng.gen_range(0.5..1.5))
                .collect();
            let span: f64 = gaps.iter().sum::<f64>().max(1.0);
            let mut m = Vec::with_capacity(n);
            let mut acc = rng.gen_range(-0.5..0.0);
            m.push(acc);
            for gap in gaps {
                acc += gap / span;
                m.push(acc);
            }
            (0..n)
                .map(|i| (0..n).map(|j| a[i] * (m[j] - m[i])).collect())
                .collect()
        }
        InstanceClass::Sq => {
            let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
            let q: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..0.5)).collect();
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let d = (points[j] - points[i]).abs();
                            c[i] * d + q[i] * d * d
                        })
                        .collect()
                })
                .collect()
        }
    };
    ValueTable::new(grid.clone(), values).expect("constructed tables are square and finite")
}

fn verify(class: InstanceClass, table: &ValueTable, tol: Tolerance) -> bool {
    match class {
        InstanceClass::Unrestricted | InstanceClass::Sq => true,
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
                .expect("the pair method has no size limit")
                .is_pass()
        }
    }
}

/// The checker kind matching a constructed monotonicity class.
pub fn checker_for(class: InstanceClass) -> Option<MonotonicityKind> {
    match class {
        InstanceClass::Monotone => Some(MonotonicityKind::Monotone),
        InstanceClass::Pseudomonotone => Some(MonotonicityKind::Pseudomonotone),
        InstanceClass::Quasimonotone => Some(MonotonicityKind::Quasimonotone),
        _ => None,
    }
}
