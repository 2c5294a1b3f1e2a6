//! Domains, uniform grids, and nested truncations.
//!
//! The engine works on closed intervals `K ⊆ ℝ` sampled by uniform grids.
//! Unbounded domains are handled through nested truncations
//! `K_n = K ∩ [−n, n]`. All truncation grids of one schedule live on a single
//! lattice anchored at a finite endpoint of the domain (or at 0 on the whole
//! line), so every point of level `n` reappears bit-for-bit at level `n + 1`.

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// A real number extended with `+∞` and `−∞`.
///
/// `+∞` encodes "no constraint / outside the domain"; `−∞` only ever shows up
/// as the reported limit of a diverging regularization, never as an input
/// sample. `NaN` is rejected at every constructor, which keeps the order
/// total.
#[derive(Clone, Copy, Debug)]
pub enum ExtendedReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtendedReal {
    /// Classifies an IEEE double. Panics on `NaN`, which no sampled value may
    /// carry.
    pub fn new(value: f64) -> Self {
        if value.is_nan() {
            panic!("extended reals cannot hold NaN");
        }
        if value == f64::INFINITY {
            ExtendedReal::PosInf
        } else if value == f64::NEG_INFINITY {
            ExtendedReal::NegInf
        } else {
            ExtendedReal::Finite(value)
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    /// The value as an IEEE double, mapping the infinities to `±∞`.
    pub fn as_f64(self) -> f64 {
        match self {
            ExtendedReal::NegInf => f64::NEG_INFINITY,
            ExtendedReal::Finite(v) => v,
            ExtendedReal::PosInf => f64::INFINITY,
        }
    }

    fn rank(self) -> i8 {
        match self {
            ExtendedReal::NegInf => -1,
            ExtendedReal::Finite(_) => 0,
            ExtendedReal::PosInf => 1,
        }
    }
}

impl PartialEq for ExtendedReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtendedReal {}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => a.total_cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(value: f64) -> Self {
        ExtendedReal::new(value)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::NegInf => write!(f, "-inf"),
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::PosInf => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(v) => serializer.serialize_f64(*v),
            ExtendedReal::PosInf => serializer.serialize_str("inf"),
            ExtendedReal::NegInf => serializer.serialize_str("-inf"),
        }
    }
}

struct ExtendedRealVisitor;

impl Visitor<'_> for ExtendedRealVisitor {
    type Value = ExtendedReal;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a finite number, \"inf\", or \"-inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
        if v.is_nan() {
            return Err(E::custom("NaN is not an extended real"));
        }
        Ok(ExtendedReal::new(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
        Ok(ExtendedReal::Finite(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
        Ok(ExtendedReal::Finite(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
        match v {
            "inf" | "+inf" => Ok(ExtendedReal::PosInf),
            "-inf" => Ok(ExtendedReal::NegInf),
            other => Err(E::custom(format!("unrecognized extended real {other:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(ExtendedRealVisitor)
    }
}

/// Errors from grid and truncation construction.
#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("interval bounds are invalid: [{lower}, {upper}]")]
    InvalidInterval {
        lower: ExtendedReal,
        upper: ExtendedReal,
    },
    #[error("a grid over [{lower}, {upper}] needs count >= 2 (got {count}); count 1 requires lower == upper")]
    BadCount { lower: f64, upper: f64, count: usize },
    #[error("grid bounds must be finite numbers (got {lower}, {upper})")]
    NonFiniteBounds { lower: f64, upper: f64 },
    #[error("truncation spacing must be a positive finite number (got {spacing})")]
    BadSpacing { spacing: f64 },
    #[error("truncation levels must satisfy 1 <= n_min <= n_max (got {n_min}..={n_max})")]
    BadLevels { n_min: u32, n_max: u32 },
    #[error("truncation level {n} lies outside the schedule range {n_min}..={n_max}")]
    LevelOutOfRange { n: u32, n_min: u32, n_max: u32 },
    #[error("the domain does not meet [-{n}, {n}]; the truncation is empty")]
    EmptyTruncation { n: u32 },
}

/// A closed interval of the extended real line; the domain `K` of a
/// bifunction. Either end may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lower: ExtendedReal,
    upper: ExtendedReal,
}

impl Interval {
    pub fn new(lower: ExtendedReal, upper: ExtendedReal) -> Result<Self, GridError> {
        let degenerate_infinite = lower == upper && !lower.is_finite();
        if lower > upper || degenerate_infinite {
            return Err(GridError::InvalidInterval { lower, upper });
        }
        Ok(Interval { lower, upper })
    }

    /// A bounded interval `[lower, upper]` with finite ends.
    pub fn bounded(lower: f64, upper: f64) -> Result<Self, GridError> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(GridError::NonFiniteBounds { lower, upper });
        }
        Interval::new(ExtendedReal::Finite(lower), ExtendedReal::Finite(upper))
    }

    /// `[lower, +∞)` with a finite lower end.
    pub fn at_least(lower: f64) -> Result<Self, GridError> {
        if !lower.is_finite() {
            return Err(GridError::NonFiniteBounds {
                lower,
                upper: f64::INFINITY,
            });
        }
        Interval::new(ExtendedReal::Finite(lower), ExtendedReal::PosInf)
    }

    /// The whole real line.
    pub fn whole_line() -> Self {
        Interval {
            lower: ExtendedReal::NegInf,
            upper: ExtendedReal::PosInf,
        }
    }

    pub fn lower(&self) -> ExtendedReal {
        self.lower
    }

    pub fn upper(&self) -> ExtendedReal {
        self.upper
    }

    pub fn contains(&self, x: f64) -> bool {
        if x.is_nan() {
            return false;
        }
        self.lower <= ExtendedReal::new(x) && ExtendedReal::new(x) <= self.upper
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// A uniform grid `x_i = lower + i·h` over a bounded interval.
///
/// Grids store their points explicitly so that truncation grids built from a
/// shared lattice nest bit-for-bit across levels. For any indices
/// `i ≤ k ≤ j`, the point `x_k` equals the convex combination
/// `t·x_i + (1−t)·x_j` with `t = (j−k)/(j−i)` up to one ulp, which is what
/// makes segment-based property checks exact on the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    spacing: f64,
}

/// Grids serialize as their describing parameters, not the point list: a
/// uniform grid is fully determined by its ends and count, and reports stay
/// readable.
impl Serialize for Grid {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Grid", 4)?;
        s.serialize_field("lower", &self.lower())?;
        s.serialize_field("upper", &self.upper())?;
        s.serialize_field("count", &self.count())?;
        s.serialize_field("spacing", &self.spacing)?;
        s.end()
    }
}

impl Grid {
    /// A uniform grid with `count` points over `[lower, upper]`.
    pub fn uniform(lower: f64, upper: f64, count: usize) -> Result<Self, GridError> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(GridError::NonFiniteBounds { lower, upper });
        }
        let bad_single = count == 1 && lower != upper;
        let bad_multi = count >= 2 && !(lower < upper);
        if count == 0 || bad_single || bad_multi {
            return Err(GridError::BadCount {
                lower,
                upper,
                count,
            });
        }
        if count == 1 {
            return Ok(Grid {
                points: vec![lower],
                spacing: 0.0,
            });
        }
        let spacing = (upper - lower) / (count - 1) as f64;
        let points = (0..count).map(|i| lower + i as f64 * spacing).collect();
        Ok(Grid { points, spacing })
    }

    /// Points `anchor + k·spacing` for `k = k_lo..=k_hi`. Used by truncation
    /// schedules so that all levels share one lattice.
    pub(crate) fn from_lattice(anchor: f64, k_lo: i64, k_hi: i64, spacing: f64) -> Self {
        let points: Vec<f64> = (k_lo..=k_hi)
            .map(|k| anchor + k as f64 * spacing)
            .collect();
        Grid { points, spacing }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, index: usize) -> f64 {
        self.points[index]
    }

    pub fn lower(&self) -> f64 {
        *self.points.first().expect("grids are never empty")
    }

    pub fn upper(&self) -> f64 {
        *self.points.last().expect("grids are never empty")
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Index of the grid point equal to `x`, up to a tiny relative
    /// tolerance. Points off the lattice return `None`; points shared
    /// between nested truncation grids are bitwise identical and always
    /// found.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let eps = 1e-9 * x.abs().max(1.0);
        let i = self.points.partition_point(|p| *p < x - eps);
        if i < self.points.len() && (self.points[i] - x).abs() <= eps {
            Some(i)
        } else {
            None
        }
    }
}

/// Spacing and level range for the nested truncations `K_n = K ∩ [−n, n]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncationSchedule {
    domain: Interval,
    spacing: f64,
    n_min: u32,
    n_max: u32,
}

impl TruncationSchedule {
    pub fn new(domain: Interval, spacing: f64, n_min: u32, n_max: u32) -> Result<Self, GridError> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(GridError::BadSpacing { spacing });
        }
        if n_min == 0 || n_min > n_max {
            return Err(GridError::BadLevels { n_min, n_max });
        }
        Ok(TruncationSchedule {
            domain,
            spacing,
            n_min,
            n_max,
        })
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn n_min(&self) -> u32 {
        self.n_min
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> {
        self.n_min..=self.n_max
    }

    pub fn level_count(&self) -> usize {
        (self.n_max - self.n_min + 1) as usize
    }

    /// The grid over `K_n`, with interior flags for `|x| < n`.
    pub fn truncation(&self, n: u32) -> Result<TruncationGrid, GridError> {
        if n < self.n_min || n > self.n_max {
            return Err(GridError::LevelOutOfRange {
                n,
                n_min: self.n_min,
                n_max: self.n_max,
            });
        }
        let bound = n as f64;
        let lo = match self.domain.lower() {
            ExtendedReal::Finite(v) => v.max(-bound),
            ExtendedReal::NegInf => -bound,
            ExtendedReal::PosInf => unreachable!("intervals cannot start at +inf"),
        };
        let hi = match self.domain.upper() {
            ExtendedReal::Finite(v) => v.min(bound),
            ExtendedReal::PosInf => bound,
            ExtendedReal::NegInf => unreachable!("intervals cannot end at -inf"),
        };
        if lo > hi {
            return Err(GridError::EmptyTruncation { n });
        }
        let anchor = match (self.domain.lower(), self.domain.upper()) {
            (ExtendedReal::Finite(v), _) => v,
            (_, ExtendedReal::Finite(v)) => v,
            _ => 0.0,
        };
        let h = self.spacing;
        let k_lo = lattice_ceil((lo - anchor) / h);
        let k_hi = lattice_floor((hi - anchor) / h);
        if k_lo > k_hi {
            return Err(GridError::EmptyTruncation { n });
        }
        let grid = Grid::from_lattice(anchor, k_lo, k_hi, h);
        // Float-safe reading of "|x| < n" on the lattice: stay clear of the
        // bound by half a spacing (capped so that huge spacings cannot turn
        // genuinely interior points into boundary ones).
        let eps = 0.5 * h.min(bound);
        let interior = grid.points().iter().map(|x| x.abs() < bound - eps).collect();
        Ok(TruncationGrid {
            grid,
            level: n,
            interior,
        })
    }
}

/// Snap a near-integer ratio before rounding up, so lattice counts are stable
/// against the last-ulp noise of the division.
fn lattice_ceil(t: f64) -> i64 {
    let r = t.round();
    if (t - r).abs() <= 1e-9 * t.abs().max(1.0) {
        r as i64
    } else {
        t.ceil() as i64
    }
}

fn lattice_floor(t: f64) -> i64 {
    let r = t.round();
    if (t - r).abs() <= 1e-9 * t.abs().max(1.0) {
        r as i64
    } else {
        t.floor() as i64
    }
}

/// The grid over one truncation `K_n`, with its level and interior flags.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncationGrid {
    grid: Grid,
    level: u32,
    interior: Vec<bool>,
}

impl TruncationGrid {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Whether grid point `i` lies strictly inside the truncation bound
    /// (`|x| < n`). Points on a finite boundary of the domain itself count as
    /// interior; only the artificial truncation boundary is flagged.
    pub fn is_interior(&self, index: usize) -> bool {
        self.interior[index]
    }

    pub fn interior(&self) -> &[bool] {
        &self.interior
    }

    pub fn interior_indices(&self) -> Vec<usize> {
        self.interior
            .iter()
            .enumerate()
            .filter_map(|(i, &inside)| inside.then_some(i))
            .collect()
    }
}
