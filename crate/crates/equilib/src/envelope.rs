//! Envelopes of sampled one-variable functions: lower semicontinuous closure,
//! convex and quasiconvex envelopes, slow definitional oracles, affine
//! minorants, and shape checks.
//!
//! The fast envelopes are the work-horses of bifunction regularization; the
//! oracles recompute the same objects straight from their definitions (minima
//! over chords, level-set scans) and exist purely so tests can cross-check
//! the fast paths.

use crate::grid::{ExtendedReal, Grid};
use crate::verdict::{Tolerance, Verdict, Witness};
use serde::Serialize;
use thiserror::Error;

/// The five regularization kinds. On a finite grid the closed and non-closed
/// variants of the same shape produce identical values (finitely many points
/// carry no topology to close over), so both map to one computation; the
/// distinction survives in classification semantics, where the closed chain
/// is reconciled against the lsc family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnvelopeKind {
    Lsc,
    Convex,
    Quasiconvex,
    ConvexClosed,
    QuasiconvexClosed,
}

impl EnvelopeKind {
    pub const ALL: [EnvelopeKind; 5] = [
        EnvelopeKind::Lsc,
        EnvelopeKind::Convex,
        EnvelopeKind::Quasiconvex,
        EnvelopeKind::ConvexClosed,
        EnvelopeKind::QuasiconvexClosed,
    ];

    /// The computation this kind reduces to on sampled data.
    pub fn value_class(self) -> ValueClass {
        match self {
            EnvelopeKind::Lsc => ValueClass::Lsc,
            EnvelopeKind::Convex | EnvelopeKind::ConvexClosed => ValueClass::Convex,
            EnvelopeKind::Quasiconvex | EnvelopeKind::QuasiconvexClosed => ValueClass::Quasiconvex,
        }
    }
}

/// The three distinct envelope computations on sampled data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueClass {
    Lsc,
    Convex,
    Quasiconvex,
}

#[derive(Debug, Error, PartialEq)]
pub enum EnvelopeError {
    #[error("sample count {values} does not match the grid size {points}")]
    LengthMismatch { values: usize, points: usize },
    #[error("sample at index {index} is not finite; envelopes need finite values")]
    NonFinite { index: usize },
    #[error("affine minorants need at least two grid points")]
    TooFewPoints,
}

/// A function known through its values on a grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<ExtendedReal>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<ExtendedReal>) -> Result<Self, EnvelopeError> {
        if values.len() != grid.count() {
            return Err(EnvelopeError::LengthMismatch {
                values: values.len(),
                points: grid.count(),
            });
        }
        Ok(SampledFunction { grid, values })
    }

    pub fn from_finite(grid: Grid, values: Vec<f64>) -> Result<Self, EnvelopeError> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(EnvelopeError::NonFinite { index });
        }
        let values = values.into_iter().map(ExtendedReal::Finite).collect();
        SampledFunction::new(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[ExtendedReal] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The values as plain doubles; errors if any sample is `±∞`.
    pub fn finite_values(&self) -> Result<Vec<f64>, EnvelopeError> {
        self.values
            .iter()
            .enumerate()
            .map(|(index, v)| v.finite().ok_or(EnvelopeError::NonFinite { index }))
            .collect()
    }
}

/// Lower semicontinuous closure of sampled data.
///
/// On a finite set every point is isolated, so the closure of bare samples is
/// the identity. One-sided limits only become visible when an evaluable
/// description of the function is available; that richer path lives with the
/// bifunction sampler, which can probe between grid points.
pub fn lsc_closure(f: &SampledFunction) -> SampledFunction {
    f.clone()
}

/// Greatest convex minorant of the samples, evaluated on the same grid.
///
/// Computed from the lower convex hull of the point set, interpolated along
/// hull chords, clamped by the input, and re-applied until the values are a
/// bit-exact fixed point, so that idempotence holds exactly rather than up to
/// rounding.
pub fn convex_envelope(f: &SampledFunction) -> Result<SampledFunction, EnvelopeError> {
    let xs = f.grid().points();
    let mut current = f.finite_values()?;
    let mut rounds = 0;
    loop {
        let next = convex_once(xs, &current);
        rounds += 1;
        if next == current {
            break;
        }
        current = next;
        assert!(
            rounds < 10_000,
            "convex envelope failed to reach a fixed point"
        );
    }
    SampledFunction::from_finite(f.grid().clone(), current)
}

fn convex_once(xs: &[f64], vs: &[f64]) -> Vec<f64> {
    let n = vs.len();
    if n <= 2 {
        return vs.to_vec();
    }
    // Lower hull, scanning left to right: pop the stack top whenever it lies
    // on or above the chord from its predecessor to the incoming point.
    let mut hull: Vec<usize> = Vec::with_capacity(n);
    for k in 0..n {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (xs[b] - xs[a]) * (vs[k] - vs[a]) - (vs[b] - vs[a]) * (xs[k] - xs[a]);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut out = vs.to_vec();
    for seg in hull.windows(2) {
        let (p, q) = (seg[0], seg[1]);
        out[p] = vs[p];
        out[q] = vs[q];
        let dx = xs[q] - xs[p];
        let dv = vs[q] - vs[p];
        for k in (p + 1)..q {
            let chord = vs[p] + dv * ((xs[k] - xs[p]) / dx);
            // The envelope never exceeds the function; the clamp removes any
            // last-ulp overshoot of the chord arithmetic.
            out[k] = chord.min(vs[k]);
        }
    }
    out
}

/// Greatest quasiconvex minorant of the samples, evaluated on the same grid.
///
/// `out_k = max(min(f_0..f_k), min(f_k..f_end))`: the value cannot drop below
/// what is reachable from the left or from the right without crossing a
/// deeper valley. Built from running minima only, so it is exactly
/// idempotent and preserves the row minimum bit-for-bit.
pub fn quasiconvex_envelope(f: &SampledFunction) -> Result<SampledFunction, EnvelopeError> {
    let vs = f.finite_values()?;
    let n = vs.len();
    let mut prefix = vs.clone();
    for k in 1..n {
        prefix[k] = prefix[k].min(prefix[k - 1]);
    }
    let mut suffix = vs.clone();
    for k in (0..n.saturating_sub(1)).rev() {
        suffix[k] = suffix[k].min(suffix[k + 1]);
    }
    let out = prefix
        .into_iter()
        .zip(suffix)
        .map(|(p, s)| p.max(s))
        .collect();
    SampledFunction::from_finite(f.grid().clone(), out)
}

/// Envelope dispatch by kind. `Lsc` is the identity on bare samples.
pub fn envelope_of(
    f: &SampledFunction,
    kind: EnvelopeKind,
) -> Result<SampledFunction, EnvelopeError> {
    match kind.value_class() {
        ValueClass::Lsc => {
            // Still reject non-finite input for consistency with the others.
            f.finite_values()?;
            Ok(lsc_closure(f))
        }
        ValueClass::Convex => convex_envelope(f),
        ValueClass::Quasiconvex => quasiconvex_envelope(f),
    }
}

/// Slow, definition-level recomputation of an envelope.
///
/// Convex: at each grid point take the minimum over all chords spanning it
/// (O(n³) overall). Quasiconvex: at each grid point scan the sorted sample
/// values for the smallest level whose sublevel set brackets the point.
/// These paths share no code with the fast envelopes.
pub fn envelope_oracle(
    f: &SampledFunction,
    kind: EnvelopeKind,
) -> Result<SampledFunction, EnvelopeError> {
    let xs = f.grid().points();
    let vs = f.finite_values()?;
    let n = vs.len();
    let out = match kind.value_class() {
        ValueClass::Lsc => vs,
        ValueClass::Convex => {
            let mut out = vs.clone();
            for k in 0..n {
                let mut best = vs[k];
                for i in 0..=k {
                    for j in k..n {
                        if i == j {
                            continue;
                        }
                        let chord = vs[i] + (vs[j] - vs[i]) * ((xs[k] - xs[i]) / (xs[j] - xs[i]));
                        best = best.min(chord);
                    }
                }
                out[k] = best;
            }
            out
        }
        ValueClass::Quasiconvex => {
            let mut levels = vs.clone();
            levels.sort_by(f64::total_cmp);
            let mut out = vs.clone();
            for k in 0..n {
                for &level in &levels {
                    let mut lo: Option<usize> = None;
                    let mut hi: Option<usize> = None;
                    for (i, &v) in vs.iter().enumerate() {
                        if v <= level {
                            lo.get_or_insert(i);
                            hi = Some(i);
                        }
                    }
                    if let (Some(lo), Some(hi)) = (lo, hi) {
                        if lo <= k && k <= hi {
                            out[k] = level;
                            break;
                        }
                    }
                }
            }
            out
        }
    };
    SampledFunction::from_finite(f.grid().clone(), out)
}

/// An affine function `x ↦ slope·x + intercept` sitting below a sampled
/// function, touching its convex envelope at one grid point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AffineMinorant {
    pub slope: f64,
    pub intercept: f64,
}

impl AffineMinorant {
    pub fn eval(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// The least-norm supporting line of the convex envelope at grid point `at`.
///
/// The subdifferential of the envelope at an interior point is the slope
/// interval of its two adjacent hull chords; at the ends it is a half-line.
/// The least-norm element is the slope closest to zero inside that set.
pub fn affine_minorant(f: &SampledFunction, at: usize) -> Result<AffineMinorant, EnvelopeError> {
    if f.len() < 2 {
        return Err(EnvelopeError::TooFewPoints);
    }
    let env = convex_envelope(f)?;
    let xs = env.grid().points();
    let es = env.finite_values()?;
    let n = es.len();
    let left = (at > 0).then(|| (es[at] - es[at - 1]) / (xs[at] - xs[at - 1]));
    let right = (at + 1 < n).then(|| (es[at + 1] - es[at]) / (xs[at + 1] - xs[at]));
    let slope = match (left, right) {
        (None, Some(r)) => r.min(0.0),
        (Some(l), None) => l.max(0.0),
        (Some(l), Some(r)) => {
            if l <= 0.0 && 0.0 <= r {
                0.0
            } else if r < 0.0 {
                r
            } else {
                l
            }
        }
        (None, None) => unreachable!("guarded by the length check"),
    };
    Ok(AffineMinorant {
        slope,
        intercept: es[at] - slope * xs[at],
    })
}

/// Shapes a sampled function can be checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKind {
    Convex,
    Quasiconvex,
    SemistrictlyQuasiconvex,
}

/// Checks discrete convexity / quasiconvexity / semistrict quasiconvexity.
///
/// * convex: all second differences `f_{k−1} − 2f_k + f_{k+1} ≥ −slack`;
/// * quasiconvex: no point sits above its best flank on both sides, i.e.
///   `f_k ≤ max(min left of k, min right of k) + slack` for every `k`;
/// * semistrict: quasiconvex, and whenever `f_i < f_j − slack`, every sample
///   strictly between `i` and `j` stays below `f_j − strict`.
///
/// A quasiconvexity witness names, for the first offending `k`, the nearest
/// flanking indices whose values undercut `f_k` by more than the slack.
pub fn shape_check(f: &SampledFunction, shape: ShapeKind, tol: Tolerance) -> Result<Verdict, EnvelopeError> {
    let vs = f.finite_values()?;
    let xs = f.grid().points();
    let verdict = match shape {
        ShapeKind::Convex => convex_shape(xs, &vs, tol),
        ShapeKind::Quasiconvex => quasiconvex_shape(xs, &vs, tol),
        ShapeKind::SemistrictlyQuasiconvex => match quasiconvex_shape(xs, &vs, tol) {
            v if !v.passed => v,
            _ => semistrict_shape(xs, &vs, tol),
        },
    };
    Ok(verdict)
}

fn convex_shape(xs: &[f64], vs: &[f64], tol: Tolerance) -> Verdict {
    for k in 1..vs.len().saturating_sub(1) {
        let second = vs[k - 1] - 2.0 * vs[k] + vs[k + 1];
        if second < -tol.slack {
            let witness = Witness::new()
                .with_point("x", k - 1, xs[k - 1])
                .with_point("x_t", k, xs[k])
                .with_point("y", k + 1, xs[k + 1])
                .with_value("second_difference", second);
            return Verdict::fail(tol, witness);
        }
    }
    Verdict::pass(tol)
}

fn quasiconvex_shape(xs: &[f64], vs: &[f64], tol: Tolerance) -> Verdict {
    let n = vs.len();
    let mut prefix_min = vs.to_vec();
    for k in 1..n {
        prefix_min[k] = prefix_min[k].min(prefix_min[k - 1]);
    }
    let mut suffix_min = vs.to_vec();
    for k in (0..n.saturating_sub(1)).rev() {
        suffix_min[k] = suffix_min[k].min(suffix_min[k + 1]);
    }
    for k in 0..n {
        let bar = vs[k] - tol.slack;
        if prefix_min[k] < bar && suffix_min[k] < bar {
            let i = (0..k).rev().find(|&i| vs[i] < bar).expect("prefix minimum undercuts");
            let j = ((k + 1)..n).find(|&j| vs[j] < bar).expect("suffix minimum undercuts");
            let witness = Witness::new()
                .with_point("x", i, xs[i])
                .with_point("x_t", k, xs[k])
                .with_point("y", j, xs[j])
                .with_value("f_x", vs[i])
                .with_value("f_x_t", vs[k])
                .with_value("f_y", vs[j]);
            return Verdict::fail(tol, witness);
        }
    }
    Verdict::pass(tol)
}

fn semistrict_shape(xs: &[f64], vs: &[f64], tol: Tolerance) -> Verdict {
    let n = vs.len();
    for j in 0..n {
        // Pairs (i, j) with i left of j: walking i leftwards grows the open
        // window (i, j) one sample at a time, so the running maximum makes
        // each pair O(1).
        let mut run_max = f64::NEG_INFINITY;
        let mut run_arg = 0usize;
        for i in (0..j.saturating_sub(1)).rev() {
            let entering = i + 1;
            if vs[entering] > run_max {
                run_max = vs[entering];
                run_arg = entering;
            }
            if vs[i] < vs[j] - tol.slack && run_max >= vs[j] - tol.strict {
                return semistrict_failure(xs, vs, tol, i, j, run_arg);
            }
        }
        // Pairs (i, j) with i right of j.
        let mut run_max = f64::NEG_INFINITY;
        let mut run_arg = 0usize;
        for i in (j + 2)..n {
            let entering = i - 1;
            if vs[entering] > run_max {
                run_max = vs[entering];
                run_arg = entering;
            }
            if vs[i] < vs[j] - tol.slack && run_max >= vs[j] - tol.strict {
                return semistrict_failure(xs, vs, tol, i, j, run_arg);
            }
        }
    }
    Verdict::pass(tol)
}

fn semistrict_failure(
    xs: &[f64],
    vs: &[f64],
    tol: Tolerance,
    i: usize,
    j: usize,
    k: usize,
) -> Verdict {
    let witness = Witness::new()
        .with_point("x", i, xs[i])
        .with_point("y", j, xs[j])
        .with_point("x_t", k, xs[k])
        .with_value("f_x", vs[i])
        .with_value("f_y", vs[j])
        .with_value("f_x_t", vs[k]);
    Verdict::fail(tol, witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sampled(lower: f64, upper: f64, vs: &[f64]) -> SampledFunction {
        let grid = Grid::uniform(lower, upper, vs.len()).unwrap();
        SampledFunction::from_finite(grid, vs.to_vec()).unwrap()
    }

    fn values(f: &SampledFunction) -> Vec<f64> {
        f.finite_values().unwrap()
    }

    #[test]
    fn convex_envelope_flattens_a_tent() {
        let f = sampled(0.0, 1.0, &[0.0, 0.25, 0.5, 0.75, 0.0]);
        let e = convex_envelope(&f).unwrap();
        assert_eq!(values(&e), vec![0.0; 5]);
    }

    #[test]
    fn convex_envelope_keeps_affine_data() {
        let f = sampled(0.0, 1.0, &[0.0, 1.0, 2.0, 3.0, 4.0]);
        let e = convex_envelope(&f).unwrap();
        assert_eq!(values(&e), values(&f));
    }

    #[test]
    fn convex_envelope_of_a_w_profile() {
        let f = sampled(0.0, 1.0, &[0.0, 1.0, -1.0, 1.0, 0.0]);
        let e = convex_envelope(&f).unwrap();
        assert_eq!(values(&e), vec![0.0, -0.5, -1.0, -0.5, 0.0]);
    }

    #[test]
    fn convex_envelope_is_exactly_idempotent() {
        let f = sampled(0.0, 1.0, &[0.3, -0.9, 0.1, 0.7, -0.2, 0.05, 0.4]);
        let e = convex_envelope(&f).unwrap();
        let ee = convex_envelope(&e).unwrap();
        assert_eq!(values(&e), values(&ee));
    }

    #[test]
    fn quasiconvex_envelope_follows_running_minima() {
        // A monotone run with one spike filled back in from the right.
        let f = sampled(0.0, 2.0, &[-2.0, -1.5, 0.0, -0.5, 0.0]);
        let e = quasiconvex_envelope(&f).unwrap();
        assert_eq!(values(&e), vec![-2.0, -1.5, -0.5, -0.5, 0.0]);
        // The spike value drops to the deepest sample reachable to its right;
        // the left flank is already monotone and survives unchanged.
    }

    #[test]
    fn quasiconvex_envelope_keeps_monotone_data() {
        let f = sampled(0.0, 1.0, &[-3.0, -1.0, -0.5, -0.5, 2.0]);
        let e = quasiconvex_envelope(&f).unwrap();
        assert_eq!(values(&e), values(&f));
    }

    #[test]
    fn quasiconvex_envelope_of_a_w_profile() {
        let f = sampled(0.0, 1.0, &[2.0, 0.0, 1.0, 0.0, 2.0]);
        let e = quasiconvex_envelope(&f).unwrap();
        assert_eq!(values(&e), vec![2.0, 0.0, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn quasiconvex_envelope_is_exactly_idempotent() {
        let f = sampled(0.0, 1.0, &[0.3, -0.9, 0.1, 0.7, -0.2, 0.05, 0.4]);
        let e = quasiconvex_envelope(&f).unwrap();
        let ee = quasiconvex_envelope(&e).unwrap();
        assert_eq!(values(&e), values(&ee));
    }

    #[test]
    fn envelopes_match_their_oracles_on_a_fixed_instance() {
        let f = sampled(0.0, 1.0, &[0.3, -0.9, 0.1, 0.7, -0.2, 0.05, 0.4]);
        for kind in [EnvelopeKind::Convex, EnvelopeKind::Quasiconvex] {
            let fast = envelope_of(&f, kind).unwrap();
            let slow = envelope_oracle(&f, kind).unwrap();
            for (a, b) in values(&fast).iter().zip(values(&slow)) {
                assert!((a - b).abs() <= 1e-12, "kind {kind:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn lsc_closure_of_samples_is_the_identity() {
        let f = sampled(0.0, 1.0, &[1.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(values(&lsc_closure(&f)), values(&f));
    }

    #[test]
    fn non_finite_samples_are_rejected() {
        let grid = Grid::uniform(0.0, 1.0, 3).unwrap();
        let f = SampledFunction::new(
            grid,
            vec![
                ExtendedReal::Finite(0.0),
                ExtendedReal::PosInf,
                ExtendedReal::Finite(1.0),
            ],
        )
        .unwrap();
        assert_eq!(
            convex_envelope(&f),
            Err(EnvelopeError::NonFinite { index: 1 })
        );
        assert_eq!(
            quasiconvex_envelope(&f),
            Err(EnvelopeError::NonFinite { index: 1 })
        );
    }

    #[test]
    fn affine_minorant_of_a_parabola_at_its_vertex() {
        let f = sampled(-1.0, 1.0, &[1.0, 0.25, 0.0, 0.25, 1.0]);
        let m = affine_minorant(&f, 2).unwrap();
        assert_eq!(m.slope, 0.0);
        assert_eq!(m.intercept, 0.0);
    }

    #[test]
    fn affine_minorant_inside_a_w_profile() {
        // Unit spacing, so the envelope chords have slopes ∓0.5 around the
        // middle: the least-norm subgradient is 0 and the line is y = −1.
        let f = sampled(-2.0, 2.0, &[0.0, 1.0, -1.0, 1.0, 0.0]);
        let m = affine_minorant(&f, 2).unwrap();
        assert_eq!(m.slope, 0.0);
        assert_eq!(m.intercept, -1.0);
        let vs = values(&f);
        for (x, v) in f.grid().points().iter().zip(&vs) {
            assert!(m.eval(*x) <= v + 1e-12);
        }
    }

    #[test]
    fn affine_minorant_of_flat_data() {
        let f = sampled(0.0, 1.0, &[0.0, 0.0, 0.0]);
        let m = affine_minorant(&f, 1).unwrap();
        assert_eq!((m.slope, m.intercept), (0.0, 0.0));
    }

    #[test]
    fn affine_minorant_needs_two_points() {
        let f = sampled(0.0, 0.0, &[3.0]);
        assert_eq!(affine_minorant(&f, 0), Err(EnvelopeError::TooFewPoints));
    }

    #[test]
    fn shape_check_semistrict_passes_on_strictly_monotone_data() {
        let tol = Tolerance::default();
        let f = sampled(0.0, 2.0, &[-2.0, -1.5, -1.0, -0.5, 0.0]);
        let v = shape_check(&f, ShapeKind::SemistrictlyQuasiconvex, tol).unwrap();
        assert!(v.is_pass());
    }

    #[test]
    fn shape_check_quasiconvex_rejects_a_bump() {
        let tol = Tolerance::default();
        let f = sampled(0.0, 1.0, &[0.0, 1.0, -1.0, 1.0, 0.0]);
        let v = shape_check(&f, ShapeKind::Quasiconvex, tol).unwrap();
        let w = v.witness().expect("must carry a witness");
        assert_eq!(w.point("x_t").unwrap().index, 1);
    }

    #[test]
    fn shape_check_quasiconvex_reports_nearest_flanks() {
        let tol = Tolerance::default();
        // Grid 0, 0.5, 1, 1.5, 2: the spike at 1 is flanked by lower values
        // at 0.5 and 1.5, and those nearest flanks are the reported pair.
        let f = sampled(0.0, 2.0, &[-2.0, -1.5, 0.0, -0.5, 0.0]);
        let v = shape_check(&f, ShapeKind::Quasiconvex, tol).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(
            (
                w.point("x").unwrap().index,
                w.point("x_t").unwrap().index,
                w.point("y").unwrap().index
            ),
            (1, 2, 3)
        );
        assert_eq!(w.point("x").unwrap().point, 0.5);
        assert_eq!(w.point("x_t").unwrap().point, 1.0);
        assert_eq!(w.point("y").unwrap().point, 1.5);
    }

    #[test]
    fn shape_check_semistrict_rejects_a_plateau_above_the_minimum() {
        let tol = Tolerance::default();
        // Quasiconvex, but the level-1 plateau on the ascent is reachable
        // from the minimum, so strict descent fails between 0 and the far 1.
        let f = sampled(0.0, 1.0, &[0.0, 1.0, 1.0, 2.0]);
        let qc = shape_check(&f, ShapeKind::Quasiconvex, tol).unwrap();
        assert!(qc.is_pass());
        let v = shape_check(&f, ShapeKind::SemistrictlyQuasiconvex, tol).unwrap();
        assert!(!v.is_pass());
    }

    #[test]
    fn shape_check_convex_flags_concavity() {
        let tol = Tolerance::default();
        let f = sampled(0.0, 1.0, &[0.0, 1.0, 1.5]);
        let v = shape_check(&f, ShapeKind::Convex, tol).unwrap();
        assert!(!v.is_pass());
        let w = v.witness().unwrap();
        assert_eq!(w.point("x_t").unwrap().index, 1);
        let g = sampled(0.0, 1.0, &[0.0, 1.0, 2.5]);
        assert!(shape_check(&g, ShapeKind::Convex, tol).unwrap().is_pass());
    }

    #[test]
    fn envelope_order_holds_on_a_fixed_instance() {
        let f = sampled(0.0, 1.0, &[0.3, -0.9, 0.1, 0.7, -0.2, 0.05, 0.4]);
        let c = values(&convex_envelope(&f).unwrap());
        let q = values(&quasiconvex_envelope(&f).unwrap());
        let v = values(&f);
        for k in 0..v.len() {
            assert!(c[k] <= q[k] + 1e-12);
            assert!(q[k] <= v[k]);
        }
    }
}
