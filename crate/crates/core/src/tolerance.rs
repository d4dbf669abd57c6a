//! Per-GT-line tolerance estimation.
//!
//! For a GT line `g` with orientation `o`, the vertices of all other GT
//! lines whose projection onto `o` falls within the projected extent of `g`
//! are eligible. Each eligible vertex is paired with the vertex of `g`
//! closest to it along `o`, and the smallest orthogonal offset over those
//! pairs is the interline distance `d_g`. Lines without eligible vertices
//! fall back to a default distance. The tolerance is a fraction of the
//! smaller of `d_g` and the page mean of the measured distances.
//!
//! All projections are taken in a y-up frame (image y negated).

use crate::geometry::{estimate_orientation, Orientation};
use crate::model::{EvalConfig, Point, PolyChain, ToleranceSet};

/// Measured distances below one lattice step are raised to this value, so
/// touching or crossing GT lines still get a positive tolerance.
pub const MIN_LINE_DISTANCE: f64 = 1.0;

/// Signed projection of `v - w` onto the direction `(c, s)`.
#[inline]
fn along(v: Point, w: Point, (c, s): (f64, f64)) -> f64 {
    let dx = (i64::from(v.x) - i64::from(w.x)) as f64;
    let dy = (i64::from(w.y) - i64::from(v.y)) as f64;
    dx * c + dy * s
}

/// Length of the component of `v - w` orthogonal to `(c, s)`.
#[inline]
fn across(v: Point, w: Point, (c, s): (f64, f64)) -> f64 {
    let dx = (i64::from(v.x) - i64::from(w.x)) as f64;
    let dy = (i64::from(w.y) - i64::from(v.y)) as f64;
    (dx * s - dy * c).abs()
}

/// Vertices of `g` sorted by their projection onto the line direction.
///
/// Sorted keys answer "which vertices of `g` project close to `v`" in
/// logarithmic time. The keys are only an approximation of the pairwise
/// projection `along(v, w)`, so every decision whose outcome could differ
/// within the rounding bound `slack` is settled with the exact pairwise
/// expression.
struct ProjectionIndex<'a> {
    chain: &'a [Point],
    dir: (f64, f64),
    keys: Vec<(f64, usize)>,
    slack: f64,
}

impl<'a> ProjectionIndex<'a> {
    fn new(g: &'a PolyChain, dir: (f64, f64), extent: f64) -> Self {
        let chain = g.vertices();
        let mut keys: Vec<(f64, usize)> = chain
            .iter()
            .enumerate()
            .map(|(i, &w)| (Self::key(w, dir), i))
            .collect();
        keys.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        // A handful of roundings on magnitudes up to `extent`.
        let slack = 64.0 * f64::EPSILON * (extent + 1.0);
        Self {
            chain,
            dir,
            keys,
            slack,
        }
    }

    #[inline]
    fn key(w: Point, (c, s): (f64, f64)) -> f64 {
        f64::from(w.x) * c - f64::from(w.y) * s
    }

    fn exact_range(&self, v: Point) -> (f64, f64) {
        self.chain
            .iter()
            .map(|&w| along(v, w, self.dir))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p), hi.max(p))
            })
    }

    fn is_eligible(&self, v: Point) -> bool {
        let kv = Self::key(v, self.dir);
        let lo = kv - self.keys[self.keys.len() - 1].0;
        let hi = kv - self.keys[0].0;
        if lo > self.slack || hi < -self.slack {
            return false;
        }
        if lo < -self.slack && hi > self.slack {
            return true;
        }
        let (lo, hi) = self.exact_range(v);
        lo <= 0.0 && 0.0 <= hi
    }

    /// Vertex of `g` whose projected offset to `v` is smallest in magnitude;
    /// the earliest chain vertex wins ties.
    fn nearest_along(&self, v: Point) -> Point {
        let kv = Self::key(v, self.dir);
        let pos = self.keys.partition_point(|&(k, _)| k < kv);
        let mut best = f64::INFINITY;
        if pos < self.keys.len() {
            best = best.min((self.keys[pos].0 - kv).abs());
        }
        if pos > 0 {
            best = best.min((kv - self.keys[pos - 1].0).abs());
        }
        let reach = best + 2.0 * self.slack;
        let start = self.keys.partition_point(|&(k, _)| k < kv - reach);
        let end = self.keys.partition_point(|&(k, _)| k <= kv + reach);

        let mut best_idx = usize::MAX;
        let mut best_abs = f64::INFINITY;
        for &(_, i) in &self.keys[start..end] {
            let a = along(v, self.chain[i], self.dir).abs();
            if a < best_abs || (a == best_abs && i < best_idx) {
                best_abs = a;
                best_idx = i;
            }
        }
        self.chain[best_idx]
    }
}

fn extent_of<'a>(points: impl IntoIterator<Item = &'a Point>) -> f64 {
    points
        .into_iter()
        .map(|p| f64::from(p.x.abs()) + f64::from(p.y.abs()))
        .fold(0.0, f64::max)
}

/// Vertices of `others` that project inside the extent of `g` along its
/// orientation (boundary included).
pub fn eligible_vertices(g: &PolyChain, others: &[Point], orientation: Orientation) -> Vec<Point> {
    if others.is_empty() {
        return Vec::new();
    }
    let extent = extent_of(g.vertices().iter().chain(others));
    let index = ProjectionIndex::new(g, orientation.direction(), extent);
    others
        .iter()
        .copied()
        .filter(|&v| index.is_eligible(v))
        .collect()
}

/// Smallest orthogonal offset between an eligible vertex and its nearest
/// (along the orientation) vertex of `g`. `None` if nothing is eligible.
pub fn min_distance(g: &PolyChain, eligible: &[Point], orientation: Orientation) -> Option<f64> {
    if eligible.is_empty() {
        return None;
    }
    let dir = orientation.direction();
    let extent = extent_of(g.vertices().iter().chain(eligible));
    let index = ProjectionIndex::new(g, dir, extent);
    eligible
        .iter()
        .map(|&v| across(v, index.nearest_along(v), dir))
        .reduce(f64::min)
}

/// Measured interline distance of `gt[idx]` to the other GT lines.
pub fn line_distance(gt: &[PolyChain], idx: usize) -> Option<f64> {
    let g = &gt[idx];
    let orientation = estimate_orientation(g);
    let pool: Vec<Point> = gt
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != idx)
        .flat_map(|(_, c)| c.vertices().iter().copied())
        .collect();
    let eligible = eligible_vertices(g, &pool, orientation);
    min_distance(g, &eligible, orientation)
}

/// Tolerances for every GT line of a page. Expects normalized chains.
pub fn compute_tolerances(gt: &[PolyChain], config: &EvalConfig) -> ToleranceSet {
    if let Some(t) = config.fixed_tolerance {
        return ToleranceSet {
            values: vec![t; gt.len()],
            inter_line_mean: None,
            distances: Vec::new(),
        };
    }
    if gt.is_empty() {
        return ToleranceSet {
            values: Vec::new(),
            inter_line_mean: None,
            distances: Vec::new(),
        };
    }

    let distances: Vec<Option<f64>> = (0..gt.len())
        .map(|i| line_distance(gt, i).map(|d| d.max(MIN_LINE_DISTANCE)))
        .collect();

    let measured: Vec<f64> = distances.iter().flatten().copied().collect();
    let mean = if measured.is_empty() {
        config.default_distance
    } else {
        measured.iter().sum::<f64>() / measured.len() as f64
    };

    let values = distances
        .iter()
        .map(|d| {
            let d = d.unwrap_or(config.default_distance);
            config.tolerance_fraction * d.min(mean)
        })
        .collect();

    ToleranceSet {
        values,
        inter_line_mean: Some(mean),
        distances,
    }
}
