//! Tolerance-smoothed coverage of one chain by another chain or a set of
//! chains.
//!
//! Each vertex of the covered chain earns credit from its distance `d` to
//! the nearest vertex of the covering chain(s): 1 when `d <= t`, falling
//! linearly to 0 at `k * t` (`k` is the transition factor, 3 by default).
//! The coverage is the mean credit over all vertices.

use std::collections::HashMap;

use crate::model::{Point, PolyChain};

pub const DEFAULT_TRANSITION_FACTOR: f64 = 3.0;

/// Below this many vertex pairs a linear scan beats building a grid.
const BRUTE_FORCE_PAIRS: usize = 4096;

/// Credit of one vertex whose nearest covering vertex is at squared
/// distance `dist_sq`.
#[inline]
pub fn vertex_credit(dist_sq: Option<i64>, t: f64, factor: f64) -> f64 {
    let Some(dist_sq) = dist_sq else {
        return 0.0;
    };
    let d = (dist_sq as f64).sqrt();
    if d <= t {
        1.0
    } else if d <= factor * t {
        (factor * t - d) / ((factor - 1.0) * t)
    } else {
        0.0
    }
}

/// Uniform grid over lattice points for fixed-radius nearest queries.
#[derive(Debug, Clone)]
pub struct VertexGrid {
    cell: i64,
    cells: HashMap<(i64, i64), Vec<Point>>,
}

impl VertexGrid {
    pub fn new<'a>(points: impl IntoIterator<Item = &'a Point>, cell: i64) -> Self {
        let cell = cell.max(1);
        let mut cells: HashMap<(i64, i64), Vec<Point>> = HashMap::new();
        for &p in points {
            cells.entry(Self::cell_of(p, cell)).or_default().push(p);
        }
        Self { cell, cells }
    }

    /// Grid sized for queries of the given radius.
    pub fn for_radius<'a>(points: impl IntoIterator<Item = &'a Point>, radius: f64) -> Self {
        Self::new(points, radius.ceil().min(i64::from(i32::MAX) as f64) as i64)
    }

    #[inline]
    fn cell_of(p: Point, cell: i64) -> (i64, i64) {
        (
            i64::from(p.x).div_euclid(cell),
            i64::from(p.y).div_euclid(cell),
        )
    }

    /// Squared distance from `p` to the nearest stored point, exact whenever
    /// that distance is at most `radius`. Points farther away may be missed;
    /// `None` means nothing was found nearby.
    pub fn nearest_sq_within(&self, p: Point, radius: f64) -> Option<i64> {
        let r = radius.floor().min(i64::from(i32::MAX) as f64).max(0.0) as i64;
        let (x, y) = (i64::from(p.x), i64::from(p.y));
        let (cx0, cx1) = ((x - r).div_euclid(self.cell), (x + r).div_euclid(self.cell));
        let (cy0, cy1) = ((y - r).div_euclid(self.cell), (y + r).div_euclid(self.cell));
        let mut best: Option<i64> = None;
        for cx in cx0..=cx1 {
            for cy in cy0..=cy1 {
                if let Some(bucket) = self.cells.get(&(cx, cy)) {
                    for &q in bucket {
                        let d = p.dist_sq(q);
                        if best.is_none_or(|b| d < b) {
                            best = Some(d);
                        }
                    }
                }
            }
        }
        best
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Coverage of `p` using a prebuilt grid of covering vertices.
pub fn cov_indexed(p: &PolyChain, grid: &VertexGrid, t: f64, factor: f64) -> f64 {
    let radius = factor * t;
    let total: f64 = p
        .vertices()
        .iter()
        .map(|&v| vertex_credit(grid.nearest_sq_within(v, radius), t, factor))
        .sum();
    total / p.len() as f64
}

fn cov_scan<'a, F>(p: &PolyChain, covering: F, t: f64, factor: f64) -> f64
where
    F: Fn() -> Box<dyn Iterator<Item = &'a Point> + 'a>,
{
    let total: f64 = p
        .vertices()
        .iter()
        .map(|&v| {
            let nearest = covering().map(|&q| v.dist_sq(q)).min();
            vertex_credit(nearest, t, factor)
        })
        .sum();
    total / p.len() as f64
}

/// Coverage of `p` by `q` with tolerance `t` and a custom transition
/// factor.
pub fn cov_with_factor(p: &PolyChain, q: &PolyChain, t: f64, factor: f64) -> f64 {
    if p.len() * q.len() <= BRUTE_FORCE_PAIRS {
        cov_scan(p, || Box::new(q.vertices().iter()), t, factor)
    } else {
        let grid = VertexGrid::for_radius(q.vertices(), factor * t);
        cov_indexed(p, &grid, t, factor)
    }
}

/// Fraction of `p` lying within tolerance `t` of `q`. Not symmetric.
pub fn cov(p: &PolyChain, q: &PolyChain, t: f64) -> f64 {
    cov_with_factor(p, q, t, DEFAULT_TRANSITION_FACTOR)
}

/// Coverage of `p` by the union of the vertices of `set`, custom
/// transition factor.
pub fn cov_s_with_factor(p: &PolyChain, set: &[PolyChain], t: f64, factor: f64) -> f64 {
    let pool: usize = set.iter().map(PolyChain::len).sum();
    if p.len() * pool <= BRUTE_FORCE_PAIRS {
        cov_scan(
            p,
            || Box::new(set.iter().flat_map(|c| c.vertices().iter())),
            t,
            factor,
        )
    } else {
        let grid = VertexGrid::for_radius(set.iter().flat_map(|c| c.vertices()), factor * t);
        cov_indexed(p, &grid, t, factor)
    }
}

/// Coverage of `p` by a set of chains. An empty set covers nothing.
pub fn cov_s(p: &PolyChain, set: &[PolyChain], t: f64) -> f64 {
    cov_s_with_factor(p, set, t, DEFAULT_TRANSITION_FACTOR)
}
