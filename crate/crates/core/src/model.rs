//! Domain types shared by the evaluation pipeline.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest coordinate magnitude accepted in a chain. Keeps squared
/// distances between any two points exact in `i64`.
pub const MAX_COORD: i32 = 1 << 24;

/// Integer pixel position in image space (y grows downward).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    /// Exact squared Euclidean distance.
    #[inline]
    pub fn dist_sq(self, other: Point) -> i64 {
        let dx = i64::from(self.x) - i64::from(other.x);
        let dy = i64::from(self.y) - i64::from(other.y);
        dx * dx + dy * dy
    }

    #[inline]
    pub fn chebyshev(self, other: Point) -> i64 {
        let dx = (i64::from(self.x) - i64::from(other.x)).abs();
        let dy = (i64::from(self.y) - i64::from(other.y)).abs();
        dx.max(dy)
    }
}

impl From<(i32, i32)> for Point {
    fn from((x, y): (i32, i32)) -> Self {
        Self { x, y }
    }
}

/// An ordered, non-empty vertex list representing one baseline.
///
/// Consecutive duplicate vertices are collapsed on construction; the order
/// of the remaining vertices is the source order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct PolyChain {
    vertices: Vec<Point>,
}

impl PolyChain {
    pub fn new(raw: Vec<Point>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyChain);
        }
        if let Some(p) = raw
            .iter()
            .find(|p| p.x.abs() > MAX_COORD || p.y.abs() > MAX_COORD)
        {
            return Err(Error::CoordinateOutOfRange {
                x: p.x.into(),
                y: p.y.into(),
                limit: MAX_COORD.into(),
            });
        }
        let mut vertices = raw;
        vertices.dedup();
        Ok(Self { vertices })
    }

    /// Builds a chain from `(x, y)` pairs. Convenient for fixtures.
    pub fn from_coords(coords: &[(i32, i32)]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point::from).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Point {
        self.vertices[0]
    }

    pub fn last(&self) -> Point {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn reversed(&self) -> PolyChain {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PolyChain { vertices }
    }

    pub fn translated(&self, dx: i32, dy: i32) -> Result<PolyChain> {
        PolyChain::new(
            self.vertices
                .iter()
                .map(|p| Point::new(p.x + dx, p.y + dy))
                .collect(),
        )
    }

    /// Axis-aligned bounding box as `(min, max)` corners.
    pub fn bounds(&self) -> (Point, Point) {
        let mut lo = self.vertices[0];
        let mut hi = lo;
        for p in &self.vertices[1..] {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }
}

impl TryFrom<Vec<Point>> for PolyChain {
    type Error = Error;

    fn try_from(raw: Vec<Point>) -> Result<Self> {
        PolyChain::new(raw)
    }
}

impl From<PolyChain> for Vec<Point> {
    fn from(chain: PolyChain) -> Self {
        chain.vertices
    }
}

/// Validates and deduplicates a raw point list.
pub fn make_chain(raw_points: Vec<Point>) -> Result<PolyChain> {
    PolyChain::new(raw_points)
}

/// GT and HY baselines of one page image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    pub id: String,
    pub gt_chains: Vec<PolyChain>,
    pub hyp_chains: Vec<PolyChain>,
}

impl Page {
    pub fn new(id: impl Into<String>, gt_chains: Vec<PolyChain>, hyp_chains: Vec<PolyChain>) -> Self {
        Self {
            id: id.into(),
            gt_chains,
            hyp_chains,
        }
    }
}

/// Constants of the evaluation scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Share of the estimated interline distance used as tolerance.
    pub tolerance_fraction: f64,
    /// Distance assumed for a GT line with no measurable neighbour.
    pub default_distance: f64,
    /// When set, every GT line uses this tolerance instead of the
    /// geometry-derived one.
    pub fixed_tolerance: Option<f64>,
    /// Coverage credit falls linearly from 1 at `t` to 0 at
    /// `transition_factor * t`.
    pub transition_factor: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            tolerance_fraction: 0.25,
            default_distance: 250.0,
            fixed_tolerance: None,
            transition_factor: 3.0,
        }
    }
}

impl EvalConfig {
    pub fn with_fixed_tolerance(tolerance: f64) -> Self {
        Self {
            fixed_tolerance: Some(tolerance),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.tolerance_fraction > 0.0 && self.tolerance_fraction <= 1.0) {
            return bad(format!(
                "tolerance_fraction must be in (0, 1], got {}",
                self.tolerance_fraction
            ));
        }
        if !(self.default_distance > 0.0 && self.default_distance.is_finite()) {
            return bad(format!(
                "default_distance must be positive, got {}",
                self.default_distance
            ));
        }
        if let Some(t) = self.fixed_tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return bad(format!("fixed_tolerance must be positive, got {t}"));
            }
        }
        if !(self.transition_factor > 1.0 && self.transition_factor.is_finite()) {
            return bad(format!(
                "transition_factor must be greater than 1, got {}",
                self.transition_factor
            ));
        }
        Ok(())
    }
}

/// Per-GT-line tolerances of one page, index-aligned with the GT chains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToleranceSet {
    pub values: Vec<f64>,
    /// Mean interline distance over the lines that had a measurable
    /// neighbour. `None` when a fixed tolerance was used.
    pub inter_line_mean: Option<f64>,
    /// Measured distance per GT line; `None` where the default distance
    /// was substituted. Empty when a fixed tolerance was used.
    pub distances: Vec<Option<f64>>,
}

impl ToleranceSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlignedPair {
    pub gt_index: usize,
    pub hyp_index: usize,
    pub coverage: f64,
}

/// Result of evaluating one page.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageEval {
    pub id: String,
    pub r_value: f64,
    pub p_value: f64,
    pub f_value: f64,
    pub gt_count: usize,
    pub hyp_count: usize,
    pub alignment: Vec<AlignedPair>,
    pub per_gt_coverage: Vec<f64>,
    pub tolerances: Vec<f64>,
}
