//! R, P and F for a single page.

use crate::coverage::{cov_indexed, VertexGrid};
use crate::geometry::normalize_chain;
use crate::model::{AlignedPair, EvalConfig, Page, PageEval, PolyChain, ToleranceSet};
use crate::tolerance::compute_tolerances;

/// Dense row-major matrix; rows are GT lines, columns HY lines.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl CoverageMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.cols + col] = value;
    }
}

/// Coverage of every GT line by the whole HY set.
pub fn gt_coverages(
    gt: &[PolyChain],
    hyp: &[PolyChain],
    tol: &ToleranceSet,
    transition_factor: f64,
) -> Vec<f64> {
    debug_assert_eq!(gt.len(), tol.len());
    if gt.is_empty() {
        return Vec::new();
    }
    if hyp.is_empty() {
        return vec![0.0; gt.len()];
    }
    let max_t = tol.values.iter().copied().fold(0.0, f64::max);
    let grid = VertexGrid::for_radius(
        hyp.iter().flat_map(|h| h.vertices()),
        transition_factor * max_t,
    );
    gt.iter()
        .zip(&tol.values)
        .map(|(g, &t)| cov_indexed(g, &grid, t, transition_factor))
        .collect()
}

/// Mean coverage of the GT lines by all HY lines. A page without GT lines
/// scores 1.
pub fn r_value(gt: &[PolyChain], hyp: &[PolyChain], tol: &ToleranceSet, transition_factor: f64) -> f64 {
    mean_or_one(&gt_coverages(gt, hyp, tol, transition_factor))
}

fn mean_or_one(values: &[f64]) -> f64 {
    if values.is_empty() {
        1.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

fn boxes_within(a: &PolyChain, b: &PolyChain, margin: f64) -> bool {
    let (alo, ahi) = a.bounds();
    let (blo, bhi) = b.bounds();
    let gap = |lo: i32, hi: i32| f64::from(lo) - f64::from(hi);
    gap(alo.x, bhi.x) <= margin
        && gap(blo.x, ahi.x) <= margin
        && gap(alo.y, bhi.y) <= margin
        && gap(blo.y, ahi.y) <= margin
}

/// Entry `(i, j)` is the coverage of HY line `j` by GT line `i` under the
/// tolerance of GT line `i`.
pub fn coverage_matrix(
    gt: &[PolyChain],
    hyp: &[PolyChain],
    tol: &ToleranceSet,
    transition_factor: f64,
) -> CoverageMatrix {
    let mut m = CoverageMatrix::zeros(gt.len(), hyp.len());
    for (i, (g, &t)) in gt.iter().zip(&tol.values).enumerate() {
        let radius = transition_factor * t;
        let mut grid = None;
        for (j, h) in hyp.iter().enumerate() {
            // Disjoint boxes mean every vertex of h earns zero credit.
            if !boxes_within(g, h, radius) {
                continue;
            }
            let grid = grid.get_or_insert_with(|| VertexGrid::for_radius(g.vertices(), radius));
            m.set(i, j, cov_indexed(h, grid, t, transition_factor));
        }
    }
    m
}

/// Greedy one-to-one alignment: repeatedly take the largest remaining
/// positive entry and retire its row and column.
///
/// Ties go to the lowest GT index, then the lowest HY index.
pub fn greedy_align(matrix: &CoverageMatrix) -> Vec<AlignedPair> {
    let mut row_open = vec![true; matrix.rows()];
    let mut col_open = vec![true; matrix.cols()];
    let mut pairs = Vec::new();
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for (i, _) in row_open.iter().enumerate().filter(|(_, &open)| open) {
            for (j, _) in col_open.iter().enumerate().filter(|(_, &open)| open) {
                let v = matrix.get(i, j);
                if best.is_none_or(|(_, _, b)| v > b) {
                    best = Some((i, j, v));
                }
            }
        }
        match best {
            Some((i, j, v)) if v > 0.0 => {
                row_open[i] = false;
                col_open[j] = false;
                pairs.push(AlignedPair {
                    gt_index: i,
                    hyp_index: j,
                    coverage: v,
                });
            }
            _ => return pairs,
        }
    }
}

/// Summed aligned coverage per HY line. A page without HY lines scores 1.
pub fn p_value(alignment: &[AlignedPair], hyp_count: usize) -> f64 {
    if hyp_count == 0 {
        return 1.0;
    }
    alignment.iter().map(|a| a.coverage).sum::<f64>() / hyp_count as f64
}

/// Harmonic mean of R and P; zero when both are zero.
pub fn f_value(r: f64, p: f64) -> f64 {
    if r + p == 0.0 {
        0.0
    } else {
        2.0 * r * p / (r + p)
    }
}

/// Full single-page pipeline. `config` must be valid.
pub fn evaluate_page(page: &Page, config: &EvalConfig) -> PageEval {
    debug_assert!(config.validate().is_ok());
    let gt: Vec<PolyChain> = page.gt_chains.iter().map(normalize_chain).collect();
    let hyp: Vec<PolyChain> = page.hyp_chains.iter().map(normalize_chain).collect();
    let factor = config.transition_factor;

    let tol = compute_tolerances(&gt, config);
    let per_gt_coverage = gt_coverages(&gt, &hyp, &tol, factor);
    let r = mean_or_one(&per_gt_coverage);

    let matrix = coverage_matrix(&gt, &hyp, &tol, factor);
    let alignment = greedy_align(&matrix);
    let p = p_value(&alignment, hyp.len());

    PageEval {
        id: page.id.clone(),
        r_value: r,
        p_value: p,
        f_value: f_value(r, p),
        gt_count: gt.len(),
        hyp_count: hyp.len(),
        alignment,
        per_gt_coverage,
        tolerances: tol.values,
    }
}
