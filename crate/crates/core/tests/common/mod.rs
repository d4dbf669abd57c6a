//! Independent reference computations and synthetic fixtures shared by the
//! integration tests. Nothing here calls into the code paths it checks.

#![allow(dead_code)]

use bleval::geometry::{estimate_orientation, normalize_chain};
use bleval::{Page, Point, PolyChain};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn chain(coords: &[(i32, i32)]) -> PolyChain {
    PolyChain::from_coords(coords).unwrap()
}

pub fn dense(coords: &[(i32, i32)]) -> PolyChain {
    normalize_chain(&chain(coords))
}

/// Interline distance of `gt[idx]` by exhaustive search over every
/// (other-line vertex, own vertex) pair.
pub fn brute_line_distance(gt: &[PolyChain], idx: usize) -> Option<f64> {
    let g = gt[idx].vertices();
    let (c, s) = estimate_orientation(&gt[idx]).direction();
    let offset = |v: Point, w: Point| {
        let dx = (i64::from(v.x) - i64::from(w.x)) as f64;
        let dy = (i64::from(w.y) - i64::from(v.y)) as f64;
        (dx, dy)
    };
    let mut best: Option<f64> = None;
    for (j, other) in gt.iter().enumerate() {
        if j == idx {
            continue;
        }
        for &v in other.vertices() {
            let proj: Vec<f64> = g
                .iter()
                .map(|&w| {
                    let (dx, dy) = offset(v, w);
                    dx * c + dy * s
                })
                .collect();
            let lo = proj.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = proj.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if !(lo <= 0.0 && 0.0 <= hi) {
                continue;
            }
            let mut m = 0;
            for k in 1..proj.len() {
                if proj[k].abs() < proj[m].abs() {
                    m = k;
                }
            }
            let (dx, dy) = offset(v, g[m]);
            let d = (dx * s - dy * c).abs();
            best = Some(best.map_or(d, |b: f64| b.min(d)));
        }
    }
    best
}

/// The eligibility condition in its literal pairwise-product form.
pub fn brute_is_eligible(g: &PolyChain, v: Point) -> bool {
    let (c, s) = estimate_orientation(g).direction();
    let proj = |w: Point| {
        let dx = (i64::from(v.x) - i64::from(w.x)) as f64;
        let dy = (i64::from(w.y) - i64::from(v.y)) as f64;
        dx * c + dy * s
    };
    g.vertices()
        .iter()
        .any(|&a| g.vertices().iter().any(|&b| proj(a) * proj(b) <= 0.0))
}

/// Coverage by direct transcription of the vertex loop, O(|p| * |q|).
pub fn brute_cov_points(p: &PolyChain, q: &[Point], t: f64) -> f64 {
    let mut c = 0.0;
    for &a in p.vertices() {
        let mut d_min = f64::INFINITY;
        for &b in q {
            let dx = i64::from(a.x) - i64::from(b.x);
            let dy = i64::from(a.y) - i64::from(b.y);
            d_min = d_min.min(((dx * dx + dy * dy) as f64).sqrt());
        }
        if d_min <= t {
            c += 1.0;
        } else if d_min <= 3.0 * t {
            c += (3.0 * t - d_min) / (2.0 * t);
        }
    }
    c / p.len() as f64
}

pub fn brute_cov(p: &PolyChain, q: &PolyChain, t: f64) -> f64 {
    brute_cov_points(p, q.vertices(), t)
}

/// Best total weight over all partial one-to-one row/column assignments.
pub fn exhaustive_best(m: &[Vec<f64>]) -> f64 {
    fn go(m: &[Vec<f64>], row: usize, used: &mut [bool]) -> f64 {
        if row == m.len() {
            return 0.0;
        }
        let mut best = go(m, row + 1, used);
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                best = best.max(m[row][j] + go(m, row + 1, used));
                used[j] = false;
            }
        }
        best
    }
    let cols = m.first().map_or(0, Vec::len);
    go(m, 0, &mut vec![false; cols])
}

/// `count` straight lines of length `len`, stacked `spacing` pixels apart
/// (measured vertically) with the given slope.
pub fn parallel_lines(count: usize, spacing: i32, len: i32, slope: f64, origin: (i32, i32)) -> Vec<PolyChain> {
    (0..count)
        .map(|i| {
            let y0 = origin.1 + i as i32 * spacing;
            let y1 = y0 + (slope * len as f64).round() as i32;
            chain(&[(origin.0, y0), (origin.0 + len, y1)])
        })
        .collect()
}

/// `count` vertical lines side by side.
pub fn vertical_lines(count: usize, spacing: i32, len: i32, origin: (i32, i32)) -> Vec<PolyChain> {
    (0..count)
        .map(|i| {
            let x = origin.0 + i as i32 * spacing;
            chain(&[(x, origin.1), (x, origin.1 + len)])
        })
        .collect()
}

/// A random page layout with 1 to 50 GT lines. Cycles through horizontal,
/// skewed, vertical, wavy multi-vertex and mixed-orientation layouts.
pub fn synthetic_gt(rng: &mut ChaCha8Rng, kind: usize) -> Vec<PolyChain> {
    let n = rng.random_range(1..=50usize);
    let spacing = rng.random_range(30..=120);
    let len = rng.random_range(150..=1200);
    let origin = (rng.random_range(50..300), rng.random_range(50..300));
    match kind % 5 {
        0 => parallel_lines(n, spacing, len, 0.0, origin),
        1 => {
            let slope = rng.random_range(-0.35..0.35);
            parallel_lines(n, spacing, len, slope, (origin.0, origin.1 + 500))
        }
        2 => vertical_lines(n, spacing, len, origin),
        3 => (0..n)
            .map(|i| {
                let y = origin.1 + i as i32 * spacing;
                let pts: Vec<(i32, i32)> = (0..=8)
                    .map(|k| (origin.0 + k * len / 8, y + rng.random_range(-5..=5)))
                    .collect();
                chain(&pts)
            })
            .collect(),
        _ => {
            let body = n.max(2) - 1;
            let mut lines = parallel_lines(body, spacing, len, 0.02, (origin.0 + 200, origin.1));
            // A marginal note written vertically beside the block.
            lines.push(chain(&[(origin.0, origin.1), (origin.0 + 3, origin.1 + 400)]));
            lines
        }
    }
}

/// A random open polyline with 2..=6 vertices inside `[0, size)^2`.
pub fn random_chain(rng: &mut ChaCha8Rng, size: i32) -> PolyChain {
    let n = rng.random_range(2..=6);
    let pts: Vec<Point> = (0..n)
        .map(|_| Point::new(rng.random_range(0..size), rng.random_range(0..size)))
        .collect();
    PolyChain::new(pts).unwrap()
}

pub fn identity_page(id: &str, gt: Vec<PolyChain>) -> Page {
    Page::new(id, gt.clone(), gt)
}
