//! Chain densification and orientation estimation.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::model::{Point, PolyChain};

/// Undirected orientation of a chain, measured counter-clockwise from the
/// x axis in a y-up frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orientation {
    alpha: f64,
}

impl Orientation {
    /// Wraps an angle into `[0, pi)`.
    pub fn new(alpha: f64) -> Self {
        let mut a = alpha.rem_euclid(PI);
        if a >= PI {
            a = 0.0;
        }
        Self { alpha: a }
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }

    /// Unit direction vector `(cos alpha, sin alpha)`.
    pub fn direction(self) -> (f64, f64) {
        (self.alpha.cos(), self.alpha.sin())
    }
}

/// Densifies a chain so that consecutive vertices are 8-neighbours.
///
/// Each segment is replaced by its Bresenham rasterization; the shared
/// vertex between two segments is emitted once.
pub fn normalize_chain(chain: &PolyChain) -> PolyChain {
    let src = chain.vertices();
    if src.len() == 1 {
        return chain.clone();
    }
    let mut out = Vec::with_capacity(src.len());
    out.push(src[0]);
    for seg in src.windows(2) {
        rasterize_segment(seg[0], seg[1], &mut out);
    }
    // Vertices stay within the range of the source, so this cannot fail.
    PolyChain::new(out).expect("normalized chain is non-empty and in range")
}

/// Appends the lattice points of the segment `from -> to`, excluding `from`.
fn rasterize_segment(from: Point, to: Point, out: &mut Vec<Point>) {
    let (x1, y1) = (i64::from(to.x), i64::from(to.y));
    let (mut x, mut y) = (i64::from(from.x), i64::from(from.y));
    let dx = (x1 - x).abs();
    let dy = -(y1 - y).abs();
    let sx = if x < x1 { 1 } else { -1 };
    let sy = if y < y1 { 1 } else { -1 };
    let mut err = dx + dy;
    while x != x1 || y != y1 {
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
        out.push(Point::new(x as i32, y as i32));
    }
}

/// Estimates the orientation of a chain by least-squares regression of the
/// negated y coordinate on x.
///
/// A single vertex yields 0; vertices sharing one x coordinate yield pi/2.
pub fn estimate_orientation(chain: &PolyChain) -> Orientation {
    let v = chain.vertices();
    if v.len() == 1 {
        return Orientation::new(0.0);
    }
    // Exact integer moments; (-y) turns the image frame into a y-up frame.
    let n = v.len() as i128;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0i128, 0i128, 0i128, 0i128);
    for p in v {
        let x = i128::from(p.x);
        let y = -i128::from(p.y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let var = n * sxx - sx * sx;
    if var == 0 {
        return Orientation::new(FRAC_PI_2);
    }
    let cov = n * sxy - sx * sy;
    let slope = cov as f64 / var as f64;
    Orientation::new(slope.atan())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(c: &[(i32, i32)]) -> PolyChain {
        PolyChain::from_coords(c).unwrap()
    }

    fn coords(c: &PolyChain) -> Vec<(i32, i32)> {
        c.vertices().iter().map(|p| (p.x, p.y)).collect()
    }

    /// Walks the segment in small parameter steps and, for every lattice
    /// column crossed, records the exact y of the segment there.
    fn walk_columns(a: (i32, i32), b: (i32, i32)) -> Vec<(i32, f64)> {
        let steps = 100_000;
        let mut out: Vec<(i32, f64)> = Vec::new();
        for i in 0..=steps {
            let t = i as f64 / steps as f64;
            let x = a.0 as f64 + t * (b.0 - a.0) as f64;
            let y = a.1 as f64 + t * (b.1 - a.1) as f64;
            let col = x.round() as i32;
            if (x - col as f64).abs() < 1e-9 && out.last().map(|c| c.0) != Some(col) {
                out.push((col, y));
            }
        }
        out
    }

    #[test]
    fn axis_aligned_densification() {
        let n = normalize_chain(&chain(&[(0, 0), (3, 0)]));
        assert_eq!(coords(&n), vec![(0, 0), (1, 0), (2, 0), (3, 0)]);
    }

    #[test]
    fn diagonal_is_already_dense() {
        let n = normalize_chain(&chain(&[(0, 0), (2, 2)]));
        assert_eq!(coords(&n), vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn shallow_segment_matches_rounding_walk() {
        let n = normalize_chain(&chain(&[(0, 0), (4, 2)]));
        assert_eq!(n.len(), 5);
        assert_eq!(n.first(), Point::new(0, 0));
        assert_eq!(n.last(), Point::new(4, 2));
        for w in n.vertices().windows(2) {
            assert_eq!(w[0].chebyshev(w[1]), 1);
        }
        // One vertex per column, each within half a pixel of the segment.
        let walk = walk_columns((0, 0), (4, 2));
        assert_eq!(walk.len(), 5);
        for (a, (col, y)) in n.vertices().iter().zip(&walk) {
            assert_eq!(a.x, *col);
            assert!((a.y as f64 - y).abs() <= 0.5 + 1e-9);
        }
    }

    #[test]
    fn junctions_are_not_duplicated() {
        let n = normalize_chain(&chain(&[(0, 0), (2, 0), (2, 2)]));
        assert_eq!(coords(&n), vec![(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)]);
    }

    #[test]
    fn single_vertex_unchanged() {
        let c = chain(&[(7, 9)]);
        assert_eq!(normalize_chain(&c), c);
    }

    #[test]
    fn orientation_examples() {
        let h = estimate_orientation(&chain(&[(0, 0), (10, 0)]));
        assert_eq!(h.alpha(), 0.0);
        let v = estimate_orientation(&chain(&[(0, 0), (0, 10)]));
        assert_eq!(v.alpha(), FRAC_PI_2);
        // Descending to the right in image space: points (0,0),(10,-10)
        // after negation, slope -1.
        let d = estimate_orientation(&chain(&[(0, 0), (10, 10)]));
        assert!((d.alpha() - 3.0 * PI / 4.0).abs() < 1e-12);
        let u = estimate_orientation(&chain(&[(0, 10), (10, 0)]));
        assert!((u.alpha() - PI / 4.0).abs() < 1e-12);
        assert_eq!(estimate_orientation(&chain(&[(4, 4)])).alpha(), 0.0);
    }

    #[test]
    fn orientation_stays_in_half_open_range() {
        assert_eq!(Orientation::new(PI).alpha(), 0.0);
        assert_eq!(Orientation::new(-1e-300).alpha(), 0.0);
        let (c, s) = Orientation::new(1.0).direction();
        assert!((c * c + s * s - 1.0).abs() < 1e-15);
    }
}
