//! Synthetic degradations that turn GT baselines into controlled
//! hypotheses: splitting, vertical jitter and merging.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::normalize_chain;
use crate::model::{Point, PolyChain};
use crate::{Error, Result};

/// Splits the normalized chain at the vertex nearest the given fraction of
/// its arc length. The split vertex starts the second part.
pub fn split_chain(chain: &PolyChain, fraction: f64) -> Result<(PolyChain, PolyChain)> {
    if chain.len() < 2 {
        return Err(Error::SplitSingleVertex);
    }
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::SplitFraction(fraction));
    }
    let dense = normalize_chain(chain);
    let v = dense.vertices();

    let mut arc = Vec::with_capacity(v.len());
    arc.push(0.0);
    for w in v.windows(2) {
        let step = (w[0].dist_sq(w[1]) as f64).sqrt();
        arc.push(arc[arc.len() - 1] + step);
    }
    let target = fraction * arc[arc.len() - 1];

    // Both parts keep at least one vertex.
    let at = (1..v.len())
        .min_by(|&a, &b| {
            (arc[a] - target)
                .abs()
                .total_cmp(&(arc[b] - target).abs())
                .then(a.cmp(&b))
        })
        .unwrap_or(1);

    let head = PolyChain::new(v[..at].to_vec())?;
    let tail = PolyChain::new(v[at..].to_vec())?;
    Ok((head, tail))
}

/// Moves every vertex of the normalized chain up or down by a uniform
/// integer offset in `[-amplitude, amplitude]`. The generator is ChaCha8
/// seeded with `seed`.
pub fn jitter_chain(chain: &PolyChain, amplitude: u32, seed: u64) -> PolyChain {
    let dense = normalize_chain(chain);
    if amplitude == 0 {
        return dense;
    }
    let a = amplitude as i32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let moved = dense
        .vertices()
        .iter()
        .map(|p| Point::new(p.x, p.y + rng.random_range(-a..=a)))
        .collect();
    PolyChain::new(moved).expect("jittered chain is non-empty")
}

/// Concatenates `a` and `b`; a vertex shared at the junction appears once.
pub fn merge_chains(a: &PolyChain, b: &PolyChain) -> PolyChain {
    let mut v = a.vertices().to_vec();
    v.extend_from_slice(b.vertices());
    PolyChain::new(v).expect("merged chain is non-empty")
}
