//! Evaluation of text baseline detection results.
//!
//! Ground-truth (GT) and hypothesis (HY) baselines are polygonal chains of
//! integer pixel coordinates. Each page is scored on its own:
//!
//! 1. every chain is densified so adjacent vertices are 8-neighbors;
//! 2. a tolerance is estimated per GT line from the distance to its
//!    neighbouring GT lines;
//! 3. the R-value averages how well each GT line is covered by all HY lines;
//! 4. the P-value greedily aligns HY lines to GT lines and averages the
//!    coverage of the aligned HY lines, so split, merged and spurious lines
//!    are penalized;
//! 5. the F-value is the harmonic mean of R and P.
//!
//! Page results are macro-averaged over a corpus by [`aggregate::aggregate`].

pub mod aggregate;
pub mod coverage;
mod error;
pub mod geometry;
pub mod ingest;
pub mod model;
pub mod page_metrics;
pub mod perturb;
pub mod tolerance;

pub use error::{Error, Result};
pub use model::{AlignedPair, EvalConfig, Page, PageEval, Point, PolyChain, ToleranceSet};
