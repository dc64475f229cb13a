//! Fixture builders shared by the benchmarks.

use shadowlab::canonical::frankl_family;
use shadowlab::{Family, Result};

/// Union of `A_0..=A_w` at the given parameters.
pub fn frankl_union(n: usize, k: usize, t: usize, w: usize) -> Result<Family> {
    (0..=w).try_fold(Family::empty(k), |acc, h| acc.union(&frankl_family(n, k, t, h)?))
}
