//! Shadow operators.
//!
//! `shadow_j` walks down one level at a time (delete one element, dedup);
//! [`shadow_by_subsets`] enumerates the target-size subsets of every member
//! directly and serves as the cross-check.

use crate::error::{ensure_contract, Result};
use crate::exact::ExactRatio;
use crate::sets::{Family, KSet};

/// Immediate shadow: all `(k-1)`-subsets of members.
fn immediate(members: &[KSet], k: usize) -> Vec<KSet> {
    let mut out = Vec::with_capacity(members.len() * k);
    for &m in members {
        let mut rest = m.bits();
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            out.push(KSet::from_bits(m.bits() & !low));
            rest &= rest - 1;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `|∂^depth|` of sorted `k`-sets without building a [`Family`].
pub(crate) fn deletion_shadow_size(members: &[KSet], k: usize, depth: usize) -> usize {
    debug_assert!(depth <= k);
    if depth == 0 {
        return members.len();
    }
    let mut level = immediate(members, k);
    for d in 1..depth {
        level = immediate(&level, k - d);
    }
    level.len()
}

/// `depth`-fold deletion shadow for any `0 <= depth <= k`; depth 0 is the
/// family itself and depth `k` is `{∅}` for a nonempty family.
pub fn deletion_shadow(f: &Family, depth: usize) -> Result<Family> {
    ensure_contract!(
        depth <= f.k(),
        "cannot delete {depth} elements from {}-sets",
        f.k()
    );
    let mut level = f.members().to_vec();
    for d in 0..depth {
        level = immediate(&level, f.k() - d);
    }
    Ok(Family::from_vec_unchecked(f.k() - depth, level))
}

/// `∂^j f`: the `(k-j)`-sets contained in some member. Requires `0 < j < k`.
pub fn shadow_j(f: &Family, j: usize) -> Result<Family> {
    ensure_contract!(
        j > 0 && j < f.k(),
        "shadow depth must satisfy 0 < j < k, got j={j} k={}",
        f.k()
    );
    deletion_shadow(f, j)
}

/// `σ_ℓ(f) = ∂^{k-ℓ} f`: the `ℓ`-sets contained in some member. Requires `ℓ < k`.
pub fn sigma_ell(f: &Family, ell: usize) -> Result<Family> {
    ensure_contract!(
        ell < f.k(),
        "ℓ-shadow needs ℓ < k, got ℓ={ell} k={}",
        f.k()
    );
    deletion_shadow(f, f.k() - ell)
}

/// `|∂^j f| / |f|` exactly.
pub fn shadow_ratio(f: &Family, j: usize) -> Result<ExactRatio> {
    ensure_contract!(!f.is_empty(), "shadow ratio of an empty family");
    let s = shadow_j(f, j)?;
    Ok(ExactRatio::of(s.len() as u64, f.len() as u64))
}

/// Direct enumeration of all `(k-j)`-subsets of every member.
pub fn shadow_by_subsets(f: &Family, j: usize) -> Result<Family> {
    ensure_contract!(j <= f.k(), "cannot delete {j} elements from {}-sets", f.k());
    let size = f.k() - j;
    let all: Vec<KSet> = f
        .iter()
        .flat_map(|m| m.subsets_of_size(size))
        .collect();
    Ok(Family::from_vec_unchecked(size, all))
}
