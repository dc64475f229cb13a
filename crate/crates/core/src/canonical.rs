//! Constructors for the named families: the Frankl families `A_h`, full stars,
//! the Hilton–Milner–Frankl family, the two-part counterexample family and the
//! witness sets used by the width arguments.

use crate::error::{ensure_contract, Error, Result};
use crate::sets::{check_ground, ksubsets_iter, Family, KSet};
use crate::structure::intersection_violation;

/// `{ A : |A ∩ [m]| >= p }` for sets of size `k` in `[n]`, built as
/// prefix part times suffix part.
fn prefix_threshold(n: usize, k: usize, m: usize, p: usize) -> Family {
    let m = m.min(n);
    let mut out = Vec::new();
    for inside in p..=k.min(m) {
        if k - inside > n - m {
            continue;
        }
        let suffixes: Vec<KSet> = ksubsets_iter(n - m, k - inside)
            .map(|s| KSet::from_bits(s.bits() << m))
            .collect();
        for pre in ksubsets_iter(m, inside) {
            out.extend(suffixes.iter().map(|&s| pre.union(s)));
        }
    }
    Family::from_vec_unchecked(k, out)
}

/// `A_h(n,k,t) = { A : |A ∩ [t + 2h]| >= t + h }`.
pub fn frankl_family(n: usize, k: usize, t: usize, h: usize) -> Result<Family> {
    check_ground(n)?;
    ensure_contract!(k <= n, "k = {k} exceeds n = {n}");
    ensure_contract!(t <= k && h <= k - t, "need 0 <= h <= k - t, got h={h} k={k} t={t}");
    Ok(prefix_threshold(n, k, t + 2 * h, t + h))
}

/// All `k`-sets containing `[t]`.
pub fn full_star(n: usize, k: usize, t: usize) -> Result<Family> {
    check_ground(n)?;
    ensure_contract!(t <= k && k <= n, "need t <= k <= n, got n={n} k={k} t={t}");
    Ok(prefix_threshold(n, k, t, t))
}

/// `{ H ⊇ [t] : H ∩ [t+1, k+1] != ∅ } ∪ { [k+1] \ {x} : x ∈ [t] }`.
pub fn hm_family(n: usize, k: usize, t: usize) -> Result<Family> {
    check_ground(n)?;
    ensure_contract!(
        t >= 1 && t < k + 1 && k < n,
        "need n >= k+1 > t >= 1, got n={n} k={k} t={t}"
    );
    let window = KSet::range(t + 1, k + 1);
    let top = KSet::prefix(k + 1);
    let mut out: Vec<KSet> = full_star(n, k, t)?
        .iter()
        .copied()
        .filter(|h| h.intersection_size(window) > 0)
        .collect();
    out.extend((1..=t).map(|x| top.without(x)));
    Ok(Family::from_vec_unchecked(k, out))
}

/// The two-part family `A ∪ B` with
/// `A = { A ⊆ [2k-t] : |A ∩ [k-1+s]| >= t+s }` and
/// `B = { B0 ∪ {x} : B0 ∈ C([k-1+s], k-1), x ∈ [2k-t+1, n] }`.
///
/// Checked to be t-intersecting before it is returned.
pub fn example15(n: usize, k: usize, t: usize, s: usize) -> Result<Family> {
    check_ground(n)?;
    ensure_contract!(k > t && t > 2, "need k > t > 2, got k={k} t={t}");
    ensure_contract!(s + 1 < k - t, "need 0 <= s < k - t - 1, got s={s} k={k} t={t}");
    ensure_contract!(n > 2 * k - t, "need n > 2k - t, got n={n}");
    let m = k - 1 + s;
    let a = prefix_threshold(2 * k - t, k, m, t + s);
    let heads: Vec<KSet> = ksubsets_iter(m, k - 1).collect();
    let b = (2 * k - t + 1..=n).flat_map(|x| heads.iter().map(move |h| h.with(x)));
    let f = Family::new(k, a.iter().copied().chain(b))?;
    if let Some((x, y)) = intersection_violation(&f, t) {
        return Err(Error::Invariant(format!(
            "two-part family ({n},{k},{t},{s}) has {x:?} ∩ {y:?} of size {}",
            x.intersection_size(y)
        )));
    }
    Ok(f)
}

/// Number of members of the `B` part of [`example15`].
pub fn example15_outer_size(n: usize, k: usize, t: usize, s: usize) -> u128 {
    let heads = crate::exact::binomial((k - 1 + s) as u64, (k - 1) as i64);
    let heads: u128 = heads.try_into().expect("binomial fits");
    heads * (n - (2 * k - t)) as u128
}

/// The pair `(E, D)` for width `w`:
/// `E = [t-1] ∪ {t+1, t+3, ..., t+2w+1} ∪ [t+2w+2, k+w+1]`,
/// `D = [t] ∪ {t+2, t+4, ..., t+2w}`.
pub fn witness_sets(k: usize, t: usize, w: usize) -> Result<(KSet, KSet)> {
    ensure_contract!(
        t >= 1 && t < k && (1..=k - t).contains(&w),
        "need 1 <= w <= k - t, got k={k} t={t} w={w}"
    );
    check_ground(k + w + 1)?;
    let mut e = KSet::prefix(t - 1).union(KSet::range(t + 2 * w + 2, k + w + 1));
    for i in 0..=w {
        e = e.with(t + 1 + 2 * i);
    }
    let mut d = KSet::prefix(t);
    for i in 1..=w {
        d = d.with(t + 2 * i);
    }
    check_witness_pair(e, d, k, t)?;
    Ok((e, d))
}

/// The pair used when the width is `k - t`:
/// `E = (1, ..., t-1, t+1, t+3, ..., 2k-t-1, 2k-t)` and
/// `D = (1, ..., t, t+2, t+4, ..., 2k-t-2, 2k-t+1)`.
pub fn full_width_witness_sets(k: usize, t: usize) -> Result<(KSet, KSet)> {
    ensure_contract!(t >= 1 && t + 2 <= k, "need k - t >= 2, got k={k} t={t}");
    check_ground(2 * k - t + 1)?;
    let mut e = KSet::prefix(t - 1).with(2 * k - t);
    for x in (t + 1..=2 * k - t - 1).step_by(2) {
        e = e.with(x);
    }
    let mut d = KSet::prefix(t).with(2 * k - t + 1);
    for x in (t + 2..=2 * k - t - 2).step_by(2) {
        d = d.with(x);
    }
    check_witness_pair(e, d, k, t)?;
    Ok((e, d))
}

fn check_witness_pair(e: KSet, d: KSet, k: usize, t: usize) -> Result<()> {
    let common = e.intersection(d);
    if e.len() != k || common.len() != t - 1 || !common.is_subset(KSet::prefix(t - 1)) {
        return Err(Error::Invariant(format!(
            "witness pair E={e:?} D={d:?} fails |E| = {k}, E ∩ D = [{}]",
            t - 1
        )));
    }
    Ok(())
}

/// True when every member of `f` lies in the union of `A_0, ..., A_w`.
pub fn within_frankl_union(f: &Family, t: usize, w: usize) -> bool {
    f.iter()
        .all(|&m| (0..=w).any(|h| m.prefix_count(t + 2 * h) >= t + h))
}
