//! Intersection structure: t-intersection, the pseudo relaxation with its
//! width/height/tail calculus, restricted shadows, stars, semistars and the
//! base of a shifted family.

use std::collections::BTreeMap;

use crate::error::{ensure_contract, Error, Result};
use crate::sets::{Family, KSet, SetSystem};
use crate::shift::is_shifted;

/// Every two members share at least `t` elements.
pub fn is_t_intersecting(f: &Family, t: usize) -> bool {
    let m = f.members();
    m.iter()
        .enumerate()
        .all(|(i, &a)| a.len() >= t && m[i + 1..].iter().all(|&b| a.intersection_size(b) >= t))
}

/// First pair of members meeting in fewer than `t` elements.
pub fn intersection_violation(f: &Family, t: usize) -> Option<(KSet, KSet)> {
    let m = f.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i..] {
            if a.intersection_size(b) < t {
                return Some((a, b));
            }
        }
    }
    None
}

/// `|member ∩ [t + 2h]| >= t + h`.
pub fn meets_prefix_condition(member: KSet, t: usize, h: usize) -> bool {
    member.prefix_count(t + 2 * h) >= t + h
}

/// Smallest `h` in `0..=k-t` satisfying the prefix condition.
fn least_level(member: KSet, t: usize) -> Option<usize> {
    let k = member.len();
    if k < t {
        return None;
    }
    (0..=k - t).find(|&h| meets_prefix_condition(member, t, h))
}

/// Every member satisfies the prefix condition for some `0 <= h <= k - t`.
pub fn is_pseudo_t_intersecting(f: &Family, t: usize) -> bool {
    f.iter().all(|&m| least_level(m, t).is_some())
}

/// `w_t(f)`: the least `w` such that each member meets the prefix condition
/// at some `h <= w`. Zero for the empty family.
pub fn width(f: &Family, t: usize) -> Result<usize> {
    let mut w = 0;
    for &m in f {
        match least_level(m, t) {
            Some(h) => w = w.max(h),
            None => {
                return Err(Error::Domain(format!(
                    "{m:?} meets no prefix condition at t={t}; family is not pseudo {t}-intersecting"
                )))
            }
        }
    }
    Ok(w)
}

/// Largest `h <= w` at which `member` meets the prefix condition.
pub fn height(member: KSet, t: usize, w: usize) -> Result<usize> {
    (0..=w)
        .rev()
        .find(|&h| meets_prefix_condition(member, t, h))
        .ok_or_else(|| {
            Error::Domain(format!(
                "{member:?} meets no prefix condition with h <= {w} at t={t}"
            ))
        })
}

/// `T(F) = F \ [t + 2 h(F)]`.
pub fn tail(member: KSet, t: usize, w: usize) -> Result<KSet> {
    let h = height(member, t, w)?;
    Ok(member.difference(KSet::prefix(t + 2 * h)))
}

/// Members grouped by tail, for a pseudo t-intersecting family at its own width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailPartition {
    pub t: usize,
    pub width: usize,
    pub entries: BTreeMap<KSet, Family>,
}

pub fn tail_partition(f: &Family, t: usize) -> Result<TailPartition> {
    let w = width(f, t)?;
    tail_partition_at(f, t, w)
}

/// Tail partition with an explicit width (callers working with a subfamily
/// pass the parent's width or a bound on it).
pub fn tail_partition_at(f: &Family, t: usize, w: usize) -> Result<TailPartition> {
    let mut groups: BTreeMap<KSet, Vec<KSet>> = BTreeMap::new();
    for &m in f {
        let h = height(m, t, w)?;
        if h < w && m.prefix_count(t + 2 * h) != t + h {
            // Maximality of h rules this out.
            return Err(Error::Invariant(format!(
                "{m:?} has height {h} < width {w} but |F ∩ [{}]| = {} != {}",
                t + 2 * h,
                m.prefix_count(t + 2 * h),
                t + h
            )));
        }
        let tail = m.difference(KSet::prefix(t + 2 * h));
        groups.entry(tail).or_default().push(m);
    }
    Ok(TailPartition {
        t,
        width: w,
        entries: groups
            .into_iter()
            .map(|(tail, v)| (tail, Family::from_vec_unchecked(f.k(), v)))
            .collect(),
    })
}

/// `(k-j)`-subsets of `member` that keep `keep`: delete `j` elements of `member \ keep`.
fn delete_outside(member: KSet, keep: KSet, j: usize) -> impl Iterator<Item = KSet> {
    let free = member.difference(keep);
    let r = free.len().saturating_sub(j);
    let feasible = free.len() >= j;
    free.subsets_of_size(r)
        .filter(move |_| feasible)
        .map(move |s| s.union(keep))
}

impl TailPartition {
    /// Restricted shadow of each tail class.
    pub fn restricted_shadows(&self, j: usize) -> BTreeMap<KSet, Family> {
        self.entries
            .iter()
            .map(|(&tail, class)| {
                let k = class.k();
                let v: Vec<KSet> = class
                    .iter()
                    .flat_map(|&m| delete_outside(m, tail, j))
                    .collect();
                (tail, Family::from_vec_unchecked(k - j, v))
            })
            .collect()
    }

    pub fn total_members(&self) -> usize {
        self.entries.values().map(Family::len).sum()
    }
}

/// `∂_R^j f`: for each member, delete `j` elements outside its tail.
/// Requires `0 < j <= t` and a pseudo t-intersecting family.
pub fn tail_restricted_shadow(f: &Family, t: usize, j: usize) -> Result<Family> {
    tail_restricted_shadow_at(f, t, width(f, t)?, j)
}

/// [`tail_restricted_shadow`] with tails taken at an explicit width `w`.
pub fn tail_restricted_shadow_at(f: &Family, t: usize, w: usize, j: usize) -> Result<Family> {
    ensure_contract!(j > 0 && j <= t, "restricted shadow needs 0 < j <= t, got j={j} t={t}");
    ensure_contract!(j <= f.k(), "cannot delete {j} elements from {}-sets", f.k());
    let part = tail_partition_at(f, t, w)?;
    let all: Vec<KSet> = part
        .restricted_shadows(j)
        .into_values()
        .flat_map(|fam| fam.members().to_vec())
        .collect();
    Ok(Family::from_vec_unchecked(f.k() - j, all))
}

/// Shadow that only deletes elements inside the prefix `[m]`.
pub fn prefix_restricted_shadow(f: &Family, m: usize, j: usize) -> Result<Family> {
    ensure_contract!(
        j > 0 && j < f.k(),
        "restricted shadow needs 0 < j < k, got j={j} k={}",
        f.k()
    );
    let outside = !KSet::prefix(m).bits();
    let all: Vec<KSet> = f
        .iter()
        .flat_map(|&member| delete_outside(member, KSet::from_bits(member.bits() & outside), j))
        .collect();
    Ok(Family::from_vec_unchecked(f.k() - j, all))
}

/// A `t`-set contained in every member, if one exists (the smallest such).
/// Any `t`-set works for the empty family; `[t]` is returned.
pub fn star_center(f: &Family, t: usize) -> Option<KSet> {
    let common = f.common_intersection().unwrap_or(KSet::prefix(t));
    (common.len() >= t).then(|| common.subsets_of_size(t).next().unwrap_or(KSet::EMPTY))
}

pub fn is_t_star(f: &Family, t: usize) -> bool {
    star_center(f, t).is_some()
}

/// A `(t+1)`-set `D` with `|F ∩ D| >= t` for all members, if one exists.
///
/// Any valid `D` contains a `t`-subset of the first member, so the search runs
/// over such subsets extended by one element of the support or of `[t+1]`.
pub fn semistar_center(f: &Family, t: usize) -> Option<KSet> {
    let Some(&first) = f.members().first() else {
        return Some(KSet::prefix(t + 1));
    };
    if t + 1 > crate::sets::MAX_GROUND {
        return None;
    }
    let pool = f.support().union(KSet::prefix(t + 1));
    let mut best: Option<KSet> = None;
    for core in first.subsets_of_size(t) {
        for extra in pool.difference(core).elements() {
            let d = core.with(extra);
            if best.is_some_and(|b| b <= d) {
                continue;
            }
            if f.iter().all(|&m| m.intersection_size(d) >= t) {
                best = Some(d);
            }
        }
    }
    best
}

pub fn is_semistar(f: &Family, t: usize) -> bool {
    semistar_center(f, t).is_some()
}

/// The base `{F ∩ [2k-t]}` with its levels and level counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseDecomposition {
    pub base: SetSystem,
    pub levels: BTreeMap<usize, Family>,
    pub counts: BTreeMap<usize, usize>,
}

impl BaseDecomposition {
    /// `b_ℓ`, zero for absent levels.
    pub fn count(&self, ell: usize) -> usize {
        self.counts.get(&ell).copied().unwrap_or(0)
    }

    pub fn level(&self, ell: usize) -> Family {
        self.levels
            .get(&ell)
            .cloned()
            .unwrap_or_else(|| Family::empty(ell))
    }
}

/// Traces of `f` on `[2k - t]`.
pub fn base_decomposition(f: &Family, t: usize) -> Result<BaseDecomposition> {
    let k = f.k();
    ensure_contract!(t <= 2 * k, "base needs t <= 2k, got t={t} k={k}");
    let window = KSet::prefix(2 * k - t);
    let base = SetSystem::new(f.iter().map(|m| m.intersection(window)));
    let levels = base.levels();
    let counts = levels.iter().map(|(&l, fam)| (l, fam.len())).collect();
    Ok(BaseDecomposition {
        base,
        levels,
        counts,
    })
}

/// Outcome of the `b_{t+1}` level analysis of a shifted t-intersecting family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelStructure {
    /// `[t+2] \ {t}` is a trace, and every member meets `[t+2]` in `>= t+1` elements.
    ContainedInA1,
    /// The `(t+1)`-traces are exactly `[t] ∪ {x}` for `t < x <= t + s`.
    Consecutive { s: usize },
}

/// Classifies the `(t+1)`-level of the base. Rejects inputs that are not
/// shifted and t-intersecting.
pub fn classify_b_t1(f: &Family, t: usize) -> Result<LevelStructure> {
    ensure_contract!(t >= 1, "t must be positive");
    if !is_shifted(f) || !is_t_intersecting(f, t) {
        return Err(Error::Domain(format!(
            "level classification needs a shifted {t}-intersecting family"
        )));
    }
    let base = base_decomposition(f, t)?;
    let level = base.level(t + 1);
    let a3 = KSet::prefix(t + 2).without(t);
    if level.contains(a3) {
        if let Some(&bad) = f.iter().find(|m| m.prefix_count(t + 2) < t + 1) {
            return Err(Error::Invariant(format!(
                "trace {a3:?} present but {bad:?} meets [{}] in fewer than {} elements",
                t + 2,
                t + 1
            )));
        }
        return Ok(LevelStructure::ContainedInA1);
    }
    let s = level.len();
    let expected: Vec<KSet> = (t + 1..=t + s).map(|x| KSet::prefix(t).with(x)).collect();
    if level.members() != expected.as_slice() {
        return Err(Error::Invariant(format!(
            "(t+1)-level {level:?} is not the consecutive run [t] ∪ {{x}}, t < x <= {}",
            t + s
        )));
    }
    Ok(LevelStructure::Consecutive { s })
}

/// `F_in = f ∩ C([2k-t], k)` and `F_out = f \ F_in`.
pub fn split_inside(f: &Family, t: usize) -> (Family, Family) {
    let window = KSet::prefix(2 * f.k() - t);
    (
        f.filter(|m| m.is_subset(window)),
        f.filter(|m| !m.is_subset(window)),
    )
}

/// Split by trace size: `|F ∩ [2k-t]| > w + t` goes first, the rest second.
pub fn split_by_trace(f: &Family, t: usize, w: usize) -> (Family, Family) {
    let m = 2 * f.k() - t;
    (
        f.filter(|x| x.prefix_count(m) > w + t),
        f.filter(|x| x.prefix_count(m) <= w + t),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{frankl_family, full_star};
    use crate::sets::{enumerate_ksubsets, family, set};
    use crate::shadow::shadow_j;

    #[test]
    fn t_intersecting_examples() {
        assert!(is_t_intersecting(&family(&[&[1, 2], &[1, 3], &[2, 3]]), 1));
        assert!(!is_t_intersecting(&family(&[&[1, 2], &[3, 4]]), 1));
        let a1 = frankl_family(6, 3, 1, 1).unwrap();
        assert_eq!(a1.len(), 10);
        assert!(is_t_intersecting(&a1, 1));
        assert!(is_t_intersecting(&Family::empty(3), 2));
        assert_eq!(
            intersection_violation(&family(&[&[1, 2], &[3, 4]]), 1),
            Some((set(&[1, 2]), set(&[3, 4])))
        );
    }

    #[test]
    fn pseudo_examples() {
        assert!(is_pseudo_t_intersecting(&family(&[&[2, 3, 4]]), 2));
        assert!(!is_pseudo_t_intersecting(&family(&[&[3, 4, 5]]), 2));
        assert!(is_pseudo_t_intersecting(&Family::empty(3), 2));
    }

    #[test]
    fn width_examples() {
        assert_eq!(width(&full_star(8, 4, 2).unwrap(), 2).unwrap(), 0);
        assert_eq!(width(&frankl_family(7, 3, 1, 1).unwrap(), 1).unwrap(), 1);
        assert_eq!(width(&Family::empty(3), 1).unwrap(), 0);
        assert!(matches!(width(&family(&[&[3, 4, 5]]), 2), Err(Error::Domain(_))));
    }

    #[test]
    fn height_and_tail_examples() {
        assert_eq!(height(set(&[1, 2, 5, 6]), 2, 2).unwrap(), 2);
        assert_eq!(height(set(&[1, 2, 4, 7]), 2, 1).unwrap(), 1);
        assert_eq!(height(set(&[1, 2, 3, 4, 9]), 2, 1).unwrap(), 1);
        assert!(height(set(&[5, 6, 7]), 2, 1).is_err());
        assert_eq!(tail(set(&[1, 2, 4, 7]), 2, 1).unwrap(), set(&[7]));
        assert_eq!(tail(set(&[1, 2, 3]), 2, 1).unwrap(), KSet::EMPTY);
        assert_eq!(tail(set(&[1, 2, 5, 6]), 2, 2).unwrap(), KSet::EMPTY);
    }

    #[test]
    fn tail_partition_examples() {
        let a0 = frankl_family(6, 3, 2, 0).unwrap();
        let part = tail_partition(&a0, 2).unwrap();
        assert_eq!(part.width, 0);
        assert_eq!(part.entries.len(), 4);
        assert_eq!(part.total_members(), a0.len());
        for (tail, class) in &part.entries {
            assert_eq!(tail.len(), 1);
            assert!(class.iter().all(|m| m.difference(KSet::prefix(2)) == *tail));
        }
        let single = tail_partition(&family(&[&[1, 2, 4, 7]]), 2).unwrap();
        assert_eq!(single.entries.len(), 1);
    }

    #[test]
    fn restricted_shadow_examples() {
        let f = family(&[&[1, 2, 3]]);
        assert_eq!(
            tail_restricted_shadow(&f, 3, 1).unwrap(),
            shadow_j(&f, 1).unwrap()
        );
        let f = family(&[&[1, 2, 4, 7]]);
        // at w = 1 the tail is {7}; at its own width 0 it is {4, 7}
        assert_eq!(
            tail_restricted_shadow_at(&f, 2, 1, 1).unwrap(),
            family(&[&[2, 4, 7], &[1, 4, 7], &[1, 2, 7]])
        );
        assert_eq!(
            tail_restricted_shadow(&f, 2, 1).unwrap(),
            family(&[&[2, 4, 7], &[1, 4, 7]])
        );
        assert!(tail_restricted_shadow(&f, 2, 3).is_err());
        let a1 = frankl_family(8, 4, 2, 1).unwrap();
        let r = tail_restricted_shadow(&a1, 2, 1).unwrap();
        assert!(r.is_subfamily_of(&shadow_j(&a1, 1).unwrap()));
    }

    #[test]
    fn prefix_restricted_examples() {
        assert_eq!(
            prefix_restricted_shadow(&family(&[&[1, 2, 3, 9]]), 4, 1).unwrap(),
            family(&[&[2, 3, 9], &[1, 3, 9], &[1, 2, 9]])
        );
        assert!(prefix_restricted_shadow(&family(&[&[5, 6, 7]]), 4, 1)
            .unwrap()
            .is_empty());
        // Members with different prefix sizes contribute disjoint sets.
        let f = family(&[&[1, 2, 3, 9], &[1, 2, 8, 9]]);
        let r = prefix_restricted_shadow(&f, 4, 1).unwrap();
        assert_eq!(r.len(), 3 + 2);
    }

    #[test]
    fn star_examples() {
        assert!(is_t_star(&full_star(7, 3, 2).unwrap(), 2));
        assert!(!is_t_star(&family(&[&[1, 2], &[1, 3], &[2, 3]]), 1));
        assert!(is_t_star(&family(&[&[1, 2, 3]]), 2));
        assert_eq!(star_center(&full_star(7, 3, 2).unwrap(), 2), Some(set(&[1, 2])));
    }

    #[test]
    fn semistar_examples() {
        let a0 = frankl_family(8, 4, 2, 0).unwrap();
        let a1 = frankl_family(8, 4, 2, 1).unwrap();
        let both = a0.union(&a1).unwrap();
        assert_eq!(semistar_center(&both, 2), Some(set(&[1, 2, 3])));
        assert!(is_semistar(&a0, 2));
        assert!(!is_semistar(&family(&[&[1, 2, 3], &[4, 5, 6]]), 2));
        // The center may use an element outside the support.
        assert!(is_semistar(&family(&[&[1, 2, 3], &[1, 2, 4]]), 2));
    }

    /// Exhaustive semistar definition over all (t+1)-subsets of [n].
    fn semistar_brute(f: &Family, t: usize, n: usize) -> bool {
        enumerate_ksubsets(n, t + 1)
            .unwrap()
            .iter()
            .any(|&d| f.iter().all(|m| m.intersection_size(d) >= t))
    }

    #[test]
    fn semistar_search_matches_brute_force() {
        let layer = enumerate_ksubsets(6, 3).unwrap();
        let m = layer.members();
        for a in 0..m.len() {
            for b in a..m.len() {
                for c in b..m.len() {
                    let f = Family::new(3, [m[a], m[b], m[c]]).unwrap();
                    for t in 1..=2 {
                        assert_eq!(is_semistar(&f, t), semistar_brute(&f, t, 6), "{f:?} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn base_examples() {
        let inside = frankl_family(6, 3, 1, 2).unwrap();
        let b = base_decomposition(&inside, 1).unwrap();
        assert_eq!(b.levels.len(), 1);
        assert_eq!(b.level(3), inside);

        let a0 = frankl_family(8, 3, 1, 0).unwrap();
        let b = base_decomposition(&a0, 1).unwrap();
        assert_eq!((b.count(1), b.count(2), b.count(3)), (1, 4, 6));
        assert_eq!(b.count(0), 0);
        assert!(b.level(1).contains(set(&[1])));
    }

    #[test]
    fn classify_examples() {
        let a0 = frankl_family(8, 3, 1, 0).unwrap();
        assert_eq!(
            classify_b_t1(&a0, 1).unwrap(),
            LevelStructure::Consecutive { s: 4 }
        );
        let a1 = frankl_family(8, 3, 1, 1).unwrap();
        assert_eq!(classify_b_t1(&a1, 1).unwrap(), LevelStructure::ContainedInA1);
        let top = frankl_family(8, 3, 1, 2).unwrap();
        assert_eq!(
            classify_b_t1(&top, 1).unwrap(),
            LevelStructure::Consecutive { s: 0 }
        );
        assert!(classify_b_t1(&family(&[&[2, 3, 4]]), 1).is_err());
    }

    #[test]
    fn splits() {
        let a1 = frankl_family(7, 3, 1, 1).unwrap();
        let (inside, outside) = split_inside(&a1, 1);
        assert_eq!(inside.len() + outside.len(), a1.len());
        assert!(inside.iter().all(|m| m.max_element().unwrap() <= 5));
        let (hi, lo) = split_by_trace(&a1, 1, 1);
        assert_eq!(hi.len() + lo.len(), a1.len());
    }
}
