//! Per-family theorem checks.
//!
//! Each check first tests the theorem's hypotheses on the family (skipped
//! when `trust` is set, which is how the tests feed deliberately corrupted
//! inputs) and then evaluates the conclusion exactly.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use crate::bounds::{
    general_threshold, katona_ratio, semistar_bound, sharpened_ratio, sharpened_threshold,
    star_bound, star_shadow_threshold, width_coefficient, width_inner_gap, width_outer_gap,
    width_ratio,
};
use crate::canonical::{full_star, witness_sets};
use crate::error::{Error, Result};
use crate::exact::{binom, ExactRatio};
use crate::sets::{Family, KSet};
use crate::shadow::{deletion_shadow, shadow_j, sigma_ell};
use crate::shift::{is_shifted, shift_closure};
use crate::structure::{
    base_decomposition, classify_b_t1, height, is_pseudo_t_intersecting, is_semistar,
    is_t_intersecting, is_t_star, split_by_trace, split_inside, tail_partition_at, width,
    LevelStructure, TailPartition,
};

use super::CheckParams;

/// Result of checking one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The hypotheses do not hold for this family.
    Vacuous,
    /// The conclusion holds; `tight` marks equality in the inequality.
    Holds { tight: bool },
    /// The conclusion fails; the message says how.
    Violated(String),
}

impl Outcome {
    fn holds(tight: bool) -> Self {
        Outcome::Holds { tight }
    }

    fn violated_if(bad: bool, message: impl FnOnce() -> String) -> Option<Outcome> {
        bad.then(|| Outcome::Violated(message()))
    }

    /// Combines outcomes for several parameter values on one family:
    /// the first violation wins, then any hold, else vacuous.
    fn combine(outcomes: impl IntoIterator<Item = Result<Outcome>>) -> Result<Outcome> {
        let mut acc = Outcome::Vacuous;
        for o in outcomes {
            match o? {
                v @ Outcome::Violated(_) => return Ok(v),
                Outcome::Holds { tight } => {
                    acc = match acc {
                        Outcome::Holds { tight: t } => Outcome::holds(t || tight),
                        _ => Outcome::holds(tight),
                    }
                }
                Outcome::Vacuous => {}
            }
        }
        Ok(acc)
    }
}

/// Values of a parameter to check: the requested one (which must lie in
/// `range`) or the whole range.
fn values(requested: Option<usize>, range: RangeInclusive<usize>, name: &str) -> Result<Vec<usize>> {
    match requested {
        Some(v) if range.contains(&v) => Ok(vec![v]),
        Some(v) => Err(Error::Contract(format!(
            "{name} = {v} outside the valid range {}..={}",
            range.start(),
            range.end()
        ))),
        None => Ok(range.collect()),
    }
}

/// `|lhs|` against `ratio * size`.
fn against(lhs: usize, ratio: &ExactRatio, size: usize) -> Ordering {
    ratio.cmp_count(lhs, size)
}

fn at_least(lhs: usize, ratio: &ExactRatio, size: usize, what: &str) -> Outcome {
    match against(lhs, ratio, size) {
        Ordering::Less => Outcome::Violated(format!(
            "{what}: {lhs} < {ratio} * {size} (ratio {})",
            ExactRatio::of(lhs as u64, size.max(1) as u64)
        )),
        ord => Outcome::holds(ord == Ordering::Equal),
    }
}

fn strictly_above(lhs: usize, ratio: &ExactRatio, size: usize, what: &str) -> Outcome {
    match against(lhs, ratio, size) {
        Ordering::Greater => Outcome::holds(false),
        _ => Outcome::Violated(format!("{what}: {lhs} <= {ratio} * {size}")),
    }
}

fn binom_usize(a: usize, b: usize) -> usize {
    usize::try_from(binom(a as i64, b as i64)).unwrap_or(usize::MAX)
}

/// Family equal to all `k`-subsets of a `(2k-t)`-set.
fn is_complete_on_window(f: &Family, t: usize) -> bool {
    let k = f.k();
    f.support().len() == 2 * k - t && f.len() == binom_usize(2 * k - t, k)
}

fn in_a1(m: KSet, t: usize) -> bool {
    m.prefix_count(t + 2) > t
}

fn require_shifted_t(f: &Family, t: usize) -> bool {
    !f.is_empty() && is_shifted(f) && is_t_intersecting(f, t)
}

/// `|σ_ℓ F| >= |F| C(2k-t, ℓ)/C(2k-t, k)`, with equality exactly at `C(Y, k)`.
pub fn intersecting_shadow(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let (k, t) = (p.k, p.t);
    let ells = values(p.ell, k - t..=k - 1, "ell")?;
    if !trust && (f.is_empty() || !is_t_intersecting(f, t)) {
        return Ok(Outcome::Vacuous);
    }
    Outcome::combine(ells.into_iter().map(|ell| {
        let lhs = sigma_ell(f, ell)?.len();
        let bound = katona_ratio(k, t, ell)?;
        let out = at_least(lhs, &bound, f.len(), &format!("|σ_{ell}|"));
        if let Outcome::Holds { tight } = out {
            let complete = is_complete_on_window(f, t);
            if tight != complete {
                return Ok(Outcome::Violated(format!(
                    "ℓ={ell}: equality is {tight} but the family is{} all k-subsets of a {}-set",
                    if complete { "" } else { " not" },
                    2 * k - t
                )));
            }
        }
        Ok(out)
    }))
}

/// For `|F| >= threshold`: `|∂^j F| / |F| >= C(2(k-1)-t, k-1-j) / C(2(k-1)-t, k-1)`.
pub fn sharpened_shadow(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let (k, t) = (p.k, p.t);
    if t < 2 || t >= k {
        return Err(Error::Contract(format!("need 1 <= j < t < k, got k={k} t={t}")));
    }
    let js = values(p.j, 1..=t - 1, "j")?;
    if !trust && (f.is_empty() || !is_t_intersecting(f, t)) {
        return Ok(Outcome::Vacuous);
    }
    let shifted;
    let f = if is_shifted(f) {
        f
    } else {
        shifted = shift_closure(f);
        &shifted
    };
    Outcome::combine(js.into_iter().map(|j| {
        if !trust && sharpened_threshold(k, t, j)? > ExactRatio::from(f.len() as u64) {
            return Ok(Outcome::Vacuous);
        }
        let lhs = shadow_j(f, j)?.len();
        Ok(at_least(lhs, &sharpened_ratio(k, t, j)?, f.len(), &format!("|∂^{j}|")))
    }))
}

/// Shifted pseudo t-intersecting of width `w`:
/// `|∂_R^j F| >= |F| C(t+2w, t+w-j) / C(t+2w, t+w)`.
///
/// `p.w`, when given, is the width used in the bound; the hypotheses require
/// it to be at least the family's width.
pub fn width_shadow(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let t = p.t;
    let js = values(p.j, 1..=t.min(p.k - 1), "j")?;
    if f.is_empty() || !is_pseudo_t_intersecting(f, t) {
        return Ok(Outcome::Vacuous);
    }
    let actual = width(f, t)?;
    let claimed = p.w.unwrap_or(actual);
    if !trust && (!is_shifted(f) || claimed < actual) {
        return Ok(Outcome::Vacuous);
    }
    let part = tail_partition_at(f, t, actual)?;
    Outcome::combine(js.into_iter().map(|j| {
        let lhs: usize = part.restricted_shadows(j).values().map(Family::len).sum();
        Ok(at_least(lhs, &width_ratio(t, claimed, j)?, f.len(), &format!("|∂_R^{j}| at width {claimed}")))
    }))
}

/// Checks a tail partition of `f`: it partitions `f`, every class carries its
/// tail, the per-tail restricted shadows are pairwise disjoint and together
/// fit inside `∂^j f`, and the prefix counts of restricted shadow sets behave
/// as the height calculus predicts.
pub fn partition_outcome(f: &Family, part: &TailPartition, j: usize) -> Result<Outcome> {
    let (t, w) = (part.t, part.width);
    let mut union: Vec<KSet> = Vec::with_capacity(f.len());
    for (tail, class) in &part.entries {
        for &m in class {
            let h = height(m, t, w)?;
            let expected = m.difference(KSet::prefix(t + 2 * h));
            if expected != *tail {
                return Ok(Outcome::Violated(format!("{m:?} filed under tail {tail:?}, its tail is {expected:?}")));
            }
        }
        union.extend_from_slice(class.members());
    }
    union.sort_unstable();
    let before = union.len();
    union.dedup();
    if let Some(o) = Outcome::violated_if(before != union.len() || union != f.members(), || {
        "tail classes do not partition the family".into()
    }) {
        return Ok(o);
    }
    let shadows = part.restricted_shadows(j);
    let total: usize = shadows.values().map(Family::len).sum();
    let mut all: Vec<KSet> = shadows.values().flat_map(|s| s.members().to_vec()).collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != total {
        return Ok(Outcome::Violated(format!(
            "restricted shadows of distinct tails overlap: {total} counted, {} distinct",
            all.len()
        )));
    }
    let full = shadow_j(f, j)?;
    if let Some(&g) = all.iter().find(|g| !full.contains(**g)) {
        return Ok(Outcome::Violated(format!("{g:?} is in a restricted shadow but not in ∂^{j}")));
    }
    // Prefix counts of restricted shadow sets of members below the width.
    for (tail, class) in &part.entries {
        for &m in class {
            let hm = height(m, t, w)?;
            if hm >= w {
                continue;
            }
            for g in m.difference(*tail).subsets_of_size(m.len() - tail.len() - j) {
                let g = g.union(*tail);
                if g.prefix_count(t + 2 * hm) + j != t + hm {
                    return Ok(Outcome::Violated(format!(
                        "{g:?} from {m:?}: |G ∩ [{}]| = {} != {}",
                        t + 2 * hm,
                        g.prefix_count(t + 2 * hm),
                        t + hm - j
                    )));
                }
                if let Some(h) = (hm + 1..=w).find(|&h| g.prefix_count(t + 2 * h) + j >= t + h) {
                    return Ok(Outcome::Violated(format!(
                        "{g:?} from {m:?}: |G ∩ [{}]| reaches {}",
                        t + 2 * h,
                        t + h - j
                    )));
                }
            }
        }
    }
    Ok(Outcome::holds(total == full.len()))
}

/// Tail partition disjointness and the restricted-shadow inequality for
/// pseudo t-intersecting families.
pub fn tail_partition_disjoint(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let t = p.t;
    let js = values(p.j, 1..=t.min(p.k - 1), "j")?;
    if f.is_empty() || (!trust && !is_pseudo_t_intersecting(f, t)) {
        return Ok(Outcome::Vacuous);
    }
    let w = width(f, t)?;
    let part = tail_partition_at(f, t, w)?;
    Outcome::combine(js.into_iter().map(|j| partition_outcome(f, &part, j)))
}

/// Shifted t-intersecting families are pseudo t-intersecting.
pub fn shifted_is_pseudo(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    if !trust && !require_shifted_t(f, p.t) {
        return Ok(Outcome::Vacuous);
    }
    Ok(if is_pseudo_t_intersecting(f, p.t) {
        Outcome::holds(false)
    } else {
        let bad = f.iter().find(|m| !(0..=p.k - p.t).any(|h| m.prefix_count(p.t + 2 * h) >= p.t + h));
        Outcome::Violated(format!("{bad:?} meets no prefix condition"))
    })
}

/// For shifted t-intersecting `F` of full width `k - t`, the part outside
/// `[2k-t]` is pseudo (t+1)-intersecting of (t+1)-width at most `k - t - 2`.
pub fn outer_part_pseudo(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let (k, t) = (p.k, p.t);
    if k < t + 2 {
        return Err(Error::Contract(format!("need k - t >= 2, got k={k} t={t}")));
    }
    if !trust && (!require_shifted_t(f, t) || width(f, t)? != k - t) {
        return Ok(Outcome::Vacuous);
    }
    let (_, outside) = split_inside(f, t);
    if !is_pseudo_t_intersecting(&outside, t + 1) {
        return Ok(Outcome::Violated(format!(
            "outer part {outside:?} is not pseudo {}-intersecting",
            t + 1
        )));
    }
    let w = width(&outside, t + 1)?;
    Ok(match Outcome::violated_if(w > k - t - 2, || format!("outer part has width {w} > {}", k - t - 2)) {
        Some(o) => o,
        None => Outcome::holds(w == k - t - 2),
    })
}

fn in_a0_or_a1(m: KSet, t: usize) -> bool {
    m.prefix_count(t) >= t || in_a1(m, t)
}

/// Subfamilies of `A_0 ∪ A_1`: the semistar ratio for `1 < j < t`, and for
/// subfamilies of `A_0` the ratio of `A_0` itself, which exceeds `C(t, j)`.
pub fn frankl_union_shadow(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let (n, k, t) = (p.n, p.k, p.t);
    if t < 2 || t >= k {
        return Err(Error::Contract(format!("need 2 <= t < k, got k={k} t={t}")));
    }
    let js = values(p.j, 1..=t, "j")?;
    if f.is_empty() || (!trust && !f.iter().all(|&m| in_a0_or_a1(m, t))) {
        return Ok(Outcome::Vacuous);
    }
    let in_star = f.iter().all(|m| m.prefix_count(t) == t);
    let a0 = if in_star { Some(full_star(n, k, t)?) } else { None };
    Outcome::combine(js.into_iter().map(|j| {
        let lhs = shadow_j(f, j)?.len();
        let mut parts = Vec::new();
        if 1 < j && j < t {
            parts.push(Ok(at_least(lhs, &semistar_bound(t, j)?, f.len(), &format!("|∂^{j}|"))));
        }
        if let Some(a0) = &a0 {
            let star_ratio = ExactRatio::of(shadow_j(a0, j)?.len() as u64, a0.len() as u64);
            if star_ratio <= star_bound(t, j)? {
                return Ok(Outcome::Violated(format!("full star ratio {star_ratio} <= C({t},{j})")));
            }
            parts.push(Ok(at_least(lhs, &star_ratio, f.len(), &format!("|∂^{j}| against the full star"))));
        }
        Outcome::combine(parts)
    }))
}

/// `|{ S \ X : S ∈ sets, X ⊆ S, |X| = i }|` for possibly non-uniform sets.
fn deletion_count(sets: &[KSet], i: usize) -> usize {
    let mut out: Vec<KSet> = sets
        .iter()
        .filter(|s| s.len() >= i)
        .flat_map(|s| s.subsets_of_size(s.len() - i))
        .collect();
    out.sort_unstable();
    out.dedup();
    out.len()
}

/// For `F ⊆ A_0`: `|∂^j F| = Σ_{0<=i<=j} C(t, j-i) |∂^i F̄|` with `F̄ = {F \ [t]}`.
pub fn star_shadow_identity(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let (k, t) = (p.k, p.t);
    let js = values(p.j, 1..=t.min(k - 1), "j")?;
    if f.is_empty() || (!trust && !f.iter().all(|m| m.prefix_count(t) == t)) {
        return Ok(Outcome::Vacuous);
    }
    let reduced: Vec<KSet> = f.iter().map(|m| m.difference(KSet::prefix(t))).collect();
    Outcome::combine(js.into_iter().map(|j| {
        let lhs = shadow_j(f, j)?.len();
        let rhs: usize = (0..=j)
            .map(|i| binom_usize(t, j - i) * deletion_count(&reduced, i))
            .sum();
        Ok(if lhs == rhs {
            Outcome::holds(true)
        } else {
            Outcome::Violated(format!("j={j}: |∂^j F| = {lhs} but the level sum is {rhs}"))
        })
    }))
}

/// t-intersecting `(t+1)`-semistars: `|∂^j F| / |F| >= C(t+2, j+1)/(t+2)` for `1 < j < t`.
pub fn semistar_shadow(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let t = p.t;
    if t < 3 {
        return Err(Error::Contract(format!("need t >= 3 for 1 < j < t, got t={t}")));
    }
    let js = values(p.j, 2..=t - 1, "j")?;
    if f.is_empty() || (!trust && (!is_t_intersecting(f, t) || !is_semistar(f, t))) {
        return Ok(Outcome::Vacuous);
    }
    Outcome::combine(js.into_iter().map(|j| {
        let lhs = shadow_j(f, j)?.len();
        Ok(at_least(lhs, &semistar_bound(t, j)?, f.len(), &format!("|∂^{j}|")))
    }))
}

/// Shifted t-intersecting families with `|F ∩ [t+1]| >= t` throughout: with
/// `F_0` the members containing `[t+1]`, `T` the traces outside `[t+1]` of the
/// others and `F_2` the members whose trace is shared by at least two members,
/// `(t+1)|F_0| >= |F_2|`, the shared traces are intersecting, and
/// `{F \ [t+1] : F ∈ F_0}` contains the immediate shadow of `T`.
pub fn semistar_core_balance(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let t = p.t;
    let d = KSet::prefix(t + 1);
    if f.is_empty()
        || (!trust && (!require_shifted_t(f, t) || !f.iter().all(|m| m.intersection_size(d) >= t)))
    {
        return Ok(Outcome::Vacuous);
    }
    let full: Vec<KSet> = f.iter().copied().filter(|m| d.is_subset(*m)).collect();
    let mut classes: BTreeMap<KSet, usize> = BTreeMap::new();
    for m in f.iter().filter(|m| !d.is_subset(**m)) {
        *classes.entry(m.difference(d)).or_default() += 1;
    }
    let f2: usize = classes.values().filter(|&&c| c >= 2).sum();
    let shared: Vec<KSet> = classes.iter().filter(|(_, &c)| c >= 2).map(|(&t2, _)| t2).collect();
    if let Some(o) = Outcome::violated_if((t + 1) * full.len() < f2, || {
        format!("(t+1)|F_0| = {} < |F_2| = {f2}", (t + 1) * full.len())
    }) {
        return Ok(o);
    }
    for (i, a) in shared.iter().enumerate() {
        if let Some(b) = shared[i + 1..].iter().find(|b| a.intersection_size(**b) == 0) {
            return Ok(Outcome::Violated(format!("shared traces {a:?} and {b:?} are disjoint")));
        }
    }
    let reduced: BTreeSet<KSet> = full.iter().map(|m| m.difference(d)).collect();
    for trace in classes.keys() {
        for x in trace.elements() {
            let v = trace.without(x);
            if !reduced.contains(&v) {
                return Ok(Outcome::Violated(format!(
                    "{v:?} lies in the shadow of the traces but [t+1] ∪ {v:?} is missing"
                )));
            }
        }
    }
    Ok(Outcome::holds((t + 1) * full.len() == f2))
}

/// Base properties of shifted t-intersecting families: the base is shifted
/// and t-intersecting, `b_ℓ = 0` below `t`, `b_t <= 1` (and 1 only for
/// stars), `b_ℓ <= C(2k-t, ℓ-t)`, `|F| <= Σ b_ℓ C(n-2k+t, k-ℓ)`, and the
/// `(t+1)`-level has one of its two admissible forms.
pub fn base_properties(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let (n, k, t) = (p.n, p.k, p.t);
    if n < 2 * k - t {
        return Err(Error::Contract(format!("need n >= 2k - t, got n={n}")));
    }
    if !trust && !require_shifted_t(f, t) {
        return Ok(Outcome::Vacuous);
    }
    let base = base_decomposition(f, t)?;
    let members: Vec<KSet> = base.base.iter().copied().collect();
    for (i, a) in members.iter().enumerate() {
        if let Some(b) = members[i..].iter().find(|b| a.intersection_size(**b) < t) {
            return Ok(Outcome::Violated(format!("base sets {a:?} and {b:?} meet in fewer than {t}")));
        }
    }
    for (ell, level) in &base.levels {
        if !is_shifted(level) {
            return Ok(Outcome::Violated(format!("base level {ell} is not shifted")));
        }
        if *ell < t {
            return Ok(Outcome::Violated(format!("b_{ell} = {} for ℓ < t", level.len())));
        }
        let cap = binom_usize(2 * k - t, ell - t);
        if level.len() > cap {
            return Ok(Outcome::Violated(format!("b_{ell} = {} > C({}, {})", level.len(), 2 * k - t, ell - t)));
        }
    }
    let bt = base.count(t);
    if bt > 1 || (bt == 1 && !is_t_star(f, t)) {
        return Ok(Outcome::Violated(format!("b_t = {bt} but the family is not a {t}-star")));
    }
    let cap: u128 = (t..=k)
        .map(|ell| base.count(ell) as u128 * binom_usize(n + t - 2 * k, k - ell) as u128)
        .sum();
    if (f.len() as u128) > cap {
        return Ok(Outcome::Violated(format!("|F| = {} exceeds the level bound {cap}", f.len())));
    }
    if let Err(e) = classify_b_t1(f, t) {
        return Ok(Outcome::Violated(e.to_string()));
    }
    Ok(Outcome::holds(f.len() as u128 == cap))
}

/// Shifted t-intersecting, not inside `A_1`, with `b_{t+1} >= t+1`:
/// `|∂^j F| > C(t, j) |F|`. Also checks that members outside `A_0` meet
/// `[t+s]` in all but one element of `[t]`.
pub fn large_level_shadow(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let (k, t) = (p.k, p.t);
    let js = values(p.j, 1..=t.min(k - 1), "j")?;
    if !trust {
        if !require_shifted_t(f, t) || f.iter().all(|&m| in_a1(m, t)) {
            return Ok(Outcome::Vacuous);
        }
        if base_decomposition(f, t)?.count(t + 1) < t + 1 {
            return Ok(Outcome::Vacuous);
        }
        let s = match classify_b_t1(f, t) {
            Ok(LevelStructure::Consecutive { s }) => s,
            Ok(LevelStructure::ContainedInA1) => {
                return Ok(Outcome::Violated("(t+1)-level contains [t+2] \\ {t} outside A_1".into()))
            }
            Err(e) => return Ok(Outcome::Violated(e.to_string())),
        };
        let window = KSet::prefix(t + s);
        for m in f.iter().filter(|m| m.prefix_count(t) < t) {
            let missing = window.difference(*m);
            if missing.len() != 1 || !missing.is_subset(KSet::prefix(t)) {
                return Ok(Outcome::Violated(format!(
                    "{m:?} outside the star misses {missing:?} of [{}]",
                    t + s
                )));
            }
        }
    }
    Outcome::combine(js.into_iter().map(|j| {
        let lhs = shadow_j(f, j)?.len();
        Ok(strictly_above(lhs, &star_bound(t, j)?, f.len(), &format!("|∂^{j}|")))
    }))
}

/// Shifted t-intersecting, not inside `A_1`, `2t + 1 <= k` and
/// `|F| >` [`star_shadow_threshold`]: `|∂^j F| > C(t, j) |F|`.
pub fn large_family_shadow(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let (n, k, t) = (p.n, p.k, p.t);
    let threshold = star_shadow_threshold(n, k, t)?;
    let js = values(p.j, 1..=t.min(k - 1), "j")?;
    if !trust
        && (!require_shifted_t(f, t)
            || f.iter().all(|&m| in_a1(m, t))
            || num_bigint::BigUint::from(f.len()) <= threshold)
    {
        return Ok(Outcome::Vacuous);
    }
    Outcome::combine(js.into_iter().map(|j| {
        let lhs = shadow_j(f, j)?.len();
        Ok(strictly_above(lhs, &star_bound(t, j)?, f.len(), &format!("|∂^{j}|")))
    }))
}

/// Shifted t-intersecting `F` with `1 <= w < width(F)`: the witness set `E`
/// is a member, and every member `G` satisfies
/// `|G ∩ [t+1+2h]| >= t+1+h` for some `h < w`, or `|G ∩ [2k-t]| > w + t`.
pub fn width_dichotomy(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let (k, t) = (p.k, p.t);
    if !trust && !require_shifted_t(f, t) {
        return Ok(Outcome::Vacuous);
    }
    let actual = if is_pseudo_t_intersecting(f, t) { width(f, t)? } else { k - t };
    let ws: Vec<usize> = match p.w {
        Some(w) if trust || (1..actual).contains(&w) => vec![w],
        Some(_) => return Ok(Outcome::Vacuous),
        None => (1..actual).collect(),
    };
    Outcome::combine(ws.into_iter().map(|w| {
        let (e, _) = witness_sets(k, t, w)?;
        if !trust && !f.contains(e) {
            return Ok(Outcome::Violated(format!("width exceeds {w} but E = {e:?} is not a member")));
        }
        let window = 2 * k - t;
        for &g in f {
            let first = (0..w).any(|h| g.prefix_count(t + 1 + 2 * h) >= t + 1 + h);
            let second = g.prefix_count(window) > w + t;
            if !first && !second {
                return Ok(Outcome::Violated(format!("{g:?} satisfies neither alternative at w={w}")));
            }
        }
        Ok(Outcome::holds(false))
    }))
}

/// Shifted t-intersecting, `1 <= w <= k - t`: if `β |F_out| >= α |F_in|`
/// (split by `|F ∩ [2k-t]| > w + t`) then `|∂^j F| >= c(w, t, j) |F|`.
pub fn balanced_width_shadow(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let (k, t) = (p.k, p.t);
    let ws = values(p.w, 1..=k - t, "w")?;
    let js = values(p.j, 1..=t.min(k - 1), "j")?;
    if !trust && !require_shifted_t(f, t) {
        return Ok(Outcome::Vacuous);
    }
    let mut cases = Vec::new();
    for &w in &ws {
        let (inner, outer) = split_by_trace(f, t, w);
        for &j in &js {
            let alpha = width_inner_gap(w, k, t, j)?;
            let beta = width_outer_gap(w, t, j)?;
            let premise = beta.scale(outer.len()) >= alpha.scale(inner.len());
            if !trust && !premise {
                cases.push(Ok(Outcome::Vacuous));
                continue;
            }
            let lhs = shadow_j(f, j)?.len();
            cases.push(Ok(at_least(lhs, &width_coefficient(w, t, j)?, f.len(), &format!("|∂^{j}| at w={w}"))));
        }
    }
    Outcome::combine(cases)
}

/// t-intersecting, `1 <= w < k - t`, `0 < j < t`, and `|F|` above twice the
/// finite surrogate of the size threshold: `|∂^j F| >= c(w, t, j) |F|`.
pub fn general_width_shadow(f: &Family, p: &CheckParams, trust: bool) -> Result<Outcome> {
    let (n, k, t) = (p.n, p.k, p.t);
    if k < t + 2 || t < 2 {
        return Err(Error::Contract(format!("need k - t >= 2 and t >= 2, got k={k} t={t}")));
    }
    let ws = values(p.w, 1..=k - t - 1, "w")?;
    let js = values(p.j, 1..=t - 1, "j")?;
    if f.is_empty() || (!trust && !is_t_intersecting(f, t)) {
        return Ok(Outcome::Vacuous);
    }
    let shifted;
    let f = if is_shifted(f) {
        f
    } else {
        shifted = shift_closure(f);
        &shifted
    };
    let mut cases = Vec::new();
    for &w in &ws {
        for &j in &js {
            let twice = general_threshold(n, k, t, w, j)?.scale(2);
            if !trust && ExactRatio::from(f.len() as u64) <= twice {
                cases.push(Ok(Outcome::Vacuous));
                continue;
            }
            let lhs = shadow_j(f, j)?.len();
            cases.push(Ok(at_least(lhs, &width_coefficient(w, t, j)?, f.len(), &format!("|∂^{j}| at w={w}"))));
        }
    }
    Outcome::combine(cases)
}

/// Exact shadow of a family as a deletion count, used by reports.
pub fn shadow_size(f: &Family, j: usize) -> Result<usize> {
    Ok(deletion_shadow(f, j)?.len())
}
