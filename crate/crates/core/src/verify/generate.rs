//! Seeded random families.
//!
//! Every generator is a pure function of its parameters and a `u64` seed:
//! the seed is mixed with the parameters before seeding a ChaCha stream, so
//! distinct parameter points never share a random sequence.

use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canonical::frankl_family;
use crate::error::{ensure_contract, Error, Result};
use crate::sets::{check_ground, Family, KSet};
use crate::shift::{is_shifted, shift_closure};
use crate::structure::{is_semistar, is_t_intersecting};

/// Shape of the pre-shift family drawn by [`random_shifted_t_intersecting`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Random subfamily of the full star `A_0`.
    Star,
    /// Random subfamily of one `A_h`.
    Single,
    /// Sparse subfamily of one `A_h`, grown greedily from the union of all `A_h`.
    Mixture,
    /// Most of one `A_h`, grown greedily from the union of all `A_h`.
    Dense,
}

impl Profile {
    pub const ALL: [Profile; 4] = [Profile::Star, Profile::Single, Profile::Mixture, Profile::Dense];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Star => "star",
            Profile::Single => "single",
            Profile::Mixture => "mixture",
            Profile::Dense => "dense",
        }
    }

    /// Profile used for corpus entry `seed`.
    pub fn for_seed(seed: u64) -> Profile {
        Profile::ALL[(seed % 4) as usize]
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Profile::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Contract(format!("unknown profile `{s}`")))
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic stream for `seed` at a parameter point.
pub fn rng_for(seed: u64, tag: &str, params: &[usize]) -> ChaCha8Rng {
    let mut h = mix64(seed);
    for b in tag.bytes() {
        h = mix64(h ^ b as u64);
    }
    for &p in params {
        h = mix64(h ^ p as u64);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// Each member kept independently with probability `density`; never empty
/// when `f` is nonempty.
pub fn random_subfamily(f: &Family, density: f64, rng: &mut impl Rng) -> Family {
    let mut kept: Vec<KSet> = f.iter().copied().filter(|_| rng.random_bool(density)).collect();
    if kept.is_empty() {
        if let Some(&m) = f.members().choose(rng) {
            kept.push(m);
        }
    }
    Family::from_vec_unchecked(f.k(), kept)
}

/// A uniformly random `k`-subset of `[n]`.
pub fn random_kset(n: usize, k: usize, rng: &mut impl Rng) -> KSet {
    let picked = rand::seq::index::sample(rng, n, k);
    picked.iter().fold(KSet::EMPTY, |s, i| s.with(i + 1))
}

/// `size` random `k`-sets of `[n]` (fewer after deduplication); no
/// intersection property.
pub fn random_family(n: usize, k: usize, size: usize, seed: u64) -> Result<Family> {
    check_ground(n)?;
    ensure_contract!(k <= n, "k = {k} exceeds n = {n}");
    let mut rng = rng_for(seed, "any", &[n, k, size]);
    Family::new(k, (0..size).map(|_| random_kset(n, k, &mut rng)))
}

/// Adds members of `candidates` (visited in random order, at most `budget`
/// of them) that keep the family t-intersecting.
fn grow(members: &mut Vec<KSet>, candidates: &[KSet], t: usize, budget: usize, rng: &mut impl Rng) {
    let mut order: Vec<KSet> = candidates.to_vec();
    order.shuffle(rng);
    for c in order.into_iter().take(budget) {
        if members.iter().all(|&m| m.intersection_size(c) >= t) && !members.contains(&c) {
            members.push(c);
        }
    }
}

/// A random shifted t-intersecting family: a random subfamily of the `A_h`
/// families chosen by `profile`, then the shift closure. Both the pre-shift
/// and the shifted family are checked.
pub fn random_shifted_t_intersecting(
    n: usize,
    k: usize,
    t: usize,
    seed: u64,
    profile: Profile,
) -> Result<Family> {
    check_ground(n)?;
    ensure_contract!(1 <= t && t < k && k <= n, "need 1 <= t < k <= n, got n={n} k={k} t={t}");
    let mut rng = rng_for(seed, profile.name(), &[n, k, t]);
    let levels = k - t;
    let h = match profile {
        Profile::Star => 0,
        _ => rng.random_range(0..=levels),
    };
    let base = frankl_family(n, k, t, h)?;
    let mut members: Vec<KSet> = match profile {
        Profile::Star | Profile::Single => {
            let density = rng.random_range(0.05..=1.0);
            random_subfamily(&base, density, &mut rng).members().to_vec()
        }
        Profile::Mixture => {
            let density = rng.random_range(0.0..0.3);
            random_subfamily(&base, density, &mut rng).members().to_vec()
        }
        Profile::Dense => {
            let drop = rng.random_range(0.0..0.3);
            random_subfamily(&base, 1.0 - drop, &mut rng).members().to_vec()
        }
    };
    if matches!(profile, Profile::Mixture | Profile::Dense) {
        let mut pool = Vec::new();
        for other in 0..=levels {
            if other != h {
                pool.extend_from_slice(frankl_family(n, k, t, other)?.members());
            }
        }
        let budget = 64 + members.len();
        grow(&mut members, &pool, t, budget, &mut rng);
    }
    let raw = Family::new(k, members)?;
    if !is_t_intersecting(&raw, t) {
        return Err(Error::Invariant(format!(
            "generator produced a non-{t}-intersecting family"
        )));
    }
    let shifted = shift_closure(&raw);
    if !is_t_intersecting(&shifted, t) || !is_shifted(&shifted) {
        return Err(Error::Invariant("shift closure broke the family".into()));
    }
    Ok(shifted)
}

/// `count` shifted t-intersecting families for seeds `first_seed..`,
/// profiles cycling with the seed. Generated in parallel, returned in seed order.
pub fn shifted_corpus(n: usize, k: usize, t: usize, first_seed: u64, count: usize) -> Result<Vec<Family>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = first_seed + i;
            random_shifted_t_intersecting(n, k, t, seed, Profile::for_seed(seed))
        })
        .collect()
}

/// Every union of a nonempty set of `A_h(n, k, t)`: shifted and pseudo
/// t-intersecting, though not t-intersecting in general.
pub fn frankl_mixtures(n: usize, k: usize, t: usize) -> Result<Vec<Family>> {
    ensure_contract!(t <= k, "need t <= k");
    let parts: Vec<Family> = (0..=k - t)
        .map(|h| frankl_family(n, k, t, h))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for mask in 1u32..1 << parts.len() {
        let mut acc = Family::empty(k);
        for (h, part) in parts.iter().enumerate() {
            if mask & 1 << h != 0 {
                acc = acc.union(part)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Random nonempty subfamily of `base` for `seed`.
pub fn seeded_subfamily(base: &Family, seed: u64, tag: &str) -> Family {
    let mut rng = rng_for(seed, tag, &[base.len(), base.k()]);
    let density = rng.random_range(0.02..=1.0);
    random_subfamily(base, density, &mut rng)
}

/// Random t-intersecting subfamily of `A_0 ∪ A_1`: a random subfamily of
/// `A_1` grown greedily by members of `A_0` compatible with everything so far.
fn semistar_members(n: usize, k: usize, t: usize, rng: &mut impl Rng) -> Result<Vec<KSet>> {
    let a1 = frankl_family(n, k, t, 1)?;
    let density = rng.random_range(0.02..=1.0);
    let mut members = random_subfamily(&a1, density, rng).members().to_vec();
    let a0 = frankl_family(n, k, t, 0)?;
    let budget = rng.random_range(0..=a0.len());
    grow(&mut members, a0.members(), t, budget, rng);
    Ok(members)
}

/// Random t-intersecting `(t+1)`-semistar: a t-intersecting subfamily of
/// `A_0 ∪ A_1`, then either shift-closed (keeping `D = [t+1]`) or relabelled
/// by a random permutation of `[n]` (moving `D` elsewhere). The semistar and
/// intersection properties are checked on the result.
pub fn random_semistar(n: usize, k: usize, t: usize, seed: u64) -> Result<Family> {
    ensure_contract!(1 <= t && t < k && k <= n, "need 1 <= t < k <= n, got n={n} k={k} t={t}");
    let mut rng = rng_for(seed, "semistar", &[n, k, t]);
    let sub = Family::new(k, semistar_members(n, k, t, &mut rng)?)?;
    let out = if rng.random_bool(0.5) {
        shift_closure(&sub)
    } else {
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rng);
        sub.map(k, |m| m.elements().fold(KSet::EMPTY, |s, e| s.with(perm[e - 1])))?
    };
    if !is_t_intersecting(&out, t) || !is_semistar(&out, t) {
        return Err(Error::Invariant("semistar generator lost its defining property".into()));
    }
    Ok(out)
}

/// Shifted t-intersecting semistars centred on `[t+1]`.
pub fn random_centered_semistar(n: usize, k: usize, t: usize, seed: u64) -> Result<Family> {
    ensure_contract!(1 <= t && t < k && k <= n, "need 1 <= t < k <= n, got n={n} k={k} t={t}");
    let mut rng = rng_for(seed, "centered-semistar", &[n, k, t]);
    let sub = Family::new(k, semistar_members(n, k, t, &mut rng)?)?;
    Ok(shift_closure(&sub))
}
