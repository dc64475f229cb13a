//! Ground sets, subsets as machine words, and uniform / non-uniform families.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{ensure_contract, Error, Result};

/// Largest ground set representable: one bit per element in a `u64`.
pub const MAX_GROUND: usize = 64;

/// The standing parameters `n > k > t >= j >= 1`.
///
/// Most operations take the individual counts they need; this type is for
/// callers (the CLI, the checkers) that carry a full parameter point around.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub j: usize,
}

impl Params {
    pub fn new(n: usize, k: usize, t: usize, j: usize) -> Result<Self> {
        ensure_contract!(
            n > k && k > t && t >= j && j >= 1,
            "expected n > k > t >= j >= 1, got n={n} k={k} t={t} j={j}"
        );
        check_ground(n)?;
        Ok(Params { n, k, t, j })
    }
}

pub(crate) fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::Capacity {
            what: "ground set size",
            value: n as u128,
            limit: MAX_GROUND as u128,
        });
    }
    Ok(())
}

/// A subset of `[64]`; element `i` is bit `i - 1`.
///
/// The derived ordering is the numeric order of the bit vector, which is the
/// iteration order of every [`Family`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct KSet(u64);

impl KSet {
    pub const EMPTY: KSet = KSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        KSet(bits)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > MAX_GROUND {
                return Err(Error::Capacity {
                    what: "element",
                    value: e as u128,
                    limit: MAX_GROUND as u128,
                });
            }
            bits |= 1 << (e - 1);
        }
        Ok(KSet(bits))
    }

    /// `[m] = {1, ..., m}`, saturating at the word width.
    pub const fn prefix(m: usize) -> Self {
        if m >= 64 {
            KSet(u64::MAX)
        } else {
            KSet((1u64 << m) - 1)
        }
    }

    /// `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return KSet::EMPTY;
        }
        KSet(KSet::prefix(hi).0 & !KSet::prefix(lo.saturating_sub(1)).0)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    pub fn with(self, e: usize) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&e));
        KSet(self.0 | 1 << (e - 1))
    }

    pub fn without(self, e: usize) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&e));
        KSet(self.0 & !(1 << (e - 1)))
    }

    pub const fn union(self, other: KSet) -> Self {
        KSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: KSet) -> Self {
        KSet(self.0 & other.0)
    }

    pub const fn difference(self, other: KSet) -> Self {
        KSet(self.0 & !other.0)
    }

    pub const fn intersection_size(self, other: KSet) -> usize {
        (self.0 & other.0).count_ones() as usize
    }

    pub const fn is_subset(self, other: KSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order: the `(a_1, ..., a_k)` view.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// `|self ∩ [m]|`.
    pub fn prefix_count(self, m: usize) -> usize {
        self.intersection_size(KSet::prefix(m))
    }

    /// All subsets of `self` of the given size, in numeric order.
    pub fn subsets_of_size(self, size: usize) -> impl Iterator<Item = KSet> {
        let elems: Vec<usize> = self.elements().collect();
        Combinations::new(elems.len(), size).map(move |idx| {
            KSet(idx.iter().fold(0u64, |acc, &i| acc | 1 << (elems[i] - 1)))
        })
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Space separated elements, the line format used by input files.
impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::LowerHex for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Lexicographic index combinations `0 <= i_1 < ... < i_r < n`.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, r: usize) -> Self {
        Combinations {
            n,
            idx: (0..r).collect(),
            done: r > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let r = self.idx.len();
        let mut i = r;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - r + i {
                self.idx[i] += 1;
                for q in i + 1..r {
                    self.idx[q] = self.idx[q - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// `a ≼ b` in the shifting partial order: `a_i <= b_i` for every `i`.
pub fn shifting_order_leq(a: KSet, b: KSet) -> Result<bool> {
    ensure_contract!(
        a.len() == b.len(),
        "shifting order compares sets of equal size, got {} and {}",
        a.len(),
        b.len()
    );
    Ok(a.elements().zip(b.elements()).all(|(x, y)| x <= y))
}

/// `|f ∩ [m]|`.
pub fn prefix_intersection_size(f: KSet, m: usize) -> usize {
    f.prefix_count(m)
}

/// Every `k`-subset of `[n]`, in numeric order.
pub fn enumerate_ksubsets(n: usize, k: usize) -> Result<Family> {
    check_ground(n)?;
    ensure_contract!(k <= n, "k = {k} exceeds n = {n}");
    let members = ksubsets_iter(n, k).collect();
    Ok(Family { k, members })
}

/// Gosper's hack over `[n]`; ascending numeric order.
pub(crate) fn ksubsets_iter(n: usize, k: usize) -> impl Iterator<Item = KSet> {
    let limit: u128 = 1u128 << n;
    let mut cur: u128 = if k > n { limit } else { (1u128 << k) - 1 };
    let mut emitted_empty = false;
    std::iter::from_fn(move || {
        if k == 0 {
            if emitted_empty {
                return None;
            }
            emitted_empty = true;
            return Some(KSet::EMPTY);
        }
        if cur >= limit {
            return None;
        }
        let out = KSet(cur as u64);
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        cur = (((r ^ cur) >> 2) / c) | r;
        Some(out)
    })
}

/// A deduplicated family of `k`-sets, sorted by bit-vector value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    k: usize,
    members: Vec<KSet>,
}

impl Family {
    pub fn empty(k: usize) -> Self {
        Family {
            k,
            members: Vec::new(),
        }
    }

    /// Builds a family, rejecting members of the wrong size. Duplicates are dropped.
    pub fn new<I: IntoIterator<Item = KSet>>(k: usize, members: I) -> Result<Self> {
        let mut members: Vec<KSet> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| m.len() != k) {
            return Err(Error::Domain(format!(
                "member {bad:?} has {} elements, family is {k}-uniform",
                bad.len()
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Family { k, members })
    }

    /// Infers `k` from the first member; `None` for an empty input.
    pub fn from_sets<I: IntoIterator<Item = KSet>>(members: I) -> Result<Option<Self>> {
        let members: Vec<KSet> = members.into_iter().collect();
        match members.first() {
            None => Ok(None),
            Some(first) => Family::new(first.len(), members).map(Some),
        }
    }

    /// Caller guarantees sizes; order and duplicates are normalized.
    pub(crate) fn from_vec_unchecked(k: usize, mut members: Vec<KSet>) -> Self {
        debug_assert!(members.iter().all(|m| m.len() == k));
        members.sort_unstable();
        members.dedup();
        Family { k, members }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KSet> {
        self.members.iter()
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn contains(&self, s: KSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Union of all members.
    pub fn support(&self) -> KSet {
        self.members
            .iter()
            .fold(KSet::EMPTY, |acc, &m| acc.union(m))
    }

    /// Intersection of all members; `None` for the empty family.
    pub fn common_intersection(&self) -> Option<KSet> {
        let mut it = self.members.iter();
        let first = *it.next()?;
        Some(it.fold(first, |acc, &m| acc.intersection(m)))
    }

    pub fn max_element(&self) -> Option<usize> {
        self.support().max_element()
    }

    pub fn filter(&self, mut keep: impl FnMut(KSet) -> bool) -> Family {
        Family {
            k: self.k,
            members: self.members.iter().copied().filter(|&m| keep(m)).collect(),
        }
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        ensure_contract!(
            self.k == other.k || other.is_empty() || self.is_empty(),
            "union of {}-uniform and {}-uniform families",
            self.k,
            other.k
        );
        let k = if self.is_empty() { other.k } else { self.k };
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        Ok(Family::from_vec_unchecked(k, members))
    }

    pub fn difference(&self, other: &Family) -> Family {
        self.filter(|m| !other.contains(m))
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Applies `map` to every member; the image must be uniform of size `k`.
    pub fn map(&self, k: usize, map: impl FnMut(KSet) -> KSet) -> Result<Family> {
        Family::new(k, self.members.iter().copied().map(map))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a KSet;
    type IntoIter = std::slice::Iter<'a, KSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// A deduplicated collection of sets of mixed sizes.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SetSystem {
    members: Vec<KSet>,
}

impl SetSystem {
    pub fn new<I: IntoIterator<Item = KSet>>(members: I) -> Self {
        let mut members: Vec<KSet> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        SetSystem { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KSet> {
        self.members.iter()
    }

    pub fn contains(&self, s: KSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Members of cardinality `size`.
    pub fn level(&self, size: usize) -> Family {
        Family::from_vec_unchecked(
            size,
            self.members.iter().copied().filter(|m| m.len() == size).collect(),
        )
    }

    /// All nonempty levels keyed by cardinality.
    pub fn levels(&self) -> BTreeMap<usize, Family> {
        let mut by_size: BTreeMap<usize, Vec<KSet>> = BTreeMap::new();
        for &m in &self.members {
            by_size.entry(m.len()).or_default().push(m);
        }
        by_size
            .into_iter()
            .map(|(size, v)| (size, Family::from_vec_unchecked(size, v)))
            .collect()
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

/// Shorthand used throughout the tests: `set(&[1, 2, 3])`.
pub fn set(elements: &[usize]) -> KSet {
    KSet::from_elements(elements.iter().copied()).expect("element out of range")
}

/// Shorthand for a family literal; panics on mixed sizes.
pub fn family(sets: &[&[usize]]) -> Family {
    let members: Vec<KSet> = sets.iter().map(|s| set(s)).collect();
    let k = members.first().map_or(0, |m| m.len());
    Family::new(k, members).expect("family literal must be uniform")
}

/// Reads the line format: one set per line, elements as ascending base-10
/// integers separated by spaces. Blank lines and lines starting with `#` are
/// skipped. All sets must have the same size; an empty input gives the empty
/// family with `k = 0`.
pub fn parse_family(text: &str) -> Result<Family> {
    let mut members = Vec::new();
    let mut k: Option<(usize, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line, message };
        let mut elems = Vec::new();
        for tok in body.split_whitespace() {
            let e: usize = tok
                .parse()
                .map_err(|_| parse_err(format!("`{tok}` is not a positive integer")))?;
            if e == 0 || e > MAX_GROUND {
                return Err(parse_err(format!("element {e} outside 1..={MAX_GROUND}")));
            }
            if elems.last().is_some_and(|&p| p >= e) {
                return Err(parse_err("elements must be strictly ascending".into()));
            }
            elems.push(e);
        }
        match k {
            None => k = Some((elems.len(), line)),
            Some((size, first)) if size != elems.len() => {
                return Err(parse_err(format!(
                    "set of size {} but line {first} has size {size}",
                    elems.len()
                )))
            }
            _ => {}
        }
        members.push(KSet::from_elements(elems)?);
    }
    Family::new(k.map_or(0, |(size, _)| size), members)
}

/// Inverse of [`parse_family`]: one set per line.
pub fn format_family(f: &Family) -> String {
    f.iter().map(|m| format!("{m}\n")).collect()
}
