//! The `(i, j)`-shift and shift closure.
//!
//! `S_{i,j}` replaces `F` by `(F \ {j}) ∪ {i}` whenever `j ∈ F`, `i ∉ F` and the
//! replacement is not already a member. Shift closure applies these in a fixed
//! sweep order so its output is reproducible.

use std::collections::HashSet;
use std::hash::{BuildHasherDefault, Hasher};

use crate::error::{ensure_contract, Result};
use crate::sets::{Family, KSet, MAX_GROUND};

/// Multiplicative hashing for `u64` keys.
#[derive(Default)]
pub(crate) struct WordHasher(u64);

impl Hasher for WordHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(8) ^ b as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        }
    }

    fn write_u64(&mut self, v: u64) {
        self.0 = (v ^ (v >> 29)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        self.0 ^= self.0 >> 32;
    }
}

pub(crate) type WordSet = HashSet<KSet, BuildHasherDefault<WordHasher>>;

/// True iff `f` is downward closed in the shifting order.
///
/// Checks only immediate predecessors (decrement one element into a gap);
/// the full down-set follows by transitivity.
pub fn is_shifted(f: &Family) -> bool {
    f.iter().all(|&m| {
        m.elements()
            .filter(|&a| a > 1 && !m.contains(a - 1))
            .all(|a| f.contains(m.without(a).with(a - 1)))
    })
}

fn shift_in_place(members: &mut WordSet, i: usize, j: usize) -> usize {
    let moved: Vec<(KSet, KSet)> = members
        .iter()
        .filter(|m| m.contains(j) && !m.contains(i))
        .map(|&m| (m, m.without(j).with(i)))
        .filter(|(_, image)| !members.contains(image))
        .collect();
    for &(from, to) in &moved {
        members.remove(&from);
        members.insert(to);
    }
    moved.len()
}

/// `S_{i,j}(f)` for `1 <= i < j`.
pub fn shift_ij(f: &Family, i: usize, j: usize) -> Result<Family> {
    ensure_contract!(
        i >= 1 && i < j && j <= MAX_GROUND,
        "shift needs 1 <= i < j <= {MAX_GROUND}, got i={i} j={j}"
    );
    let mut members: WordSet = f.iter().copied().collect();
    shift_in_place(&mut members, i, j);
    Ok(Family::from_vec_unchecked(f.k(), members.into_iter().collect()))
}

fn potential(members: &WordSet) -> u64 {
    members
        .iter()
        .map(|m| m.elements().map(|e| e as u64).sum::<u64>())
        .sum()
}

/// Repeatedly shifts `f` until it is shifted.
///
/// Sweeps `(i, j)` lexicographically with `i < j <= max element`, restarting
/// from `(1, 2)` after any pair changes the family, and stops after a sweep
/// with no change.
pub fn shift_closure(f: &Family) -> Family {
    let top = f.max_element().unwrap_or(0);
    let mut members: WordSet = f.iter().copied().collect();
    let mut energy = potential(&members);
    'sweep: loop {
        for i in 1..top {
            for j in i + 1..=top {
                let moved = shift_in_place(&mut members, i, j);
                if moved > 0 {
                    let next = potential(&members);
                    assert!(
                        next + (moved * (j - i)) as u64 == energy,
                        "shift potential must drop by exactly (j - i) per moved set"
                    );
                    energy = next;
                    continue 'sweep;
                }
            }
        }
        break;
    }
    let out = Family::from_vec_unchecked(f.k(), members.into_iter().collect());
    debug_assert!(is_shifted(&out));
    out
}
