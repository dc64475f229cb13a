//! Exhaustive oracles on tiny ground sets.
//!
//! t-intersecting families of `k`-subsets of `[n]` are exactly the cliques of
//! the compatibility graph (vertices: `k`-sets, edges: pairs meeting in at
//! least `t` elements). Vertices are numbered in bit-vector order, so the
//! depth-first search visits families in lexicographic order of their member
//! lists.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::sets::{enumerate_ksubsets, Family, KSet};
use crate::shadow::deletion_shadow_size;

/// Largest vertex count for which every clique is enumerated.
pub const ENUMERATION_LIMIT: u128 = 20;
/// Largest vertex count for maximal-clique search (one machine word per row).
pub const MAXIMAL_CLIQUE_LIMIT: u128 = 64;

fn check_vertices(n: usize, k: usize, limit: u128) -> Result<()> {
    crate::sets::check_ground(n)?;
    if k > n {
        return Err(Error::Contract(format!("k = {k} exceeds n = {n}")));
    }
    let count: u128 = binomial(n as u64, k as i64)
        .try_into()
        .unwrap_or(u128::MAX);
    if count > limit {
        return Err(Error::Capacity {
            what: "C(n, k) vertices",
            value: count,
            limit,
        });
    }
    Ok(())
}

/// The compatibility graph on `C([n], k)` for threshold `t`.
#[derive(Debug, Clone)]
pub struct CompatibilityGraph {
    pub vertices: Vec<KSet>,
    /// `adjacency[v]` has bit `u` set iff `u != v` and the two sets meet in `>= t`.
    pub adjacency: Vec<u64>,
}

impl CompatibilityGraph {
    pub fn new(n: usize, k: usize, t: usize) -> Result<Self> {
        check_vertices(n, k, MAXIMAL_CLIQUE_LIMIT)?;
        let vertices = enumerate_ksubsets(n, k)?.members().to_vec();
        let adjacency = vertices
            .iter()
            .enumerate()
            .map(|(v, &a)| {
                vertices.iter().enumerate().fold(0u64, |acc, (u, &b)| {
                    if u != v && a.intersection_size(b) >= t {
                        acc | 1 << u
                    } else {
                        acc
                    }
                })
            })
            .collect();
        Ok(CompatibilityGraph { vertices, adjacency })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Members of the vertex set `mask`, in order.
    pub fn members(&self, mask: u64) -> Vec<KSet> {
        bits(mask).map(|v| self.vertices[v]).collect()
    }

    /// Members of `mask` as a family of `k`-sets.
    pub fn family(&self, k: usize, mask: u64) -> Family {
        Family::from_vec_unchecked(k, self.members(mask))
    }

    fn dfs(&self, clique: &mut Vec<KSet>, candidates: u64, visit: &mut impl FnMut(&[KSet])) {
        visit(clique);
        for v in bits(candidates) {
            clique.push(self.vertices[v]);
            self.dfs(clique, candidates & self.adjacency[v] & above(v), visit);
            clique.pop();
        }
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

/// Vertices with index greater than `v`.
fn above(v: usize) -> u64 {
    if v >= 63 {
        0
    } else {
        !0u64 << (v + 1)
    }
}

fn all_vertices(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn enumeration_graph(n: usize, k: usize, t: usize) -> Result<CompatibilityGraph> {
    check_vertices(n, k, ENUMERATION_LIMIT)?;
    CompatibilityGraph::new(n, k, t)
}

/// Calls `visit` once for every t-intersecting subfamily of `C([n], k)`,
/// the empty family first, in lexicographic order of member lists.
/// Returns the number of families visited.
pub fn enumerate_t_intersecting(
    n: usize,
    k: usize,
    t: usize,
    mut visit: impl FnMut(&[KSet]),
) -> Result<u64> {
    let g = enumeration_graph(n, k, t)?;
    let mut count = 0u64;
    let mut clique = Vec::with_capacity(g.len());
    g.dfs(&mut clique, all_vertices(g.len()), &mut |members| {
        count += 1;
        visit(members)
    });
    Ok(count)
}

/// Parallel fold over every nonempty t-intersecting subfamily. Subtrees are
/// split by smallest member and merged left to right, so the result does not
/// depend on scheduling as long as `merge` is associative.
pub fn fold_t_intersecting<T, I, F, M>(
    n: usize,
    k: usize,
    t: usize,
    init: I,
    fold: F,
    merge: M,
) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[KSet]) + Sync,
    M: Fn(T, T) -> T,
{
    let g = enumeration_graph(n, k, t)?;
    let parts: Vec<T> = (0..g.len())
        .into_par_iter()
        .map(|v| {
            let mut acc = init();
            let mut clique = vec![g.vertices[v]];
            g.dfs(
                &mut clique,
                g.adjacency[v] & above(v),
                &mut |members| fold(&mut acc, members),
            );
            acc
        })
        .collect();
    Ok(parts.into_iter().fold(init(), merge))
}

/// Minimum `|∂^j F|` per size over all nonempty t-intersecting `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinShadowTable {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub j: usize,
    /// size -> (minimum shadow, lexicographically first family attaining it)
    pub rows: BTreeMap<usize, MinShadowRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinShadowRow {
    pub min_shadow: usize,
    pub witness: Family,
}

pub const MIN_SHADOW_CSV_HEADER: &str = "size,min_shadow,witness";

type Rows = BTreeMap<usize, (usize, Vec<KSet>)>;

fn offer(rows: &mut Rows, size: usize, shadow: usize, members: &[KSet]) {
    match rows.get_mut(&size) {
        Some(best) if (best.0, best.1.as_slice()) <= (shadow, members) => {}
        Some(best) => *best = (shadow, members.to_vec()),
        None => {
            rows.insert(size, (shadow, members.to_vec()));
        }
    }
}

/// Exhaustive per-size minima of `|∂^j F|`; `j = 0` is allowed and gives sizes.
pub fn min_shadow_table(n: usize, k: usize, t: usize, j: usize) -> Result<MinShadowTable> {
    if j > k {
        return Err(Error::Contract(format!("cannot delete {j} elements from {k}-sets")));
    }
    let rows = fold_t_intersecting(
        n,
        k,
        t,
        Rows::new,
        |rows, members| offer(rows, members.len(), deletion_shadow_size(members, k, j), members),
        |mut a, b| {
            for (size, (shadow, members)) in b {
                offer(&mut a, size, shadow, &members);
            }
            a
        },
    )?;
    Ok(MinShadowTable {
        n,
        k,
        t,
        j,
        rows: rows
            .into_iter()
            .map(|(size, (min_shadow, members))| {
                (
                    size,
                    MinShadowRow {
                        min_shadow,
                        witness: Family::from_vec_unchecked(k, members),
                    },
                )
            })
            .collect(),
    })
}

impl MinShadowTable {
    /// CSV with header `size,min_shadow,witness`; witnesses are space
    /// separated hex bit vectors in family order.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(MIN_SHADOW_CSV_HEADER);
        out.push('\n');
        for (size, row) in &self.rows {
            let witness: Vec<String> = row.witness.iter().map(|m| format!("{m:#x}")).collect();
            let _ = writeln!(out, "{size},{},{}", row.min_shadow, witness.join(" "));
        }
        out
    }

    /// Parses [`MinShadowTable::to_csv`] output for the given parameters.
    pub fn from_csv(n: usize, k: usize, t: usize, j: usize, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim() == MIN_SHADOW_CSV_HEADER => {}
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("expected header `{MIN_SHADOW_CSV_HEADER}`"),
                })
            }
        }
        let mut rows = BTreeMap::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split(',').collect();
            let [size, shadow, witness] = fields[..] else {
                return Err(bad(format!("expected 3 fields, found {}", fields.len())));
            };
            let size: usize = size.parse().map_err(|e| bad(format!("size: {e}")))?;
            let min_shadow: usize = shadow.parse().map_err(|e| bad(format!("min_shadow: {e}")))?;
            let members = witness
                .split_whitespace()
                .map(|h| {
                    u64::from_str_radix(h.trim_start_matches("0x"), 16)
                        .map(KSet::from_bits)
                        .map_err(|e| bad(format!("witness `{h}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let witness = Family::new(k, members).map_err(|e| bad(e.to_string()))?;
            rows.insert(size, MinShadowRow { min_shadow, witness });
        }
        Ok(MinShadowTable { n, k, t, j, rows })
    }
}

/// Bron–Kerbosch with pivoting over word-sized vertex sets; calls `visit`
/// with every maximal clique.
pub fn maximal_cliques(adjacency: &[u64], mut visit: impl FnMut(u64)) {
    fn go(adj: &[u64], r: u64, mut p: u64, mut x: u64, visit: &mut impl FnMut(u64)) {
        if p == 0 && x == 0 {
            visit(r);
            return;
        }
        let pivot = bits(p | x)
            .max_by_key(|&u| (p & adj[u]).count_ones())
            .expect("p | x is nonempty");
        for v in bits(p & !adj[pivot]) {
            go(adj, r | 1 << v, p & adj[v], x & adj[v], visit);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    assert!(adjacency.len() <= 64);
    go(adjacency, 0, all_vertices(adjacency.len()), 0, &mut visit);
}

/// Every maximal t-intersecting subfamily of `C([n], k)`, in ascending
/// order of member lists.
pub fn maximal_t_intersecting(n: usize, k: usize, t: usize) -> Result<Vec<Family>> {
    let g = CompatibilityGraph::new(n, k, t)?;
    let mut out = Vec::new();
    maximal_cliques(&g.adjacency, |mask| out.push(g.members(mask)));
    out.sort();
    Ok(out
        .into_iter()
        .map(|m| Family::from_vec_unchecked(k, m))
        .collect())
}

/// Largest t-intersecting subfamily (first in member-list order among ties).
pub fn max_t_intersecting(n: usize, k: usize, t: usize) -> Result<Family> {
    largest(maximal_t_intersecting(n, k, t)?.into_iter())
        .ok_or_else(|| Error::Domain("no k-sets".into()))
}

/// Largest t-intersecting subfamily that is not a t-star, if any exists.
pub fn max_non_star(n: usize, k: usize, t: usize) -> Result<Option<Family>> {
    Ok(largest(
        maximal_t_intersecting(n, k, t)?
            .into_iter()
            .filter(|f| !crate::structure::is_t_star(f, t)),
    ))
}

fn largest(families: impl Iterator<Item = Family>) -> Option<Family> {
    families.fold(None, |best: Option<Family>, f| match best {
        Some(b) if b.len() >= f.len() => Some(b),
        _ => Some(f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{frankl_family, hm_family};
    use crate::sets::family;
    use crate::structure::is_t_intersecting;

    /// Clique count from the adjacency matrix by checking every vertex subset.
    fn brute_clique_count(n: usize, k: usize, t: usize) -> u64 {
        let layer = enumerate_ksubsets(n, k).unwrap();
        let v = layer.members();
        let mut count = 0;
        for mask in 0u64..1 << v.len() {
            let chosen: Vec<KSet> = bits(mask).map(|i| v[i]).collect();
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(i, a)| chosen[i + 1..].iter().all(|b| a.intersection_size(*b) >= t));
            count += ok as u64;
        }
        count
    }

    #[test]
    fn enumeration_counts() {
        let mut sizes = BTreeMap::new();
        let count = enumerate_t_intersecting(4, 2, 1, |m| *sizes.entry(m.len()).or_insert(0) += 1).unwrap();
        assert_eq!(count, 27);
        assert_eq!(sizes, BTreeMap::from([(0, 1), (1, 6), (2, 12), (3, 8)]));
        for (n, k, t) in [(4, 2, 1), (5, 2, 1), (5, 3, 2), (6, 2, 1), (5, 3, 1), (6, 3, 2)] {
            let count = enumerate_t_intersecting(n, k, t, |_| {}).unwrap();
            if n <= 5 || k == 2 {
                assert_eq!(count, brute_clique_count(n, k, t), "({n},{k},{t})");
            }
        }
    }

    #[test]
    fn enumeration_visits_each_family_once() {
        let mut seen = Vec::new();
        enumerate_t_intersecting(5, 2, 1, |m| seen.push(m.to_vec())).unwrap();
        let mut sorted = seen.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), seen.len());
        assert_eq!(sorted, seen);
        for m in &seen {
            assert!(is_t_intersecting(&Family::from_vec_unchecked(2, m.clone()), 1));
        }
    }

    #[test]
    fn enumeration_when_t_equals_k() {
        // Only the empty family and singletons.
        assert_eq!(enumerate_t_intersecting(5, 2, 2, |_| {}).unwrap(), 1 + 10);
    }

    #[test]
    fn capacity_errors() {
        assert!(matches!(
            enumerate_t_intersecting(7, 3, 1, |_| {}),
            Err(Error::Capacity { value: 35, .. })
        ));
        assert!(matches!(CompatibilityGraph::new(9, 4, 1), Err(Error::Capacity { .. })));
    }

    #[test]
    fn fold_matches_sequential() {
        let seq = {
            let mut c = 0u64;
            enumerate_t_intersecting(6, 3, 2, |_| c += 1).unwrap();
            c
        };
        let par = fold_t_intersecting(6, 3, 2, || 0u64, |c, _| *c += 1, |a, b| a + b).unwrap();
        assert_eq!(par + 1, seq);
    }

    #[test]
    fn min_shadow_examples() {
        let table = min_shadow_table(4, 2, 1, 1).unwrap();
        let mins: Vec<(usize, usize)> = table.rows.iter().map(|(&s, r)| (s, r.min_shadow)).collect();
        assert_eq!(mins, vec![(1, 2), (2, 3), (3, 3)]);
        assert_eq!(table.rows[&3].witness, family(&[&[1, 2], &[1, 3], &[2, 3]]));
        for (&size, row) in &table.rows {
            assert_eq!(row.witness.len(), size);
            assert!(is_t_intersecting(&row.witness, 1));
            assert_eq!(crate::shadow::shadow_j(&row.witness, 1).unwrap().len(), row.min_shadow);
        }
    }

    #[test]
    fn min_shadow_full_layer_row() {
        // size C(2k-t, k) has minimum C(2k-t, k-j), attained by C(Y, k)
        for (n, k, t, j) in [(5, 2, 1, 1), (5, 3, 2, 1), (6, 3, 2, 2), (5, 3, 1, 1)] {
            let table = min_shadow_table(n, k, t, j).unwrap();
            let y = 2 * k - t;
            let size = usize::try_from(binomial(y as u64, k as i64)).unwrap();
            let row = &table.rows[&size];
            assert_eq!(row.min_shadow, usize::try_from(binomial(y as u64, (k - j) as i64)).unwrap());
            assert_eq!(row.witness, enumerate_ksubsets(y, k).unwrap());
            assert!(!table.rows.contains_key(&0));
        }
    }

    #[test]
    fn csv_roundtrip() {
        let table = min_shadow_table(4, 2, 1, 1).unwrap();
        let csv = table.to_csv();
        assert_eq!(csv, "size,min_shadow,witness\n1,2,0x3\n2,3,0x3 0x5\n3,3,0x3 0x5 0x6\n");
        assert_eq!(MinShadowTable::from_csv(4, 2, 1, 1, &csv).unwrap(), table);
        assert!(matches!(
            MinShadowTable::from_csv(4, 2, 1, 1, "size,min_shadow,witness\n1,2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn maximal_cliques_examples() {
        // (4,2,1): four stars and four triangles
        let maximal = maximal_t_intersecting(4, 2, 1).unwrap();
        assert_eq!(maximal.len(), 8);
        assert!(maximal.iter().all(|f| f.len() == 3));
        let stars = maximal.iter().filter(|f| crate::structure::is_t_star(f, 1)).count();
        assert_eq!(stars, 4);
    }

    #[test]
    fn maximal_cliques_match_enumeration() {
        for (n, k, t) in [(5, 2, 1), (5, 3, 2), (6, 3, 2), (6, 2, 1)] {
            let g = CompatibilityGraph::new(n, k, t).unwrap();
            let mut brute = Vec::new();
            enumerate_t_intersecting(n, k, t, |m| {
                let mask = m.iter().fold(0u64, |acc, s| {
                    acc | 1 << g.vertices.iter().position(|v| v == s).unwrap()
                });
                let extendable = (0..g.len()).any(|v| mask & 1 << v == 0 && g.adjacency[v] & mask == mask);
                if !extendable {
                    brute.push(m.to_vec());
                }
            })
            .unwrap();
            let fast: Vec<Vec<KSet>> = maximal_t_intersecting(n, k, t)
                .unwrap()
                .into_iter()
                .map(|f| f.members().to_vec())
                .collect();
            assert_eq!(fast, brute, "({n},{k},{t})");
        }
    }

    #[test]
    fn non_star_maximum() {
        let best = max_non_star(6, 3, 1).unwrap().unwrap();
        assert_eq!(best.len(), 10);
        assert_eq!(frankl_family(6, 3, 1, 1).unwrap().len(), 10);
        assert_eq!(hm_family(6, 3, 1).unwrap().len(), 10);
        assert_eq!(max_t_intersecting(6, 3, 1).unwrap().len(), 10);
    }
}
