//! Parameter scans over the two-part family that beats the sharpened ratio
//! once the size condition is dropped.

use std::ops::RangeInclusive;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bounds::{excess_fraction, sharpened_ratio, sharpened_threshold};
use crate::canonical::example15;
use crate::error::{Error, Result};
use crate::exact::{binom, ExactRatio};
use crate::sets::Family;
use crate::shadow::shadow_j;
use crate::structure::is_t_intersecting;

use super::{CheckParams, TheoremId, TheoremReport, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub s: usize,
    pub n: usize,
    pub size: usize,
    pub shadow: usize,
    /// `shadow / size`.
    pub ratio: ExactRatio,
    /// The sharpened ratio the family is compared against.
    pub bound: ExactRatio,
    /// `size / C(2k-t, k) - 1`.
    pub excess: ExactRatio,
    /// Leading-order prediction of `excess`.
    pub predicted_excess: ExactRatio,
    pub t_intersecting: bool,
    /// `size >= ` the size threshold of the sharpened ratio.
    pub above_threshold: bool,
    /// t-intersecting, larger than `C(2k-t, k)`, and below the sharpened ratio.
    pub beats_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub k: usize,
    pub t: usize,
    pub j: usize,
    pub layer: BigUint,
    pub rows: Vec<ScanRow>,
    /// Parameter points that violate the construction's constraints.
    pub skipped: Vec<String>,
}

impl ScanReport {
    /// First row (in `(s, n)` order) that beats the bound.
    pub fn first_beat(&self) -> Option<&ScanRow> {
        self.rows.iter().find(|r| r.beats_bound)
    }

    /// Rows with fixed `s`, in increasing `n`.
    pub fn series(&self, s: usize) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(move |r| r.s == s)
    }
}

fn row(k: usize, t: usize, j: usize, s: usize, n: usize, f: &Family) -> Result<ScanRow> {
    let layer = ExactRatio::from(binom((2 * k - t) as i64, k as i64));
    let size = f.len();
    let shadow = shadow_j(f, j)?.len();
    let ratio = ExactRatio::of(shadow as u64, size as u64);
    let bound = sharpened_ratio(k, t, j)?;
    let size_r = ExactRatio::from(size as u64);
    let excess = &(&size_r / &layer) - &ExactRatio::one();
    let t_intersecting = is_t_intersecting(f, t);
    let above_threshold = size_r >= sharpened_threshold(k, t, j)?;
    let beats_bound = t_intersecting && size_r > layer && ratio < bound;
    Ok(ScanRow {
        s,
        n,
        size,
        shadow,
        ratio,
        bound,
        excess,
        predicted_excess: excess_fraction(k, t, j, s)?,
        t_intersecting,
        above_threshold,
        beats_bound,
    })
}

/// Builds the two-part family at every `(s, n)` in range and compares its
/// exact shadow ratio with the sharpened ratio. Points outside the
/// construction's constraints are skipped with a note.
pub fn scan_example15(
    k: usize,
    t: usize,
    j: usize,
    s_range: RangeInclusive<usize>,
    n_range: RangeInclusive<usize>,
) -> Result<ScanReport> {
    sharpened_ratio(k, t, j)?;
    let points: Vec<(usize, usize)> = s_range
        .flat_map(|s| n_range.clone().map(move |n| (s, n)))
        .collect();
    let built: Vec<Result<std::result::Result<ScanRow, String>>> = points
        .par_iter()
        .map(|&(s, n)| match example15(n, k, t, s) {
            Ok(f) => row(k, t, j, s, n, &f).map(Ok),
            Err(e @ (Error::Contract(_) | Error::Capacity { .. })) => Ok(Err(format!("s={s} n={n}: {e}"))),
            Err(e) => Err(e),
        })
        .collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for b in built {
        match b? {
            Ok(r) => rows.push(r),
            Err(note) => skipped.push(note),
        }
    }
    Ok(ScanReport {
        k,
        t,
        j,
        layer: binom((2 * k - t) as i64, k as i64),
        rows,
        skipped,
    })
}

/// Default scan: every admissible `s`, and `n` from `2k-t+1` to `5k`.
pub(super) fn size_condition_report(p: &CheckParams) -> Result<TheoremReport> {
    let (k, t) = (p.k, p.t);
    let j = p.j.unwrap_or(1);
    let s_range = p.s_range.unwrap_or((0, (k - t).saturating_sub(2)));
    let n_range = p.n_range.unwrap_or((2 * k - t + 1, 5 * k));
    let scan = scan_example15(k, t, j, s_range.0..=s_range.1, n_range.0..=n_range.1)?;
    let mut report = TheoremReport::new(TheoremId::SizeConditionNeeded, p);
    report.checked = scan.rows.len() as u64;
    report.vacuous = scan.skipped.len() as u64;
    match scan.first_beat() {
        Some(r) => {
            let f = example15(r.n, k, t, r.s)?;
            report.detail = Some(format!(
                "s={} n={}: |F| = {} > {} but ratio {} < {}",
                r.s, r.n, r.size, scan.layer, r.ratio, r.bound
            ));
            report.witness = Some(f);
            report.tight = scan.rows.iter().filter(|r| r.beats_bound).count() as u64;
        }
        None => {
            report.verdict = Verdict::Inconclusive;
            report.detail = Some("no scanned point beats the sharpened ratio".into());
        }
    }
    report.notes.extend(scan.skipped);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_exact_and_intersecting() {
        let scan = scan_example15(6, 3, 1, 0..=0, 10..=12).unwrap();
        assert_eq!(scan.rows.len(), 3);
        for r in &scan.rows {
            assert!(r.t_intersecting);
            assert_eq!(r.ratio, ExactRatio::of(r.shadow as u64, r.size as u64));
            assert_eq!(r.bound, sharpened_ratio(6, 3, 1).unwrap());
        }
        assert!(scan.skipped.is_empty());
    }

    #[test]
    fn invalid_points_are_skipped() {
        // s + 1 < k - t fails for s = 2 at (k, t) = (6, 3); n = 9 is not above 2k - t.
        let scan = scan_example15(6, 3, 1, 1..=2, 9..=10).unwrap();
        assert_eq!(scan.rows.len(), 1);
        assert_eq!(scan.skipped.len(), 3);
    }

    #[test]
    fn size_rises_with_n() {
        let scan = scan_example15(6, 3, 1, 1..=1, 10..=14).unwrap();
        let sizes: Vec<usize> = scan.series(1).map(|r| r.size).collect();
        assert!(sizes.windows(2).all(|w| w[0] < w[1]));
    }
}
