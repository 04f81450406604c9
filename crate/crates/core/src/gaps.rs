//! Gap analysis of finite sets: gap size, windows, bounded-gap runs and the
//! gap spectrum.
//!
//! A *window* of `H` is a run of consecutive elements of `H` in sorted order.
//! The largest subset of `H` with all gaps `<= d` is always attained by a
//! window, so every quantity here is computed by linear scans over gaps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Largest difference between consecutive elements; 1 when `|H| <= 1`.
pub fn gap_size(h: &[u64]) -> u64 {
    h.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(1)
}

/// Every window `H[j..=k]`, ordered by `(j, k)`.
pub fn windows(h: &[u64]) -> impl Iterator<Item = &[u64]> + '_ {
    (0..h.len()).flat_map(move |j| (j..h.len()).map(move |k| &h[j..=k]))
}

/// Distinct gap values of `h` in increasing order, always including 1 when
/// `h` is nonempty.
pub fn gap_thresholds(h: &[u64]) -> Vec<u64> {
    if h.is_empty() {
        return Vec::new();
    }
    let mut ds: Vec<u64> = h.windows(2).map(|w| w[1] - w[0]).collect();
    ds.push(1);
    ds.sort_unstable();
    ds.dedup();
    ds
}

/// Maximal runs of `h` whose internal gaps are all `<= d`, as `(start, end)`
/// index pairs (inclusive).
pub fn maximal_runs(h: &[u64], d: u64) -> impl Iterator<Item = (usize, usize)> + '_ {
    let mut start = 0usize;
    let n = h.len();
    (0..n).filter_map(move |i| {
        if i + 1 == n || h[i + 1] - h[i] > d {
            let run = (start, i);
            start = i + 1;
            Some(run)
        } else {
            None
        }
    })
}

/// Largest `k` such that some window of size `k` has gap size `<= d`.
pub fn max_run_size(h: &[u64], d: u64) -> Result<usize> {
    if d == 0 {
        return Err(Error::invalid("gap bound d must be at least 1"));
    }
    Ok(max_run_size_unchecked(h, d))
}

pub(crate) fn max_run_size_unchecked(h: &[u64], d: u64) -> usize {
    maximal_runs(h, d).map(|(a, b)| b - a + 1).max().unwrap_or(0)
}

/// Per-bound entry of a [`GapSpectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumEntry {
    /// Longest window with gap size `<= d`.
    pub at_most: usize,
    /// Longest window with gap size exactly `d` (0 if none).
    pub exactly: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GapSpectrum {
    pub entries: BTreeMap<u64, SpectrumEntry>,
}

impl GapSpectrum {
    pub fn get(&self, d: u64) -> Option<SpectrumEntry> {
        self.entries.get(&d).copied()
    }
}

/// Spectrum for every bound `1..=d_max`.
pub fn gap_spectrum(h: &[u64], d_max: u64) -> Result<GapSpectrum> {
    if d_max == 0 {
        return Err(Error::invalid("d_max must be at least 1"));
    }
    let mut entries = BTreeMap::new();
    for d in 1..=d_max {
        let mut at_most = 0;
        let mut exactly = 0;
        for (a, b) in maximal_runs(h, d) {
            let len = b - a + 1;
            at_most = at_most.max(len);
            // a window with gap size exactly d sits inside a maximal d-run,
            // and that run then has gap size exactly d as well
            if gap_size(&h[a..=b]) == d {
                exactly = exactly.max(len);
            }
        }
        entries.insert(d, SpectrumEntry { at_most, exactly });
    }
    Ok(GapSpectrum { entries })
}
