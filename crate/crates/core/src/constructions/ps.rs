//! Piecewise syndetic prefixes.
//!
//! [`ps_generate`] turns a coloring `C` with positive values into a sequence
//! `x_0 < x_1 < ...` made of blocks `I_1 = {x_0}, I_2, I_3, ...` where
//! `|I_n| = n`, consecutive elements of `I_n` differ by `C(n)`, and
//! `min I_{n+1} - max I_n = n`. Inside a block the gaps are bounded by the
//! palette, so the set contains arbitrarily large bounded-gap pieces.
//!
//! [`decompose_ps`] writes a prefix `X` as `Y ∩ Z` with `Y` of bounded gaps
//! and `Z` a union of long intervals. [`extract_homogeneous_ps`] shows how a
//! bounded-gap run of indices selects a bounded-gap run of elements.

use serde::Serialize;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::gaps::gap_size;
use crate::set::FiniteSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsSequence {
    pub elements: FiniteSet,
    /// Block `I_n` is `elements[blocks[n-1].0 ..= blocks[n-1].1]`.
    pub blocks: Vec<(usize, usize)>,
}

impl PsSequence {
    /// The elements of block `I_n`, `n >= 1`.
    pub fn block(&self, n: usize) -> Option<&[u64]> {
        let &(a, b) = self.blocks.get(n.checked_sub(1)?)?;
        Some(&self.elements[a..=b])
    }

    /// The block number `n` with `x_j` in `I_n`.
    pub fn block_of(&self, j: usize) -> Option<usize> {
        if j >= self.elements.len() {
            return None;
        }
        Some(self.blocks.partition_point(|&(_, b)| b < j) + 1)
    }
}

/// Blocks `I_1, ..., I_{k_max}` driven by `C(2), ..., C(k_max)`.
pub fn ps_generate(c: &Coloring, k_max: usize) -> Result<PsSequence> {
    if k_max >= 2 && c.len() <= k_max {
        return Err(Error::InsufficientPrefix(format!(
            "{k_max} blocks need C(2..={k_max}) but the coloring has length {}",
            c.len()
        )));
    }
    if let Some(n) = (2..=k_max).find(|&n| c.values()[n] == 0) {
        return Err(Error::invalid(format!("C({n}) = 0; block gaps must be positive")));
    }
    let total = k_max * (k_max + 1) / 2;
    let mut elements = Vec::with_capacity(total);
    let mut blocks = Vec::with_capacity(k_max);
    let mut x = 0u64;
    for n in 1..=k_max {
        if n > 1 {
            // separation from the previous block
            x += (n - 1) as u64;
        }
        let gap = if n == 1 { 1 } else { c.values()[n] as u64 };
        let first = elements.len();
        for i in 0..n {
            if i > 0 {
                x += gap;
            }
            elements.push(x);
        }
        blocks.push((first, elements.len() - 1));
    }
    Ok(PsSequence {
        elements: FiniteSet::from_sorted_unchecked(elements),
        blocks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// `X` together with everything in `0..horizon` outside `Z`.
    pub y: FiniteSet,
    /// `(X + 0) ∪ ... ∪ (X + d - 1)`, cut at the horizon.
    pub z: FiniteSet,
    /// `X = Y ∩ Z` below `horizon - d`.
    pub identity_holds: bool,
    pub y_gap_size: u64,
    /// Longest run of consecutive integers in `Z`.
    pub z_longest_interval: usize,
}

/// Splits `X ⊆ 0..horizon` into a bounded-gap part `Y` and a thick part `Z`.
pub fn decompose_ps(x: &FiniteSet, d: u64, horizon: u64) -> Result<Decomposition> {
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    if x.max().is_some_and(|m| m >= horizon) {
        return Err(Error::invalid(format!("X is not contained in 0..{horizon}")));
    }
    let h = usize::try_from(horizon)
        .map_err(|_| Error::ResourceLimit(format!("horizon {horizon} does not fit in memory")))?;
    let mut in_x = vec![false; h];
    let mut in_z = vec![false; h];
    for &v in x.iter() {
        in_x[v as usize] = true;
        let end = v.saturating_add(d).min(horizon);
        for p in v..end {
            in_z[p as usize] = true;
        }
    }
    let z: Vec<u64> = (0..horizon).filter(|&p| in_z[p as usize]).collect();
    let y: Vec<u64> = (0..horizon)
        .filter(|&p| in_x[p as usize] || !in_z[p as usize])
        .collect();
    let limit = horizon.saturating_sub(d) as usize;
    let identity_holds =
        (0..limit).all(|p| in_x[p] == (in_z[p] && (in_x[p] || !in_z[p])));
    let mut longest = 0usize;
    let mut cur = 0usize;
    for &b in &in_z {
        cur = if b { cur + 1 } else { 0 };
        longest = longest.max(cur);
    }
    Ok(Decomposition {
        y_gap_size: gap_size(&y),
        y: FiniteSet::from_sorted_unchecked(y),
        z: FiniteSet::from_sorted_unchecked(z),
        identity_holds,
        z_longest_interval: longest,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extraction {
    /// `{x_j : j in Y}` within the generated prefix.
    pub z: FiniteSet,
    /// `n` elements of `Z` with gaps `<= e d`.
    pub subset: FiniteSet,
    /// The block the subset came from.
    pub block: usize,
    /// The run of `Y` (indices into the sequence) the subset was drawn from.
    pub index_run: FiniteSet,
    pub verified: bool,
}

/// Selects `n` elements of `{x_j : j in Y}` with gaps `<= e d`.
///
/// `Y` must contain a run of `k + 2n` indices with gaps `<= e`, where
/// `k = 1 + 2 + ... + (2ne - 1)`, and the blocks of `seq` must have gaps
/// `<= d`. The last `2n` indices of the run land in blocks `I_m` with
/// `m >= 2ne`, and span fewer than `m` indices, so they meet at most two
/// consecutive blocks: either the first `n` lie in one block or the last `n`
/// lie in the next.
pub fn extract_homogeneous_ps(
    d: u64,
    e: u64,
    y: &FiniteSet,
    seq: &PsSequence,
    n: usize,
) -> Result<Extraction> {
    if d == 0 || e == 0 || n == 0 {
        return Err(Error::invalid("d, e and n must be at least 1"));
    }
    let two_ne = (2 * n as u64)
        .checked_mul(e)
        .ok_or_else(|| Error::invalid("2ne overflows"))?;
    let k = (two_ne - 1) * two_ne / 2;
    let p = k as usize + 2 * n;
    let len = seq.elements.len() as u64;
    let idx: Vec<u64> = y.iter().copied().take_while(|&j| j < len).collect();
    let z = FiniteSet::from_sorted_unchecked(idx.iter().map(|&j| seq.elements[j as usize]).collect());

    let mut run_start = 0usize;
    let mut found = None;
    for i in 0..idx.len() {
        if i > 0 && idx[i] - idx[i - 1] > e {
            run_start = i;
        }
        if i + 1 - run_start >= p {
            found = Some(i + 1 - p);
            break;
        }
    }
    let Some(w) = found else {
        return Err(Error::InsufficientPrefix(format!(
            "no run of {p} indices with gaps <= {e} inside the first {len} indices"
        )));
    };
    let a = &idx[w + k as usize..w + p];
    let block_of = |j: u64| seq.block_of(j as usize).expect("index inside the prefix");
    let m = block_of(a[0]);
    let first: Vec<u64> = a[..n].to_vec();
    let last: Vec<u64> = a[n..].to_vec();
    let (chosen, block) = if first.iter().all(|&j| block_of(j) == m) {
        (first, m)
    } else {
        let m2 = block_of(last[0]);
        if !last.iter().all(|&j| block_of(j) == m2) {
            return Err(Error::Precondition(
                "selected indices meet more than two blocks".into(),
            ));
        }
        (last, m2)
    };
    let subset: Vec<u64> = chosen.iter().map(|&j| seq.elements[j as usize]).collect();
    let bound = e.saturating_mul(d);
    let verified = subset.windows(2).all(|w| w[1] - w[0] <= bound);
    Ok(Extraction {
        z,
        subset: FiniteSet::from_sorted_unchecked(subset),
        block,
        index_run: FiniteSet::from_sorted_unchecked(chosen),
        verified,
    })
}
