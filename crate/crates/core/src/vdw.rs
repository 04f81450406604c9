//! Arithmetic progressions in finite sets and colorings.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::set::FiniteSet;

/// `start, start + diff, ..., start + (len - 1) * diff`. A singleton has
/// `diff = 0`; the empty progression has `len = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ap {
    pub start: u64,
    pub diff: u64,
    pub len: usize,
}

impl Ap {
    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len as u64).map(move |i| self.start + i * self.diff)
    }

    pub fn to_set(&self) -> FiniteSet {
        FiniteSet::from_sorted_unchecked(self.elements().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorAp {
    pub color: u32,
    pub ap: Ap,
}

/// Longest progression of each color class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApReport {
    pub classes: Vec<ColorAp>,
}

const PARALLEL_THRESHOLD: usize = 1 << 12;

/// Longest arithmetic progression inside `h`. Ties go to the least
/// `(start, diff)`.
///
/// Quadratic in `|h|` (every pair seeds a progression, extended by hash
/// lookups); pairs that continue an earlier progression are skipped.
pub fn longest_ap(h: &[u64]) -> Ap {
    match h.len() {
        0 => return Ap { start: 0, diff: 0, len: 0 },
        1 => return Ap { start: h[0], diff: 0, len: 1 },
        _ => {}
    }
    let members: HashSet<u64> = h.iter().copied().collect();
    let mut best = Ap { start: h[0], diff: h[1] - h[0], len: 2 };
    let max = *h.last().unwrap();
    for (i, &a) in h.iter().enumerate() {
        for &b in &h[i + 1..] {
            let d = b - a;
            // every later length is bounded by the span left
            if (max - a) / d + 1 <= best.len as u64 {
                break;
            }
            if a >= d && members.contains(&(a - d)) {
                continue;
            }
            let mut len = 2usize;
            let mut next = b + d;
            while members.contains(&next) {
                len += 1;
                next += d;
            }
            if len > best.len {
                best = Ap { start: a, diff: d, len };
            }
        }
    }
    best
}

/// Longest progression per color.
pub fn ap_report(coloring: &Coloring) -> ApReport {
    let classes = coloring.color_classes();
    let work = |(i, h): (usize, &FiniteSet)| ColorAp {
        color: i as u32,
        ap: longest_ap(h),
    };
    let classes = if coloring.len() >= PARALLEL_THRESHOLD {
        classes.par_iter().enumerate().map(work).collect()
    } else {
        classes.iter().enumerate().map(work).collect()
    };
    ApReport { classes }
}

/// A monochromatic `l`-term progression, least by `(start, diff)`, if any.
pub fn ap_partition_check(coloring: &Coloring, l: usize) -> Result<Option<ColorAp>> {
    if l == 0 {
        return Err(Error::invalid("progression length must be at least 1"));
    }
    let v = coloring.values();
    let n = v.len();
    if l == 1 {
        return Ok(v.first().map(|&c| ColorAp {
            color: c,
            ap: Ap { start: 0, diff: 0, len: 1 },
        }));
    }
    let steps = (l - 1) as u64;
    for start in 0..n {
        let c = v[start];
        let mut d = 1u64;
        while start as u64 + steps * d < n as u64 {
            if (1..=steps).all(|k| v[start + (k * d) as usize] == c) {
                return Ok(Some(ColorAp {
                    color: c,
                    ap: Ap { start: start as u64, diff: d, len: l },
                }));
            }
            d += 1;
        }
    }
    Ok(None)
}

/// The common difference of `x` if it is an arithmetic progression
/// (0 for fewer than two elements).
fn ap_difference(x: &[u64]) -> Option<u64> {
    if x.len() < 2 {
        return Some(0);
    }
    let d = x[1] - x[0];
    x.windows(2).all(|w| w[1] - w[0] == d).then_some(d)
}

/// `{x[m] : m in inner}` for a progression `x` and a progression of indices
/// `inner`; the result is a progression with difference `diff(x) * diff(inner)`.
pub fn ap_transfer(x: &FiniteSet, inner: &FiniteSet) -> Result<FiniteSet> {
    if ap_difference(x).is_none() {
        return Err(Error::invalid("host set is not an arithmetic progression"));
    }
    if ap_difference(inner).is_none() {
        return Err(Error::invalid("index set is not an arithmetic progression"));
    }
    let out = inner
        .iter()
        .map(|&m| {
            usize::try_from(m)
                .ok()
                .and_then(|m| x.get(m).copied())
                .ok_or_else(|| {
                    Error::invalid(format!("index {m} is out of range for {} elements", x.len()))
                })
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(FiniteSet::from_sorted_unchecked(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn longest_ap_examples() {
        assert_eq!(longest_ap(&[]).len, 0);
        assert_eq!(longest_ap(&[0, 1, 2, 3]), Ap { start: 0, diff: 1, len: 4 });
        assert_eq!(longest_ap(&[0, 2, 4, 7]), Ap { start: 0, diff: 2, len: 3 });
        assert_eq!(longest_ap(&[9]), Ap { start: 9, diff: 0, len: 1 });
        assert_eq!(longest_ap(&[3, 10]), Ap { start: 3, diff: 7, len: 2 });
    }

    #[test]
    fn partition_check_examples() {
        let c = Coloring::from_digits(2, "01010101").unwrap();
        let w = ap_partition_check(&c, 3).unwrap().unwrap();
        assert_eq!(w.color, 0);
        assert_eq!(w.ap.to_set().as_slice(), &[0, 2, 4]);
        let c = Coloring::from_digits(2, "01").unwrap();
        assert_eq!(ap_partition_check(&c, 2).unwrap(), None);
        assert!(ap_partition_check(&c, 0).is_err());
        assert_eq!(ap_partition_check(&Coloring::empty(1), 1).unwrap(), None);
    }

    #[test]
    fn transfer_examples() {
        let x = FiniteSet::new(vec![0, 3, 6, 9, 12]).unwrap();
        let inner = FiniteSet::new(vec![0, 2, 4]).unwrap();
        assert_eq!(ap_transfer(&x, &inner).unwrap().as_slice(), &[0, 6, 12]);
        let single = FiniteSet::new(vec![3]).unwrap();
        assert_eq!(ap_transfer(&x, &single).unwrap().as_slice(), &[9]);
        let x = FiniteSet::new(vec![5, 10, 15, 20, 25, 30]).unwrap();
        let inner = FiniteSet::new(vec![1, 3, 5]).unwrap();
        assert_eq!(ap_transfer(&x, &inner).unwrap().as_slice(), &[10, 20, 30]);

        let bad_host = FiniteSet::new(vec![0, 1, 3]).unwrap();
        assert!(ap_transfer(&bad_host, &inner).is_err());
        let out_of_range = FiniteSet::new(vec![2, 4, 6]).unwrap();
        assert!(ap_transfer(&x, &out_of_range).is_err());
    }
}
