//! Largeness checks: does a color class contain a set `H` with
//! `|H| > f(gs(H))`?
//!
//! For nondecreasing `f` it suffices to look at windows, and among windows it
//! suffices to look at the maximal runs whose internal gaps are bounded by
//! each distinct gap value `d` of the class (plus `d = 1`): the class is free
//! of large windows iff every such run has length `<= f(d)`. That is the
//! "star" condition; [`satisfies_star`] evaluates it with a union-find sweep
//! over the gaps sorted by size.
//!
//! [`has_large_homogeneous_bruteforce`] enumerates every subset of every
//! class and is the semantics of record for small inputs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{ClassCertificate, GapTriple, WitnessCertificate};
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::gaps::{gap_size, gap_thresholds};
use crate::growth::GrowthFn;
use crate::set::FiniteSet;

/// Default length limit for the subset-enumeration oracle.
pub const ORACLE_CAP: usize = 20;

/// Classes larger than this are checked on the rayon pool.
const PARALLEL_THRESHOLD: usize = 1 << 15;

/// A window `H[start..=end]` of a class, by index into the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub start: usize,
    pub end: usize,
    pub gap_size: u64,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub color: Option<u32>,
    #[serde(flatten)]
    pub window: Window,
    /// `f(gap_size)`, saturated at `u64::MAX`.
    pub bound: u64,
    /// The window's elements.
    pub elements: FiniteSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarReport {
    pub holds: bool,
    pub violation: Option<Violation>,
}

fn require_nondecreasing(f: &GrowthFn) -> Result<()> {
    if f.is_nondecreasing() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{f} is not nondecreasing; use its monotone closure or the brute-force oracle"
        )))
    }
}

/// `(d, longest maximal d-bounded run)` for every threshold of `h`.
///
/// Gaps are merged in increasing order with a union-find over element
/// indices, so the whole table costs `O(|h| log |h|)`.
pub fn run_profile(h: &[u64]) -> Vec<(u64, usize)> {
    let thresholds = gap_thresholds(h);
    if thresholds.is_empty() {
        return Vec::new();
    }
    let m = h.len();
    let mut order: Vec<usize> = (0..m.saturating_sub(1)).collect();
    order.sort_unstable_by_key(|&i| h[i + 1] - h[i]);

    let mut parent: Vec<usize> = (0..m).collect();
    let mut size: Vec<usize> = vec![1; m];
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let mut best = 1usize;
    let mut out = Vec::with_capacity(thresholds.len());
    let mut next = 0usize;
    for &d in &thresholds {
        while next < order.len() && h[order[next] + 1] - h[order[next]] <= d {
            let i = order[next];
            let (a, b) = (find(&mut parent, i), find(&mut parent, i + 1));
            if a != b {
                let (big, small) = if size[a] >= size[b] { (a, b) } else { (b, a) };
                parent[small] = big;
                size[big] += size[small];
                best = best.max(size[big]);
            }
            next += 1;
        }
        out.push((d, best));
    }
    out
}

/// The certificate triples `(d, longest d-run, f(d))` of one class.
pub fn star_triples(h: &[u64], f: &GrowthFn) -> Vec<GapTriple> {
    run_profile(h)
        .into_iter()
        .map(|(gap, max_run)| GapTriple {
            gap,
            max_run: max_run as u64,
            bound: f.eval(gap),
        })
        .collect()
}

/// The least violating window: smallest start, and for that start the
/// largest end. `None` when every window satisfies `|I| <= f(gs(I))`.
///
/// Requires `f` nondecreasing.
pub fn least_violation(h: &[u64], f: &GrowthFn) -> Option<Window> {
    let m = h.len();
    if m == 0 {
        return None;
    }
    let thresholds = gap_thresholds(h);
    let bounds: Vec<u64> = thresholds.iter().map(|&d| f.eval(d)).collect();
    // stop[t] = first index i >= j with i == m-1 or gap(i, i+1) > thresholds[t]
    let mut stop = vec![0usize; thresholds.len()];
    for j in 0..m {
        let mut prev_end = usize::MAX;
        let mut found: Option<Window> = None;
        for (t, &d) in thresholds.iter().enumerate() {
            let p = &mut stop[t];
            if *p < j {
                *p = j;
            }
            while *p + 1 < m && h[*p + 1] - h[*p] <= d {
                *p += 1;
            }
            let end = *p;
            if end == prev_end {
                continue;
            }
            prev_end = end;
            let gs = if end == j { 1 } else { d };
            let bound = if end == j { f.eval(1) } else { bounds[t] };
            let len = end - j + 1;
            if len as u64 > bound {
                found = Some(Window {
                    start: j,
                    end,
                    gap_size: gs,
                    len,
                });
            }
        }
        if found.is_some() {
            return found;
        }
    }
    None
}

fn violation_for(h: &[u64], w: Window, f: &GrowthFn, color: Option<u32>) -> Violation {
    Violation {
        color,
        window: w,
        bound: f.eval(w.gap_size),
        elements: FiniteSet::from_sorted_unchecked(h[w.start..=w.end].to_vec()),
    }
}

fn star_holds(h: &[u64], f: &GrowthFn) -> bool {
    run_profile(h)
        .into_iter()
        .all(|(d, run)| run as u64 <= f.eval(d))
}

/// Does every window `I` of `h` satisfy `|I| <= f(gs(I))`?
pub fn satisfies_star(h: &[u64], f: &GrowthFn) -> Result<StarReport> {
    require_nondecreasing(f)?;
    if star_holds(h, f) {
        return Ok(StarReport {
            holds: true,
            violation: None,
        });
    }
    let w = least_violation(h, f).expect("run profile found a violation");
    Ok(StarReport {
        holds: false,
        violation: Some(violation_for(h, w, f, None)),
    })
}

fn per_class<T: Send>(
    coloring: &Coloring,
    work: impl Fn(u32, &FiniteSet) -> T + Sync + Send,
) -> Vec<T> {
    let classes = coloring.color_classes();
    if coloring.len() >= PARALLEL_THRESHOLD {
        classes
            .par_iter()
            .enumerate()
            .map(|(i, h)| work(i as u32, h))
            .collect()
    } else {
        classes
            .iter()
            .enumerate()
            .map(|(i, h)| work(i as u32, h))
            .collect()
    }
}

/// A homogeneous window `H` with `|H| > f(gs(H))`, if one exists.
///
/// The least `(color, start)` is reported, with the largest violating end.
pub fn has_large_homogeneous(
    coloring: &Coloring,
    f: &GrowthFn,
) -> Result<Option<(u32, FiniteSet)>> {
    Ok(first_violation(coloring, f)?.map(|v| (v.color.unwrap(), v.elements)))
}

/// Same search as [`has_large_homogeneous`], keeping the window details.
pub fn first_violation(coloring: &Coloring, f: &GrowthFn) -> Result<Option<Violation>> {
    require_nondecreasing(f)?;
    let found = per_class(coloring, |color, h| {
        if star_holds(h, f) {
            None
        } else {
            let w = least_violation(h, f).expect("run profile found a violation");
            Some(violation_for(h, w, f, Some(color)))
        }
    });
    Ok(found.into_iter().flatten().next())
}

/// Subset-enumeration oracle; `f` need not be monotone.
pub fn has_large_homogeneous_bruteforce(
    coloring: &Coloring,
    f: &GrowthFn,
) -> Result<Option<(u32, FiniteSet)>> {
    has_large_homogeneous_bruteforce_capped(coloring, f, ORACLE_CAP)
}

pub fn has_large_homogeneous_bruteforce_capped(
    coloring: &Coloring,
    f: &GrowthFn,
    cap: usize,
) -> Result<Option<(u32, FiniteSet)>> {
    if coloring.len() > cap {
        return Err(Error::ResourceLimit(format!(
            "brute-force oracle limited to length {cap}, got {}",
            coloring.len()
        )));
    }
    let mut buf = Vec::with_capacity(cap);
    for (color, class) in coloring.color_classes().into_iter().enumerate() {
        let m = class.len();
        for mask in 1u64..(1u64 << m) {
            buf.clear();
            buf.extend((0..m).filter(|i| mask >> i & 1 == 1).map(|i| class[i]));
            if buf.len() as u64 > f.eval(gap_size(&buf)) {
                return Ok(Some((color as u32, FiniteSet::from_sorted_unchecked(buf))));
            }
        }
    }
    Ok(None)
}

/// A certificate that every class satisfies the star condition, i.e. that
/// `B_f(palette) > length`.
pub fn is_witness(coloring: &Coloring, f: &GrowthFn) -> Result<Option<WitnessCertificate>> {
    require_nondecreasing(f)?;
    let classes = per_class(coloring, |color, h| {
        let triples = star_triples(h, f);
        let ok = triples.iter().all(|t| t.max_run <= t.bound);
        (
            ok,
            ClassCertificate {
                color,
                size: h.len() as u64,
                triples,
            },
        )
    });
    if classes.iter().all(|(ok, _)| *ok) {
        Ok(Some(WitnessCertificate::new(
            coloring,
            f,
            classes.into_iter().map(|(_, c)| c).collect(),
        )))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(m: u64) -> GrowthFn {
        GrowthFn::linear(m).unwrap()
    }

    fn col(p: u32, s: &str) -> Coloring {
        Coloring::from_digits(p, s).unwrap()
    }

    #[test]
    fn star_examples() {
        let r = satisfies_star(&[0, 1, 2], &lin(1)).unwrap();
        assert!(!r.holds);
        let v = r.violation.unwrap();
        assert_eq!(v.elements.as_slice(), &[0, 1, 2]);
        assert_eq!((v.window.gap_size, v.window.len, v.bound), (1, 3, 1));

        let c1 = [0, 1, 4, 5, 8, 9, 12, 13];
        assert!(satisfies_star(&c1, &GrowthFn::exp2()).unwrap().holds);
        assert!(satisfies_star(&[0, 2, 4], &lin(2)).unwrap().holds);
        assert!(satisfies_star(&[], &lin(1)).unwrap().holds);
    }

    #[test]
    fn star_rejects_non_monotone() {
        let f = GrowthFn::table(vec![3, 1], crate::growth::Tail::Const).unwrap();
        assert!(matches!(satisfies_star(&[0], &f), Err(Error::Precondition(_))));
        assert!(matches!(is_witness(&col(1, "0"), &f), Err(Error::Precondition(_))));
    }

    #[test]
    fn large_homogeneous_examples() {
        let (c, h) = has_large_homogeneous(&col(1, "000"), &lin(1)).unwrap().unwrap();
        assert_eq!((c, h.as_slice()), (0, &[0u64, 1, 2][..]));

        let c1 = col(2, "0011001100110011");
        assert!(has_large_homogeneous(&c1, &GrowthFn::exp2()).unwrap().is_none());

        let (c, h) = has_large_homogeneous(&col(2, "01010"), &lin(1)).unwrap().unwrap();
        assert_eq!((c, h.as_slice()), (0, &[0u64, 2, 4][..]));
    }

    #[test]
    fn bruteforce_examples() {
        let c = col(2, "01010");
        let fast = has_large_homogeneous(&c, &lin(1)).unwrap().map(|x| x.0);
        let slow = has_large_homogeneous_bruteforce(&c, &lin(1)).unwrap().map(|x| x.0);
        assert_eq!(fast, slow);
        assert!(has_large_homogeneous_bruteforce(&col(2, "0011"), &GrowthFn::exp2())
            .unwrap()
            .is_none());
        assert!(has_large_homogeneous_bruteforce(&Coloring::empty(2), &lin(1))
            .unwrap()
            .is_none());
        let long = Coloring::new(2, vec![0; 21]).unwrap();
        assert!(matches!(
            has_large_homogeneous_bruteforce(&long, &lin(1)),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn bruteforce_handles_non_monotone() {
        // f(1) = 5, f(2) = 1, so {0, 2} is large
        let f = GrowthFn::table(vec![0, 5, 1], crate::growth::Tail::Const).unwrap();
        let hit = has_large_homogeneous_bruteforce(&col(2, "0101"), &f).unwrap();
        assert_eq!(hit, Some((0, FiniteSet::new(vec![0, 2]).unwrap())));
    }

    #[test]
    fn witness_examples() {
        let cert = is_witness(&col(1, "00"), &GrowthFn::exp2()).unwrap().unwrap();
        assert_eq!(cert.classes[0].triples, vec![GapTriple { gap: 1, max_run: 2, bound: 2 }]);

        let cert = is_witness(&col(2, "0101"), &lin(1)).unwrap().unwrap();
        for class in &cert.classes {
            assert_eq!(class.triples.last().unwrap(), &GapTriple { gap: 2, max_run: 2, bound: 2 });
        }
        assert!(is_witness(&col(1, "000"), &lin(1)).unwrap().is_none());
    }

    #[test]
    fn f_of_one_zero_makes_singletons_large() {
        let f = GrowthFn::table(vec![0, 0, 5], crate::growth::Tail::Const).unwrap();
        let (c, h) = has_large_homogeneous(&col(2, "10"), &f).unwrap().unwrap();
        assert_eq!((c, h.as_slice()), (0, &[1u64][..]));
        assert!(is_witness(&Coloring::empty(1), &f).unwrap().is_some());
    }

    #[test]
    fn run_profile_matches_scan() {
        let h = [0, 1, 4, 5, 8, 9, 12, 13, 30, 31, 33];
        for (d, run) in run_profile(&h) {
            assert_eq!(run, crate::gaps::max_run_size(&h, d).unwrap());
        }
    }
}
