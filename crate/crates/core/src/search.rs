//! Exact computation of Brown numbers `B_f(r)` and van der Waerden numbers
//! `W(r, l)` by depth-first search over colorings of `0..n`.
//!
//! Colorings are extended one position at a time. A branch is cut as soon as
//! the newest position completes a forbidden pattern (a large window for
//! Brown numbers, a monochromatic progression for van der Waerden numbers);
//! both patterns survive extension, so a cut subtree holds no witnesses.
//! With canonicalization on, colors must appear in first-use order, which
//! removes the `r!` relabelings of every coloring.
//!
//! The search remembers the longest surviving coloring. If the tree is
//! exhausted below `n_cap`, the answer is exact: one more than that length.
//! Otherwise (cap reached or budget spent) the outcome is a bracket.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicU8, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::certificate::WitnessCertificate;
use crate::checker::{has_large_homogeneous_bruteforce_capped, is_witness};
use crate::coloring::Coloring;
use crate::constructions::bounds::brown_upper_bound;
use crate::error::{Error, Result};
use crate::growth::GrowthFn;

/// Node and wall-clock limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Longest coloring the search will build.
    pub n_cap: usize,
    pub budget: Budget,
    /// Require colors to appear in first-use order.
    pub canonicalize: bool,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    /// Prefix length at which the tree is split between workers.
    pub split_depth: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            n_cap: 256,
            budget: Budget::default(),
            canonicalize: true,
            jobs: 1,
            split_depth: 8,
        }
    }
}

impl SearchConfig {
    pub fn with_cap(n_cap: usize) -> Self {
        SearchConfig {
            n_cap,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// A coloring of length `n_cap` survived.
    ReachedCap,
    NodeLimit,
    TimeLimit,
}

impl StopReason {
    fn code(self) -> u8 {
        match self {
            StopReason::ReachedCap => 1,
            StopReason::NodeLimit => 2,
            StopReason::TimeLimit => 3,
        }
    }

    fn from_code(c: u8) -> Option<StopReason> {
        match c {
            1 => Some(StopReason::ReachedCap),
            2 => Some(StopReason::NodeLimit),
            3 => Some(StopReason::TimeLimit),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::ReachedCap => "reached-cap",
            StopReason::NodeLimit => "node-limit",
            StopReason::TimeLimit => "time-limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutcomeKind {
    Exact { value: u64 },
    Bracketed { lower: u64, upper: Option<BigUint> },
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub kind: OutcomeKind,
    /// Longest coloring found that avoids the forbidden pattern.
    pub witness: Coloring,
    /// Present for Brown-number searches.
    pub certificate: Option<WitnessCertificate>,
    pub nodes_explored: u64,
    pub wall_time: Duration,
    /// Why the search stopped early; `None` for a complete search.
    pub stop: Option<StopReason>,
    /// The growth function was replaced by its monotone closure.
    pub closure_applied: bool,
}

impl SearchOutcome {
    pub fn exact_value(&self) -> Option<u64> {
        match self.kind {
            OutcomeKind::Exact { value } => Some(value),
            OutcomeKind::Bracketed { .. } => None,
        }
    }

    pub fn lower(&self) -> u64 {
        match self.kind {
            OutcomeKind::Exact { value } => value,
            OutcomeKind::Bracketed { lower, .. } => lower,
        }
    }
}

trait Problem: Sync {
    type State: Send;
    fn palette(&self) -> u32;
    fn new_state(&self) -> Self::State;
    /// Tries to color position `colors.len()` with `c`; on `false` the
    /// state is unchanged.
    fn push(&self, st: &mut Self::State, colors: &[u32], c: u32) -> bool;
    /// Undoes the last successful push, which used color `c`.
    fn pop(&self, st: &mut Self::State, c: u32);
}

/// Brown-number problem: no class may contain a window `I` with
/// `|I| > f(gs(I))`.
struct BrownProblem {
    palette: u32,
    /// `f(d)` for every gap `d` the search can produce.
    bound: Vec<u64>,
}

#[derive(Default, Clone)]
struct ClassTrack {
    elems: Vec<u64>,
    /// Suffix-maximum gaps as `(gap, index of the element after the gap)`,
    /// strictly decreasing in gap from bottom to top.
    records: Vec<(u64, usize)>,
}

struct BrownState {
    classes: Vec<ClassTrack>,
    /// Per successful push: how many records it displaced.
    undo: Vec<usize>,
    displaced: Vec<(u64, usize)>,
}

impl BrownProblem {
    fn new(f: &GrowthFn, palette: u32, n_cap: usize) -> Self {
        BrownProblem {
            palette,
            bound: (0..=n_cap as u64 + 1).map(|d| f.eval(d)).collect(),
        }
    }
}

impl Problem for BrownProblem {
    type State = BrownState;

    fn palette(&self) -> u32 {
        self.palette
    }

    fn new_state(&self) -> BrownState {
        BrownState {
            classes: vec![ClassTrack::default(); self.palette as usize],
            undo: Vec::new(),
            displaced: Vec::new(),
        }
    }

    fn push(&self, st: &mut BrownState, colors: &[u32], c: u32) -> bool {
        if self.bound[1] < 1 {
            return false;
        }
        let x = colors.len() as u64;
        let tr = &mut st.classes[c as usize];
        let t = tr.elems.len();
        let Some(&last) = tr.elems.last() else {
            tr.elems.push(x);
            st.undo.push(0);
            return true;
        };
        let g = x - last;
        let mut moved = 0;
        while let Some(&(top, _)) = tr.records.last() {
            if top > g {
                break;
            }
            st.displaced.push(tr.records.pop().unwrap());
            moved += 1;
        }
        tr.records.push((g, t));

        // windows ending at t: for record k the longest one with gap size
        // exactly G_k starts right after the previous (larger) record
        let mut ok = true;
        let mut start = 0usize;
        for &(gap, idx) in &tr.records {
            if (t - start + 1) as u64 > self.bound[gap as usize] {
                ok = false;
                break;
            }
            start = idx;
        }

        if ok {
            tr.elems.push(x);
            st.undo.push(moved);
        } else {
            tr.records.pop();
            for _ in 0..moved {
                tr.records.push(st.displaced.pop().unwrap());
            }
        }
        ok
    }

    fn pop(&self, st: &mut BrownState, c: u32) {
        let moved = st.undo.pop().expect("pop without push");
        let tr = &mut st.classes[c as usize];
        tr.elems.pop();
        if !tr.elems.is_empty() {
            tr.records.pop();
            for _ in 0..moved {
                tr.records.push(st.displaced.pop().unwrap());
            }
        }
    }
}

/// Van der Waerden problem: no monochromatic `l`-term progression.
struct VdwProblem {
    palette: u32,
    l: usize,
}

impl Problem for VdwProblem {
    type State = ();

    fn palette(&self) -> u32 {
        self.palette
    }

    fn new_state(&self) {}

    fn push(&self, _: &mut (), colors: &[u32], c: u32) -> bool {
        if self.l == 1 {
            return false;
        }
        let x = colors.len();
        let steps = self.l - 1;
        let mut d = 1;
        while steps * d <= x {
            if (1..=steps).all(|k| colors[x - k * d] == c) {
                return false;
            }
            d += 1;
        }
        true
    }

    fn pop(&self, _: &mut (), _: u32) {}
}

struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    reason: AtomicU8,
    start: Instant,
    budget: Budget,
}

impl Shared {
    fn halt(&self, reason: StopReason) {
        let _ = self
            .reason
            .compare_exchange(0, reason.code(), Ordering::SeqCst, Ordering::SeqCst);
        self.stop.store(true, Ordering::SeqCst);
    }

    fn flush(&self, batch: u64) {
        let total = self.nodes.fetch_add(batch, Ordering::Relaxed) + batch;
        if self.budget.max_nodes.is_some_and(|m| total >= m) {
            self.halt(StopReason::NodeLimit);
        }
        if self
            .budget
            .max_time
            .is_some_and(|t| self.start.elapsed() >= t)
        {
            self.halt(StopReason::TimeLimit);
        }
    }
}

const FLUSH_EVERY: u64 = 1024;

/// Depth-first search below `prefix`; returns the longest surviving
/// coloring (lexicographically least among the longest).
fn dfs<P: Problem>(p: &P, prefix: &[u32], cfg: &SearchConfig, shared: &Shared) -> Vec<u32> {
    let r = p.palette();
    let mut st = p.new_state();
    let mut colors: Vec<u32> = Vec::with_capacity(cfg.n_cap);
    for &c in prefix {
        let ok = p.push(&mut st, &colors, c);
        debug_assert!(ok, "frontier prefix must be valid");
        colors.push(c);
    }
    let mut best = colors.clone();
    if colors.len() >= cfg.n_cap {
        shared.halt(StopReason::ReachedCap);
        return best;
    }
    let first_used = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut used = vec![first_used];
    let mut next: Vec<u32> = vec![0];
    let mut pending = 0u64;

    loop {
        if shared.stop.load(Ordering::Relaxed) {
            break;
        }
        let depth = colors.len();
        let in_use = *used.last().unwrap();
        let limit = if cfg.canonicalize {
            r.min(in_use + 1)
        } else {
            r
        };
        let c = *next.last().unwrap();
        if c >= limit {
            next.pop();
            if next.is_empty() {
                break;
            }
            let undone = colors.pop().unwrap();
            p.pop(&mut st, undone);
            used.pop();
            continue;
        }
        *next.last_mut().unwrap() += 1;
        pending += 1;
        if pending == FLUSH_EVERY {
            shared.flush(pending);
            pending = 0;
        }
        if p.push(&mut st, &colors, c) {
            colors.push(c);
            used.push(in_use.max(c + 1));
            if colors.len() > best.len() {
                best.clone_from(&colors);
                if depth + 1 >= cfg.n_cap {
                    shared.halt(StopReason::ReachedCap);
                    break;
                }
            }
            next.push(0);
        }
    }
    shared.flush(pending);
    best
}

/// Every valid prefix of length `depth` in lexicographic order, plus the
/// longest valid coloring seen on the way (for trees that die out earlier).
fn frontier<P: Problem>(
    p: &P,
    depth: usize,
    cfg: &SearchConfig,
    shared: &Shared,
) -> (Vec<Vec<u32>>, Vec<u32>) {
    fn rec<P: Problem>(
        p: &P,
        st: &mut P::State,
        colors: &mut Vec<u32>,
        in_use: u32,
        depth: usize,
        canonicalize: bool,
        out: &mut Vec<Vec<u32>>,
        best: &mut Vec<u32>,
        nodes: &mut u64,
    ) {
        if colors.len() > best.len() {
            best.clone_from(colors);
        }
        if colors.len() == depth {
            out.push(colors.clone());
            return;
        }
        let limit = if canonicalize {
            p.palette().min(in_use + 1)
        } else {
            p.palette()
        };
        for c in 0..limit {
            *nodes += 1;
            if p.push(st, colors, c) {
                colors.push(c);
                rec(p, st, colors, in_use.max(c + 1), depth, canonicalize, out, best, nodes);
                colors.pop();
                p.pop(st, c);
            }
        }
    }
    let mut out = Vec::new();
    let mut best = Vec::new();
    let mut nodes = 0;
    let mut st = p.new_state();
    rec(
        p,
        &mut st,
        &mut Vec::new(),
        0,
        depth,
        cfg.canonicalize,
        &mut out,
        &mut best,
        &mut nodes,
    );
    shared.flush(nodes);
    (out, best)
}

struct EngineResult {
    best: Vec<u32>,
    nodes: u64,
    stop: Option<StopReason>,
    wall_time: Duration,
}

fn run<P: Problem>(p: &P, cfg: &SearchConfig) -> Result<EngineResult> {
    let shared = Shared {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        reason: AtomicU8::new(0),
        start: Instant::now(),
        budget: cfg.budget,
    };
    let split = cfg.split_depth.min(cfg.n_cap);
    let best = if cfg.jobs <= 1 || split == 0 {
        dfs(p, &[], cfg, &shared)
    } else {
        let (prefixes, shallow_best) = frontier(p, split, cfg, &shared);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::ResourceLimit(format!("cannot start worker pool: {e}")))?;
        let results: Vec<Vec<u32>> = pool.install(|| {
            prefixes
                .par_iter()
                .map(|prefix| dfs(p, prefix, cfg, &shared))
                .collect()
        });
        // first of the longest, in prefix order
        let mut best = shallow_best;
        for r in results {
            if r.len() > best.len() {
                best = r;
            }
        }
        best
    };
    Ok(EngineResult {
        best,
        nodes: shared.nodes.load(Ordering::SeqCst),
        stop: StopReason::from_code(shared.reason.load(Ordering::SeqCst)),
        wall_time: shared.start.elapsed(),
    })
}

/// `B_f(r)`: least `n` such that every `r`-coloring of `0..n` has a
/// homogeneous `H` with `|H| > f(gs(H))`.
///
/// If `f` is not flagged nondecreasing its monotone closure `g >= f` is used
/// instead (so the value is `B_g(r) >= B_f(r)`) and `closure_applied` is set.
pub fn brown_number(f: &GrowthFn, r: u32, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if r == 0 {
        return Err(Error::invalid("number of colors must be at least 1"));
    }
    let (f, closure_applied) = if f.is_nondecreasing() {
        (f.clone(), false)
    } else {
        (f.monotone_closure(), true)
    };
    let problem = BrownProblem::new(&f, r, cfg.n_cap);
    let res = run(&problem, cfg)?;
    let witness = Coloring::new(r, res.best)?;
    let certificate = is_witness(&witness, &f)?.ok_or_else(|| {
        Error::Precondition("search produced a coloring that fails the witness check".into())
    })?;
    let lower = witness.len() as u64 + 1;
    let kind = match res.stop {
        None => OutcomeKind::Exact { value: lower },
        Some(_) => OutcomeKind::Bracketed {
            lower,
            upper: brown_upper_bound(&f, r).ok(),
        },
    };
    Ok(SearchOutcome {
        kind,
        witness,
        certificate: Some(certificate),
        nodes_explored: res.nodes,
        wall_time: res.wall_time,
        stop: res.stop,
        closure_applied,
    })
}

/// `W(r, l)`: least `n` such that every `r`-coloring of `0..n` has a
/// monochromatic `l`-term arithmetic progression.
pub fn vdw_number(r: u32, l: usize, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if r == 0 || l == 0 {
        return Err(Error::invalid("r and l must be at least 1"));
    }
    let problem = VdwProblem { palette: r, l };
    let res = run(&problem, cfg)?;
    let witness = Coloring::new(r, res.best)?;
    if crate::vdw::ap_partition_check(&witness, l)?.is_some() {
        return Err(Error::Precondition(
            "search produced a coloring with a monochromatic progression".into(),
        ));
    }
    let lower = witness.len() as u64 + 1;
    let kind = match res.stop {
        None => OutcomeKind::Exact { value: lower },
        Some(_) => OutcomeKind::Bracketed { lower, upper: None },
    };
    Ok(SearchOutcome {
        kind,
        witness,
        certificate: None,
        nodes_explored: res.nodes,
        wall_time: res.wall_time,
        stop: res.stop,
        closure_applied: false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The complete search found no witness of the requested length.
    NoWitness,
    /// A witness of the requested length.
    WitnessFound(Coloring),
    /// The budget ran out first.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Confirmation {
    pub verdict: Verdict,
    pub nodes: u64,
}

impl Confirmation {
    pub fn no_witness(&self) -> Option<bool> {
        match self.verdict {
            Verdict::NoWitness => Some(true),
            Verdict::WitnessFound(_) => Some(false),
            Verdict::Indeterminate => None,
        }
    }
}

/// Decides whether some `r`-coloring of `0..n` satisfies the star condition
/// in every class, i.e. whether `B_f(r) > n`.
pub fn confirm_no_witness(
    n: usize,
    f: &GrowthFn,
    r: u32,
    cfg: &SearchConfig,
) -> Result<Confirmation> {
    if r == 0 {
        return Err(Error::invalid("number of colors must be at least 1"));
    }
    if !f.is_nondecreasing() {
        return Err(Error::Precondition(format!("{f} is not nondecreasing")));
    }
    let cfg = SearchConfig {
        n_cap: n,
        ..cfg.clone()
    };
    let problem = BrownProblem::new(f, r, n);
    let res = run(&problem, &cfg)?;
    let verdict = match res.stop {
        None => Verdict::NoWitness,
        Some(StopReason::ReachedCap) => Verdict::WitnessFound(Coloring::new(r, res.best)?),
        Some(_) => Verdict::Indeterminate,
    };
    Ok(Confirmation {
        verdict,
        nodes: res.nodes,
    })
}

/// Decides whether some `r`-coloring of `0..n` avoids monochromatic
/// `l`-term progressions, i.e. whether `W(r, l) > n`.
pub fn confirm_no_vdw_witness(
    n: usize,
    r: u32,
    l: usize,
    cfg: &SearchConfig,
) -> Result<Confirmation> {
    if r == 0 || l == 0 {
        return Err(Error::invalid("r and l must be at least 1"));
    }
    let cfg = SearchConfig {
        n_cap: n,
        ..cfg.clone()
    };
    let res = run(&VdwProblem { palette: r, l }, &cfg)?;
    let verdict = match res.stop {
        None => Verdict::NoWitness,
        Some(StopReason::ReachedCap) => Verdict::WitnessFound(Coloring::new(r, res.best)?),
        Some(_) => Verdict::Indeterminate,
    };
    Ok(Confirmation {
        verdict,
        nodes: res.nodes,
    })
}

/// Oracle value of `B_f(r)` by enumerating all `r^n` colorings for
/// `n = 0, 1, ...` and testing each with the subset-enumeration checker.
///
/// Returns `None` when every length up to `max_n` still has a witness.
pub fn brown_number_enumerated(f: &GrowthFn, r: u32, max_n: usize) -> Result<Option<u64>> {
    if r == 0 {
        return Err(Error::invalid("number of colors must be at least 1"));
    }
    for n in 0..=max_n {
        let total = (r as u128).checked_pow(n as u32).filter(|&t| t <= 1 << 24);
        let Some(total) = total else {
            return Err(Error::ResourceLimit(format!(
                "enumerating {r}^{n} colorings exceeds the oracle limit"
            )));
        };
        let mut found = false;
        let mut values = vec![0u32; n];
        for code in 0..total {
            let mut x = code;
            for v in values.iter_mut() {
                *v = (x % r as u128) as u32;
                x /= r as u128;
            }
            let c = Coloring::new(r, values.clone())?;
            if has_large_homogeneous_bruteforce_capped(&c, f, n.max(1))?.is_none() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(Some(n as u64));
        }
    }
    Ok(None)
}
