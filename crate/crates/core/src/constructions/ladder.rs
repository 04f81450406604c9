//! The witness ladder for `f(d) = 2^d`.
//!
//! `C_0 = 00`, and `C_{s+1}` is `C_s D_s` repeated `2^{n_s}` times, where
//! `D_s` is `C_s` with every color `i` replaced by `i + 2^s`. Every class of
//! `C_s` satisfies the star condition, so `C_s` shows `B(2^s) > n_s`.
//!
//! Stages up to `s = 2` (2^21 positions) are materialized. Stage 3 is
//! available as a positional evaluator; its length has about two million
//! bits.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::checker::satisfies_star;
use crate::coloring::Coloring;
use crate::constructions::bounds::ladder_length;
use crate::error::{Error, Result};
use crate::growth::GrowthFn;

/// Largest stage that is built in memory.
pub const MATERIALIZE_CAP: u32 = 2;

/// Largest stage whose length is representable.
pub const EVALUATOR_CAP: u32 = 3;

#[derive(Debug, Clone)]
pub struct LadderStage {
    pub s: u32,
    pub length: BigUint,
    /// `None` above [`MATERIALIZE_CAP`].
    pub coloring: Option<Coloring>,
}

impl LadderStage {
    pub fn palette(&self) -> u32 {
        1 << self.s
    }

    pub fn is_materialized(&self) -> bool {
        self.coloring.is_some()
    }

    /// Color of position `pos` without materializing the stage.
    pub fn color_at(&self, pos: &BigUint) -> Result<u32> {
        if *pos >= self.length {
            return Err(Error::invalid(format!(
                "position is outside stage {} (length n_{})",
                self.s, self.s
            )));
        }
        if self.s == 0 {
            return Ok(0);
        }
        // C_s is periodic with period 2 n_{s-1}
        let below = ladder_length(self.s - 1)?;
        let period = &below << 1;
        let q: BigUint = pos % &period;
        let q = q
            .to_u64()
            .expect("period of a representable stage fits in u64");
        Ok(color_below(self.s, q))
    }
}

/// Color of position `q < 2 n_{s-1}` in `C_s`, `s >= 1`.
fn color_below(s: u32, q: u64) -> u32 {
    let mut s = s;
    let mut q = q;
    let mut shift = 0u32;
    while s > 0 {
        let below = small_length(s - 1);
        let q2 = q % (2 * below);
        if q2 >= below {
            shift += 1 << (s - 1);
            q = q2 - below;
        } else {
            q = q2;
        }
        s -= 1;
    }
    shift
}

fn small_length(s: u32) -> u64 {
    match s {
        0 => 2,
        1 => 16,
        2 => 2_097_152,
        _ => unreachable!("only stages below 3 are periodic blocks of a representable stage"),
    }
}

fn materialize(s: u32) -> Vec<u32> {
    let mut c = vec![0u32, 0];
    for i in 0..s {
        let n = c.len();
        let reps = 1usize << n;
        let mut next = Vec::with_capacity(2 * n * reps);
        let d: Vec<u32> = c.iter().map(|&v| v + (1 << i)).collect();
        for _ in 0..reps {
            next.extend_from_slice(&c);
            next.extend_from_slice(&d);
        }
        c = next;
    }
    c
}

/// Stage `s` of the ladder: materialized for `s <= 2`, evaluator-only for
/// `s = 3`.
pub fn ladder(s: u32) -> Result<LadderStage> {
    if s > EVALUATOR_CAP {
        return Err(Error::MagnitudeOverflow(format!(
            "n_{s} is not representable; stages above {EVALUATOR_CAP} are unavailable"
        )));
    }
    let length = ladder_length(s)?;
    let coloring = if s <= MATERIALIZE_CAP {
        Some(Coloring::new(1 << s, materialize(s))?)
    } else {
        None
    };
    Ok(LadderStage { s, length, coloring })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassClaims {
    pub color: u32,
    pub size: u64,
    /// `n_s / 2^s`.
    pub expected_size: u64,
    /// `max H - min H + n_0 + ... + n_{s-1} + 1`.
    pub span_identity: u64,
    pub size_ok: bool,
    pub star_ok: bool,
    pub span_ok: bool,
}

impl ClassClaims {
    pub fn holds(&self) -> bool {
        self.size_ok && self.star_ok && self.span_ok
    }

    /// Names of the failed claims.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.size_ok {
            out.push("class size");
        }
        if !self.star_ok {
            out.push("star condition");
        }
        if !self.span_ok {
            out.push("span identity");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderReport {
    pub s: u32,
    pub length: u64,
    pub classes: Vec<ClassClaims>,
}

impl LadderReport {
    pub fn all_hold(&self) -> bool {
        self.classes.iter().all(ClassClaims::holds)
    }
}

/// Checks, for every color of `C_s`: the class has `n_s / 2^s` elements,
/// satisfies the star condition for `2^d`, and
/// `n_s = max H - min H + n_0 + ... + n_{s-1} + 1`.
pub fn ladder_verify(s: u32) -> Result<LadderReport> {
    if s > MATERIALIZE_CAP {
        return Err(Error::MagnitudeOverflow(format!(
            "stage {s} is too large to scan; verification is available for s <= {MATERIALIZE_CAP}"
        )));
    }
    let stage = ladder(s)?;
    let coloring = stage.coloring.expect("stage is materialized");
    let n = coloring.len() as u64;
    let prefix: u64 = (0..s).map(small_length).sum();
    let expected_size = n >> s;
    let f = GrowthFn::exp2();
    let classes = coloring.color_classes();
    let classes = classes
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            let star_ok = satisfies_star(h, &f)?.holds;
            let span_identity = match (h.min(), h.max()) {
                (Some(lo), Some(hi)) => hi - lo + prefix + 1,
                _ => 0,
            };
            Ok(ClassClaims {
                color: i as u32,
                size: h.len() as u64,
                expected_size,
                span_identity,
                size_ok: h.len() as u64 == expected_size,
                star_ok,
                span_ok: span_identity == n,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LadderReport {
        s,
        length: n,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_stages() {
        let c0 = ladder(0).unwrap().coloring.unwrap();
        assert_eq!(c0.to_string(), "00");
        let c1 = ladder(1).unwrap().coloring.unwrap();
        assert_eq!(c1.to_string(), "0011001100110011");
        assert_eq!(c1.palette(), 2);
    }

    #[test]
    fn evaluator_matches_materialized() {
        for s in 0..=2 {
            let st = ladder(s).unwrap();
            let c = st.coloring.clone().unwrap();
            let step = if s == 2 { 997 } else { 1 };
            for pos in (0..c.len()).step_by(step) {
                assert_eq!(
                    st.color_at(&BigUint::from(pos)).unwrap(),
                    c.values()[pos],
                    "s={s} pos={pos}"
                );
            }
        }
    }

    #[test]
    fn stage_three_evaluator() {
        let st = ladder(3).unwrap();
        assert!(!st.is_materialized());
        assert_eq!(st.palette(), 8);
        assert_eq!(st.color_at(&BigUint::from(0u32)).unwrap(), 0);
        // second half of the first period is D_2: C_2 shifted by 4
        let n2 = BigUint::from(2_097_152u32);
        assert_eq!(st.color_at(&n2).unwrap(), 4);
        let last = &st.length - 1u32;
        assert_eq!(st.color_at(&last).unwrap(), 7);
        assert!(st.color_at(&st.length).is_err());
        assert!(matches!(ladder(4), Err(Error::MagnitudeOverflow(_))));
    }

    #[test]
    fn verify_small_stages() {
        let r0 = ladder_verify(0).unwrap();
        assert!(r0.all_hold());
        assert_eq!(r0.classes[0].span_identity, 2);
        let r1 = ladder_verify(1).unwrap();
        assert!(r1.all_hold());
        assert_eq!(r1.classes[0].size, 8);
        assert_eq!(r1.classes[0].span_identity, 16);
        assert!(ladder_verify(3).is_err());
    }
}
