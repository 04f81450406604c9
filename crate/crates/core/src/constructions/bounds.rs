//! Arbitrary-precision bound evaluators.
//!
//! Every value is exact. Values whose bit length would exceed a cap
//! (default [`DEFAULT_BIT_CAP`]) produce [`Error::MagnitudeOverflow`]
//! instead of exhausting memory.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::growth::{GrowthFn, DEFAULT_BIT_CAP};

/// `2^e` when it fits in `cap` bits.
fn pow2(e: &BigUint, cap: u64) -> Option<BigUint> {
    let e = e.to_u64().filter(|&e| e < cap)?;
    Some(BigUint::one() << e)
}

/// `r (2^{mr} - mr) + 1`, the bound for `f(d) = m d`.
pub fn ardal_bound(m: u64, r: u64) -> Result<BigUint> {
    if m == 0 || r == 0 {
        return Err(Error::invalid("m and r must be at least 1"));
    }
    let mr = m
        .checked_mul(r)
        .filter(|&mr| mr < DEFAULT_BIT_CAP)
        .ok_or_else(|| Error::MagnitudeOverflow(format!("2^({m}*{r}) exceeds the bit cap")))?;
    let p = BigUint::one() << mr;
    Ok(BigUint::from(r) * (p - BigUint::from(mr)) + 1u32)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperBound {
    /// Decimal string in JSON.
    #[serde(serialize_with = "ser_decimal")]
    pub value: BigUint,
    /// The recursion ran on the monotone closure of the given function.
    pub closure_applied: bool,
}

fn ser_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `n_r` of the recursion `n_1 = f(1) + 2`, `n_{k+1} = (k+1) f(n_k) + 1`.
///
/// A function not flagged nondecreasing is replaced by its monotone closure
/// and the result says so.
pub fn upper_bound_seq(f: &GrowthFn, r: u32) -> Result<UpperBound> {
    if r == 0 {
        return Err(Error::invalid("number of colors must be at least 1"));
    }
    let (f, closure_applied) = if f.is_nondecreasing() {
        (f.clone(), false)
    } else {
        (f.monotone_closure(), true)
    };
    let mut n = f.eval_big(&BigUint::one())? + 2u32;
    for k in 1..r {
        n = BigUint::from(k + 1) * f.eval_big(&n)? + 1u32;
    }
    Ok(UpperBound {
        value: n,
        closure_applied,
    })
}

/// Smallest available upper bound on `B_f(r)`: the recursion, and for
/// linear `f` also the closed form. Errors only if neither is representable.
pub fn brown_upper_bound(f: &GrowthFn, r: u32) -> Result<BigUint> {
    let rec = upper_bound_seq(f, r).map(|u| u.value);
    let closed = match f.linear_slope() {
        Some(m) => Some(ardal_bound(m, r as u64)),
        None => None,
    };
    match (rec, closed) {
        (Ok(a), Some(Ok(b))) => Ok(a.min(b)),
        (Ok(a), _) => Ok(a),
        (Err(_), Some(Ok(b))) => Ok(b),
        (Err(e), _) => Err(e),
    }
}

/// `2_k(n)`: `2_0(n) = n`, `2_{k+1}(n) = 2^{2_k(n)}`.
pub fn tower(k: u32, n: u64) -> Result<BigUint> {
    tower_with_cap(k, n, DEFAULT_BIT_CAP)
}

pub fn tower_with_cap(k: u32, n: u64, bit_cap: u64) -> Result<BigUint> {
    let mut v = BigUint::from(n);
    for _ in 0..k {
        v = pow2(&v, bit_cap).ok_or_else(|| {
            Error::MagnitudeOverflow(format!(
                "2_{k}({n}) has more than {bit_cap} bits"
            ))
        })?;
    }
    Ok(v)
}

/// `n_s` of the witness ladder: `n_0 = 2`, `n_{s+1} = 2 n_s 2^{n_s}`.
///
/// `n_3` has about two million bits; `n_4` is not representable.
pub fn ladder_length(s: u32) -> Result<BigUint> {
    let mut n = BigUint::from(2u32);
    for i in 0..s {
        let p = pow2(&n, DEFAULT_BIT_CAP).ok_or_else(|| {
            Error::MagnitudeOverflow(format!(
                "n_{} = 2 n_{i} 2^(n_{i}) has more than {DEFAULT_BIT_CAP} bits",
                i + 1
            ))
        })?;
        n = (&n << 1) * p;
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub s: u32,
    /// Bit length of `n_s` (the value itself can be millions of digits).
    pub n_s_bits: u64,
    #[serde(serialize_with = "ser_decimal")]
    pub tower_s: BigUint,
    /// `n_s >= 2_s`.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderChain {
    pub steps: Vec<ChainStep>,
}

impl LadderChain {
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

/// Checks `n_s >= 2_s = 2_s(1)` exactly for `s <= s_max <= 3`.
///
/// With `r = 2^s` colors the ladder witness gives
/// `B(r) > n_s >= 2_s`.
pub fn ladder_lower_bound_check(s_max: u32) -> Result<LadderChain> {
    if s_max > 3 {
        return Err(Error::MagnitudeOverflow(format!(
            "n_{s_max} is not representable; the chain stops at s = 3"
        )));
    }
    let steps = (0..=s_max)
        .map(|s| {
            let n = ladder_length(s)?;
            let t = tower(s, 1)?;
            Ok(ChainStep {
                s,
                n_s_bits: n.bits(),
                holds: n >= t,
                tower_s: t,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LadderChain { steps })
}

/// `n_s + 1` for `s = floor(log2 r)`, a lower bound on `B_{2^d}(r)`.
pub fn brown_exp2_lower_bound(r: u32) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::invalid("number of colors must be at least 1"));
    }
    Ok(ladder_length(r.ilog2())? + 1u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ardal_values() {
        let v = |m, r| ardal_bound(m, r).unwrap();
        assert_eq!(v(1, 1), BigUint::from(2u32));
        assert_eq!(v(1, 2), BigUint::from(5u32));
        assert_eq!(v(1, 3), BigUint::from(16u32));
        assert_eq!(v(2, 2), BigUint::from(25u32));
        assert!(ardal_bound(0, 1).is_err());
    }

    #[test]
    fn recursion_values() {
        let f = GrowthFn::exp2();
        let v = |r| upper_bound_seq(&f, r).unwrap().value;
        assert_eq!(v(1), BigUint::from(4u32));
        assert_eq!(v(2), BigUint::from(33u32));
        assert_eq!(v(3), BigUint::from(3u32) * (BigUint::one() << 33u32) + 1u32);
        assert!(matches!(upper_bound_seq(&f, 4), Err(Error::MagnitudeOverflow(_))));
    }

    #[test]
    fn recursion_uses_closure_for_tables() {
        let f = GrowthFn::table(vec![5, 1], crate::growth::Tail::Const).unwrap();
        let u = upper_bound_seq(&f, 1).unwrap();
        assert!(u.closure_applied);
        // g(1) = 6
        assert_eq!(u.value, BigUint::from(8u32));
    }

    #[test]
    fn towers() {
        assert_eq!(tower(0, 5).unwrap(), BigUint::from(5u32));
        assert_eq!(tower(3, 1).unwrap(), BigUint::from(16u32));
        assert_eq!(tower(2, 2).unwrap(), BigUint::from(16u32));
        assert_eq!(tower(4, 1).unwrap(), BigUint::from(65536u32));
        assert_eq!(tower(5, 1).unwrap().bits(), 65537);
        assert!(matches!(tower(6, 1), Err(Error::MagnitudeOverflow(_))));
    }

    #[test]
    fn ladder_lengths() {
        assert_eq!(ladder_length(0).unwrap(), BigUint::from(2u32));
        assert_eq!(ladder_length(1).unwrap(), BigUint::from(16u32));
        assert_eq!(ladder_length(2).unwrap(), BigUint::from(2_097_152u32));
        assert_eq!(ladder_length(3).unwrap().bits(), 2_097_175);
        assert!(matches!(ladder_length(4), Err(Error::MagnitudeOverflow(_))));
    }

    #[test]
    fn chain() {
        let c = ladder_lower_bound_check(3).unwrap();
        assert!(c.all_hold());
        assert_eq!(c.steps.len(), 4);
        assert!(ladder_lower_bound_check(4).is_err());
        assert_eq!(brown_exp2_lower_bound(2).unwrap(), BigUint::from(17u32));
        assert_eq!(brown_exp2_lower_bound(3).unwrap(), BigUint::from(17u32));
        assert_eq!(brown_exp2_lower_bound(1).unwrap(), BigUint::from(3u32));
    }
}
