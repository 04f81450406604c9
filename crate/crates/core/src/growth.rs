//! Growth functions `f: N -> N` used as largeness thresholds.
//!
//! A [`GrowthFn`] is built from a small grammar of shapes (linear, base-2
//! exponential, finite lookup table with a tail rule, and the running-sum
//! closure of another function). Every shape evaluates on all naturals. The
//! `nondecreasing` flag is established at construction: linear, exponential
//! and closure shapes are monotone by construction, tables are checked.
//!
//! The textual form is
//! `id | linear:<m> | exp2 | table:<v0>,<v1>,...[;tail=const|linear] | closure:<spec>`
//! and [`fmt::Display`] emits the canonical form (`id` is printed as
//! `linear:1`, tables always carry their tail).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest bit length any exact evaluation is allowed to produce.
pub const DEFAULT_BIT_CAP: u64 = 1 << 25;

/// Iterated summation limit for closures that have no closed form.
const CLOSURE_SUM_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Repeat the last table value.
    Const,
    /// Continue with the difference of the last two values (floored at 0).
    Linear,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GrowthSpec {
    Linear { slope: u64 },
    Exp2,
    Table { values: Vec<u64>, tail: Tail },
    Closure(Box<GrowthSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrowthFn {
    spec: GrowthSpec,
    nondecreasing: bool,
}

impl GrowthFn {
    /// `d -> slope * d`.
    pub fn linear(slope: u64) -> Result<Self> {
        if slope == 0 {
            return Err(Error::invalid("linear slope must be at least 1"));
        }
        Ok(GrowthFn {
            spec: GrowthSpec::Linear { slope },
            nondecreasing: true,
        })
    }

    /// `d -> 2^d`.
    pub fn exp2() -> Self {
        GrowthFn {
            spec: GrowthSpec::Exp2,
            nondecreasing: true,
        }
    }

    /// `values[i]` at argument `i`, extended past the table by `tail`.
    pub fn table(values: Vec<u64>, tail: Tail) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("lookup table must have at least one value"));
        }
        let nondecreasing = values.windows(2).all(|w| w[0] <= w[1]);
        Ok(GrowthFn {
            spec: GrowthSpec::Table { values, tail },
            nondecreasing,
        })
    }

    /// `g(n) = f(0) + f(1) + ... + f(n)`; always nondecreasing and `g >= f`.
    pub fn monotone_closure(&self) -> GrowthFn {
        GrowthFn {
            spec: GrowthSpec::Closure(Box::new(self.spec.clone())),
            nondecreasing: true,
        }
    }

    pub fn spec(&self) -> &GrowthSpec {
        &self.spec
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.nondecreasing
    }

    /// The slope when this is a linear function `d -> m*d`.
    pub fn linear_slope(&self) -> Option<u64> {
        match self.spec {
            GrowthSpec::Linear { slope } => Some(slope),
            _ => None,
        }
    }

    /// Evaluates `f(d)`, saturating at `u64::MAX`.
    pub fn eval(&self, d: u64) -> u64 {
        eval_sat(&self.spec, d)
    }

    /// Exact evaluation at an arbitrary-precision argument.
    pub fn eval_big(&self, n: &BigUint) -> Result<BigUint> {
        eval_big(&self.spec, n, DEFAULT_BIT_CAP)
    }

    pub fn eval_big_with_cap(&self, n: &BigUint, bit_cap: u64) -> Result<BigUint> {
        eval_big(&self.spec, n, bit_cap)
    }

    /// Checks `f(a) <= f(a+1)` on `0..=limit`.
    pub fn check_nondecreasing_up_to(&self, limit: u64) -> bool {
        let mut prev = self.eval(0);
        for d in 1..=limit {
            let cur = self.eval(d);
            if cur < prev {
                return false;
            }
            prev = cur;
        }
        true
    }
}

fn table_tail_step(values: &[u64]) -> (u64, bool) {
    // (magnitude, increasing)
    match values {
        [.., a, b] if b >= a => (b - a, true),
        [.., a, b] => (a - b, false),
        _ => (0, true),
    }
}

fn sat(x: u128) -> u64 {
    u64::try_from(x).unwrap_or(u64::MAX)
}

fn eval_sat(spec: &GrowthSpec, d: u64) -> u64 {
    match spec {
        GrowthSpec::Linear { slope } => slope.saturating_mul(d),
        GrowthSpec::Exp2 => {
            if d >= 64 {
                u64::MAX
            } else {
                1u64 << d
            }
        }
        GrowthSpec::Table { values, tail } => {
            let last_idx = values.len() as u64 - 1;
            if d <= last_idx {
                return values[d as usize];
            }
            let last = *values.last().unwrap();
            match tail {
                Tail::Const => last,
                Tail::Linear => {
                    let (step, up) = table_tail_step(values);
                    let k = (d - last_idx) as u128;
                    if up {
                        sat(last as u128 + k * step as u128)
                    } else {
                        sat((last as u128).saturating_sub(k * step as u128))
                    }
                }
            }
        }
        GrowthSpec::Closure(inner) => closure_sat(inner, d),
    }
}

fn closure_sat(inner: &GrowthSpec, n: u64) -> u64 {
    let n128 = n as u128;
    match inner {
        GrowthSpec::Linear { slope } => {
            let tri = n128 * (n128 + 1) / 2;
            sat((*slope as u128).saturating_mul(tri))
        }
        GrowthSpec::Exp2 => {
            if n >= 63 {
                u64::MAX
            } else {
                (1u64 << (n + 1)) - 1
            }
        }
        GrowthSpec::Table { values, tail } => {
            let mut acc: u128 = 0;
            let upto = n.min(values.len() as u64 - 1) as usize;
            for &v in &values[..=upto] {
                acc += v as u128;
            }
            let last_idx = values.len() as u64 - 1;
            if n > last_idx {
                let k = (n - last_idx) as u128;
                let last = *values.last().unwrap() as u128;
                acc = acc.saturating_add(tail_sum_u128(last, k, *tail, values));
            }
            sat(acc)
        }
        GrowthSpec::Closure(_) => {
            let mut acc: u64 = 0;
            for i in 0..=n {
                acc = acc.saturating_add(eval_sat(inner, i));
                if acc == u64::MAX {
                    break;
                }
            }
            acc
        }
    }
}

/// Sum of the `k` tail values following the last table entry.
fn tail_sum_u128(last: u128, k: u128, tail: Tail, values: &[u64]) -> u128 {
    match tail {
        Tail::Const => k.saturating_mul(last),
        Tail::Linear => {
            let (step, up) = table_tail_step(values);
            let step = step as u128;
            if up {
                k.saturating_mul(last)
                    .saturating_add(step.saturating_mul(k.saturating_mul(k + 1) / 2))
            } else {
                let j = if step == 0 { k } else { k.min(last / step) };
                j * last - step * (j * (j + 1) / 2)
            }
        }
    }
}

fn pow2_big(n: &BigUint, bit_cap: u64) -> Result<BigUint> {
    let e = n
        .to_u64()
        .filter(|&e| e < bit_cap)
        .ok_or_else(|| Error::MagnitudeOverflow(format!("2^{n} exceeds the {bit_cap}-bit cap")))?;
    Ok(BigUint::one() << e)
}

fn eval_big(spec: &GrowthSpec, n: &BigUint, bit_cap: u64) -> Result<BigUint> {
    match spec {
        GrowthSpec::Linear { slope } => Ok(n * BigUint::from(*slope)),
        GrowthSpec::Exp2 => pow2_big(n, bit_cap),
        GrowthSpec::Table { values, tail } => {
            let last_idx = values.len() as u64 - 1;
            if let Some(i) = n.to_u64().filter(|&i| i <= last_idx) {
                return Ok(BigUint::from(values[i as usize]));
            }
            let last = BigUint::from(*values.last().unwrap());
            match tail {
                Tail::Const => Ok(last),
                Tail::Linear => {
                    let (step, up) = table_tail_step(values);
                    let k = n - BigUint::from(last_idx);
                    let delta = k * BigUint::from(step);
                    if up {
                        Ok(last + delta)
                    } else if delta >= last {
                        Ok(BigUint::zero())
                    } else {
                        Ok(last - delta)
                    }
                }
            }
        }
        GrowthSpec::Closure(inner) => closure_big(inner, n, bit_cap),
    }
}

fn closure_big(inner: &GrowthSpec, n: &BigUint, bit_cap: u64) -> Result<BigUint> {
    let one = BigUint::one();
    match inner {
        GrowthSpec::Linear { slope } => Ok(BigUint::from(*slope) * n * (n + &one) / 2u32),
        GrowthSpec::Exp2 => Ok(pow2_big(&(n + &one), bit_cap)? - one),
        GrowthSpec::Table { values, tail } => {
            let last_idx = values.len() as u64 - 1;
            let upto = n.to_u64().map_or(last_idx, |x| x.min(last_idx)) as usize;
            let mut acc: BigUint = values[..=upto].iter().map(|&v| BigUint::from(v)).sum();
            if *n > BigUint::from(last_idx) {
                let k = n - BigUint::from(last_idx);
                let last = BigUint::from(*values.last().unwrap());
                acc += match tail {
                    Tail::Const => k * last,
                    Tail::Linear => {
                        let (step, up) = table_tail_step(values);
                        let step = BigUint::from(step);
                        if up {
                            &k * &last + &step * &k * (&k + &one) / 2u32
                        } else {
                            let j = if step.is_zero() {
                                k
                            } else {
                                k.min(&last / &step)
                            };
                            &j * &last - &step * &j * (&j + &one) / 2u32
                        }
                    }
                };
            }
            Ok(acc)
        }
        GrowthSpec::Closure(_) => {
            let limit = n.to_u64().filter(|&x| x <= CLOSURE_SUM_LIMIT).ok_or_else(|| {
                Error::MagnitudeOverflow(format!(
                    "nested closure has no closed form; argument {n} exceeds the summation limit"
                ))
            })?;
            let mut acc = BigUint::zero();
            for i in 0..=limit {
                acc += eval_big(inner, &BigUint::from(i), bit_cap)?;
            }
            Ok(acc)
        }
    }
}

impl fmt::Display for GrowthSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthSpec::Linear { slope } => write!(f, "linear:{slope}"),
            GrowthSpec::Exp2 => f.write_str("exp2"),
            GrowthSpec::Table { values, tail } => {
                f.write_str("table:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                match tail {
                    Tail::Const => f.write_str(";tail=const"),
                    Tail::Linear => f.write_str(";tail=linear"),
                }
            }
            GrowthSpec::Closure(inner) => write!(f, "closure:{inner}"),
        }
    }
}

impl fmt::Display for GrowthFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

impl FromStr for GrowthFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_at(s, 0)
    }
}

fn perr(offset: usize, msg: impl Into<String>) -> Error {
    Error::parse(1, offset + 1, msg)
}

fn parse_at(s: &str, offset: usize) -> Result<GrowthFn> {
    if s == "id" {
        return GrowthFn::linear(1);
    }
    if s == "exp2" {
        return Ok(GrowthFn::exp2());
    }
    if let Some(rest) = s.strip_prefix("closure:") {
        return Ok(parse_at(rest, offset + 8)?.monotone_closure());
    }
    if let Some(rest) = s.strip_prefix("linear:") {
        let slope: u64 = rest
            .parse()
            .map_err(|_| perr(offset + 7, format!("expected a slope, found {rest:?}")))?;
        return GrowthFn::linear(slope).map_err(|e| perr(offset + 7, e.to_string()));
    }
    if let Some(rest) = s.strip_prefix("table:") {
        let base = offset + 6;
        let (body, tail, tail_at) = match rest.find(';') {
            Some(i) => (&rest[..i], Some(&rest[i + 1..]), base + i + 1),
            None => (rest, None, 0),
        };
        let tail = match tail {
            None | Some("tail=const") => Tail::Const,
            Some("tail=linear") => Tail::Linear,
            Some(other) => {
                return Err(perr(
                    tail_at,
                    format!("expected tail=const or tail=linear, found {other:?}"),
                ))
            }
        };
        let mut values = Vec::new();
        let mut col = base;
        for tok in body.split(',') {
            let v: u64 = tok
                .parse()
                .map_err(|_| perr(col, format!("expected a table value, found {tok:?}")))?;
            values.push(v);
            col += tok.len() + 1;
        }
        return GrowthFn::table(values, tail).map_err(|e| perr(base, e.to_string()));
    }
    Err(perr(
        offset,
        format!("unknown growth function {s:?} (expected id, linear:<m>, exp2, table:..., closure:...)"),
    ))
}
