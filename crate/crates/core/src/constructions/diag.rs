//! The diagonal coloring `D(d, x) = floor(x / d) mod 2`: alternating blocks
//! of `d` zeros and `d` ones, so a homogeneous set with gaps `<= d` never
//! leaves its block.

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::gaps::max_run_size_unchecked;

pub fn diag(d: u64, x: u64) -> Result<u32> {
    if d == 0 {
        return Err(Error::invalid("block width d must be at least 1"));
    }
    Ok(((x / d) % 2) as u32)
}

/// `D(d, 0), ..., D(d, n - 1)` as a 2-coloring.
pub fn diag_prefix(d: u64, n: usize) -> Result<Coloring> {
    if d == 0 {
        return Err(Error::invalid("block width d must be at least 1"));
    }
    let values = (0..n as u64).map(|x| ((x / d) % 2) as u32).collect();
    Coloring::new(2, values)
}

/// Largest homogeneous set with gaps `<= d` in `D(d, .)` restricted to
/// `0..n`. Needs `n >= 2d` so that both colors have a full block.
pub fn diag_bound_check(d: u64, n: usize) -> Result<u64> {
    if d == 0 {
        return Err(Error::invalid("block width d must be at least 1"));
    }
    if (n as u64) < d.saturating_mul(2) {
        return Err(Error::InsufficientPrefix(format!(
            "prefix of length {n} is shorter than 2d = {}",
            d.saturating_mul(2)
        )));
    }
    let c = diag_prefix(d, n)?;
    Ok(c
        .color_classes()
        .iter()
        .map(|h| max_run_size_unchecked(h, d) as u64)
        .max()
        .unwrap_or(0))
}
