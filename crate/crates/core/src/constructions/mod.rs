//! Explicit constructions and bound formulas.
//!
//! * [`diag`]: the coloring `D(d, x) = floor(x / d) mod 2`.
//! * [`ladder`]: witness colorings `C_s` for `f = 2^d` with `2^s` colors.
//! * [`ps`]: block sequences with bounded gaps, the syndetic / thick
//!   decomposition, and extraction of bounded-gap subsets.
//! * [`bounds`]: exact upper bounds for `B_f(r)`, towers, ladder lengths.

pub mod bounds;
pub mod diag;
pub mod ladder;
pub mod ps;

pub use bounds::{
    ardal_bound, brown_upper_bound, ladder_length, ladder_lower_bound_check, tower,
    tower_with_cap, upper_bound_seq, UpperBound,
};
pub use diag::{diag, diag_bound_check, diag_prefix};
pub use ladder::{ladder, ladder_verify, LadderStage};
pub use ps::{decompose_ps, extract_homogeneous_ps, ps_generate, PsSequence};
