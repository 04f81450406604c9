//! Finite Ramsey-type computations around Brown's lemma and van der
//! Waerden's theorem.
//!
//! * [`gaps`]: gap size, windows, bounded-gap runs, gap spectra.
//! * [`checker`]: large homogeneous sets, the star condition, certificates.
//! * [`search`]: exact Brown and van der Waerden numbers by pruned DFS.
//! * [`constructions`]: diagonal coloring, the witness ladder, piecewise
//!   syndetic generators, and arbitrary-precision bound formulas.
//! * [`vdw`]: arithmetic progressions in sets and colorings.
//! * [`codec`]: the plain / run-length coloring file format.

pub mod certificate;
pub mod checker;
pub mod codec;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod gaps;
pub mod growth;
pub mod search;
pub mod set;
pub mod vdw;

pub use certificate::{ClassCertificate, GapTriple, WitnessCertificate};
pub use checker::{
    has_large_homogeneous, has_large_homogeneous_bruteforce, is_witness, satisfies_star,
    StarReport, Violation, Window,
};
pub use coloring::Coloring;
pub use error::{Error, Result};
pub use gaps::{gap_size, gap_spectrum, max_run_size, windows, GapSpectrum, SpectrumEntry};
pub use growth::{GrowthFn, GrowthSpec, Tail};
pub use search::{
    brown_number, confirm_no_vdw_witness, confirm_no_witness, vdw_number, Budget, OutcomeKind, SearchConfig,
    SearchOutcome,
};
pub use set::FiniteSet;

/// `g(n) = f(0) + ... + f(n)`, the nondecreasing majorant of `f`.
pub fn monotone_closure(f: &GrowthFn) -> GrowthFn {
    f.monotone_closure()
}
