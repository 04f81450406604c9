//! Machine-checkable witness certificates.
//!
//! A certificate carries the coloring (run-length encoded), the canonical
//! growth spec, and for each color class the triples `(d, longest d-run,
//! f(d))`. Validation rebuilds everything from the coloring and demands an
//! exact match, so a certificate is trusted only as far as the recomputation.

use serde::{Deserialize, Serialize};

use crate::checker::is_witness;
use crate::codec::{parse_rle_string, rle_string};
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::growth::GrowthFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapTriple {
    pub gap: u64,
    pub max_run: u64,
    /// `f(gap)`, saturated at `u64::MAX`.
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCertificate {
    pub color: u32,
    pub size: u64,
    pub triples: Vec<GapTriple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub palette: u32,
    pub length: u64,
    pub growth: String,
    pub coloring_rle: String,
    pub classes: Vec<ClassCertificate>,
}

impl WitnessCertificate {
    pub(crate) fn new(coloring: &Coloring, f: &GrowthFn, classes: Vec<ClassCertificate>) -> Self {
        WitnessCertificate {
            palette: coloring.palette(),
            length: coloring.len() as u64,
            growth: f.to_string(),
            coloring_rle: rle_string(coloring.values()),
            classes,
        }
    }

    pub fn coloring(&self) -> Result<Coloring> {
        let values = parse_rle_string(&self.coloring_rle)?;
        if values.len() as u64 != self.length {
            return Err(Error::invalid(format!(
                "certificate coloring has {} positions, declares {}",
                values.len(),
                self.length
            )));
        }
        Coloring::new(self.palette, values)
    }

    pub fn growth_fn(&self) -> Result<GrowthFn> {
        self.growth.parse()
    }

    /// Recomputes the certificate from its own coloring and growth spec.
    pub fn validate(&self) -> Result<()> {
        let coloring = self.coloring()?;
        let f = self.growth_fn()?;
        match is_witness(&coloring, &f)? {
            Some(fresh) if fresh == *self => Ok(()),
            Some(_) => Err(Error::invalid(
                "certificate triples do not match the recomputed ones",
            )),
            None => Err(Error::invalid(
                "certificate coloring has a large homogeneous set",
            )),
        }
    }

    /// Canonical JSON text (pretty-printed, trailing newline).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }
}
