use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of naturals stored as a strictly increasing sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteSet(Vec<u64>);

impl FiniteSet {
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "elements must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(FiniteSet(elements))
    }

    /// Sorts and deduplicates arbitrary input.
    pub fn from_unsorted(mut elements: Vec<u64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        FiniteSet(elements)
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<u64>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        FiniteSet(elements)
    }

    pub fn empty() -> Self {
        FiniteSet(Vec::new())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    /// `self + t`, elementwise.
    pub fn shifted(&self, t: u64) -> FiniteSet {
        FiniteSet(self.0.iter().map(|&x| x + t).collect())
    }

    /// Consecutive differences, in order.
    pub fn gaps(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.windows(2).map(|w| w[1] - w[0])
    }
}

impl Deref for FiniteSet {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl TryFrom<Vec<u64>> for FiniteSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        FiniteSet::new(v)
    }
}

impl From<FiniteSet> for Vec<u64> {
    fn from(s: FiniteSet) -> Vec<u64> {
        s.0
    }
}

impl FromIterator<u64> for FiniteSet {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        FiniteSet::from_unsorted(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsorted_and_duplicates() {
        assert!(FiniteSet::new(vec![1, 1]).is_err());
        assert!(FiniteSet::new(vec![2, 1]).is_err());
        assert!(FiniteSet::new(vec![]).is_ok());
    }

    #[test]
    fn from_unsorted_normalizes() {
        let s = FiniteSet::from_unsorted(vec![5, 1, 5, 3]);
        assert_eq!(s.as_slice(), &[1, 3, 5]);
        assert_eq!(s.gaps().collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(s.shifted(10).as_slice(), &[11, 13, 15]);
    }
}
