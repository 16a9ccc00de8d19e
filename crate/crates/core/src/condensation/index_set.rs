use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of `{1, ..., k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSet {
    k: usize,
    members: BTreeSet<usize>,
}

impl IndexSet {
    pub fn new(k: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i == 0 || i > k) {
            return Err(Error::IndexOutOfRange { index: bad, k });
        }
        Ok(IndexSet { k, members })
    }

    pub fn empty(k: usize) -> Self {
        IndexSet { k, members: BTreeSet::new() }
    }

    pub fn full(k: usize) -> Self {
        IndexSet { k, members: (1..=k).collect() }
    }

    pub fn singleton(k: usize, j: usize) -> Result<Self> {
        Self::new(k, [j])
    }

    /// The subset whose members are the set bits of `mask` (bit `i-1` for `i`).
    pub fn from_mask(k: usize, mask: u64) -> Self {
        IndexSet { k, members: (1..=k).filter(|i| mask >> (i - 1) & 1 == 1).collect() }
    }

    /// All `2^k` subsets in mask order.
    pub fn all(k: usize) -> impl Iterator<Item = IndexSet> {
        (0..1u64 << k).map(move |m| IndexSet::from_mask(k, m))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet { k: self.k, members: (1..=self.k).filter(|i| !self.members.contains(i)).collect() }
    }

    fn same_ground(&self, other: &IndexSet) -> Result<()> {
        if self.k != other.k {
            return Err(Error::GroundSetMismatch(self.k, other.k));
        }
        Ok(())
    }

    /// `self - other`.
    pub fn minus(&self, other: &IndexSet) -> Result<IndexSet> {
        self.same_ground(other)?;
        Ok(IndexSet { k: self.k, members: self.members.difference(&other.members).copied().collect() })
    }

    pub fn intersect(&self, other: &IndexSet) -> Result<IndexSet> {
        self.same_ground(other)?;
        Ok(IndexSet { k: self.k, members: self.members.intersection(&other.members).copied().collect() })
    }

    pub fn union(&self, other: &IndexSet) -> Result<IndexSet> {
        self.same_ground(other)?;
        Ok(IndexSet { k: self.k, members: self.members.union(&other.members).copied().collect() })
    }

    /// `(self - other) ∪ (other - self)`.
    pub fn symdiff(&self, other: &IndexSet) -> Result<IndexSet> {
        self.same_ground(other)?;
        Ok(IndexSet { k: self.k, members: self.members.symmetric_difference(&other.members).copied().collect() })
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.members.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}
