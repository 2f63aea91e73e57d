use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Strictly increasing set of odd indices, stored as a bitmask (bit `i` is `θ^{i+1}`).
///
/// Ordered by length, then lexicographically on the increasing index lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);
    pub const MAX_ODD: usize = 31;

    pub fn from_bits(bits: u32) -> Self {
        MultiIndex(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn single(i: usize) -> Self {
        assert!(i < Self::MAX_ODD);
        MultiIndex(1 << i)
    }

    /// Set of zero-based indices; `None` on repetition.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Option<Self> {
        let mut bits = 0u32;
        for i in indices {
            if i >= Self::MAX_ODD || bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(MultiIndex(bits))
    }

    /// `(-1)^{inversions}` and the index set of the product `θ^{i_1}⋯θ^{i_k}` in the given order.
    pub fn from_sequence(indices: &[usize]) -> Option<(Self, bool)> {
        let set = Self::from_indices(indices.iter().copied())?;
        let mut inversions = 0;
        for (a, &i) in indices.iter().enumerate() {
            inversions += indices[a + 1..].iter().filter(|&&j| j < i).count();
        }
        Some((set, inversions % 2 == 1))
    }

    /// All subsets of `{0..q}` in ascending order.
    pub fn all(q: usize) -> Vec<MultiIndex> {
        let mut v: Vec<_> = (0..1u32 << q).map(MultiIndex).collect();
        v.sort();
        v
    }

    /// All subsets of size `k` of `{0..q}` in ascending order.
    pub fn of_len(q: usize, k: usize) -> Vec<MultiIndex> {
        Self::all(q).into_iter().filter(|i| i.len() == k).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < Self::MAX_ODD && self.0 & (1 << i) != 0
    }

    pub fn is_subset(self, other: MultiIndex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: MultiIndex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }

    pub fn difference(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 & !other.0)
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Whether every index is below `q`.
    pub fn fits(self, q: usize) -> bool {
        q >= 32 || self.0 >> q == 0
    }

    /// Zero-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// `θ^I θ^J = ±θ^{I∪J}`; returns the union and whether the sign is negative,
    /// or `None` when the sets overlap.
    pub fn wedge(self, other: MultiIndex) -> Option<(MultiIndex, bool)> {
        if !self.is_disjoint(other) {
            return None;
        }
        // Each j in J must pass every i in I with i > j.
        let mut swaps = 0u32;
        for j in other.indices() {
            swaps += (self.0 >> (j + 1)).count_ones();
        }
        Some((self.union(other), swaps % 2 == 1))
    }

    /// Shift every index by `offset`.
    pub fn shifted(self, offset: usize) -> MultiIndex {
        MultiIndex(self.0 << offset)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for i in self.indices() {
            write!(f, "t{}", i + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
