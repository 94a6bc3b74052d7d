//! Fixed-width point sets over `0..n`.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

/// A subset of the points `0..n` of some carrier.
///
/// Serializes as the ascending list of member indices; the carrier width is
/// not part of the wire format.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        PointSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        s.bits.insert_range(..);
        s
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(x);
        s
    }

    /// Builds a set from member indices.
    ///
    /// Panics if an index is `>= n`; callers validating untrusted input
    /// should go through [`PointSet::try_from_indices`].
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut s = Self::empty(n);
        for x in members {
            s.insert(x);
        }
        s
    }

    /// Like [`PointSet::from_indices`] but returns the first out-of-range index.
    pub fn try_from_indices<I: IntoIterator<Item = usize>>(
        n: usize,
        members: I,
    ) -> Result<Self, usize> {
        let mut s = Self::empty(n);
        for x in members {
            if x >= n {
                return Err(x);
            }
            s.insert(x);
        }
        Ok(s)
    }

    /// Decodes the low `n` bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        Self::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1))
    }

    /// Width of the carrier, not the number of members.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn insert(&mut self, x: usize) {
        assert!(
            x < self.universe(),
            "point {x} outside carrier 0..{}",
            self.universe()
        );
        self.bits.insert(x);
    }

    pub fn remove(&mut self, x: usize) {
        self.bits.set(x, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.ones().next()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &PointSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> PointSet {
        let mut s = self.clone();
        s.bits.toggle_range(..);
        s
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Low 64 bits as an integer mask; only meaningful for `universe() <= 64`.
    pub fn to_mask(&self) -> u64 {
        self.iter().filter(|&i| i < 64).fold(0, |m, i| m | 1 << i)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_and_mask() {
        let s = PointSet::from_indices(5, [0, 3]);
        assert_eq!(s.complement().to_vec(), vec![1, 2, 4]);
        assert_eq!(s.to_mask(), 0b01001);
        assert_eq!(PointSet::from_mask(5, 0b01001), s);
    }

    #[test]
    fn out_of_range_is_reported() {
        assert_eq!(PointSet::try_from_indices(3, [0, 7]), Err(7));
    }

    #[test]
    fn serializes_as_index_list() {
        let s = PointSet::from_indices(8, [1, 6]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,6]");
    }
}
