//! Fixed-universe vertex sets backed by dense bit vectors.
//!
//! Every set remembers the size of the universe it lives in. Combining sets
//! from different universes is a programming error and panics; the solvers
//! never mix universes, so the check is purely defensive.

use bitvec::prelude::*;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// A subset of the vertices `0..n` of a fixed game graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: BitVec,
}

impl VertexSet {
    /// The empty set over a universe of `n` vertices.
    pub fn empty(n: usize) -> Self {
        VertexSet { bits: bitvec![0; n] }
    }

    /// The full set `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet { bits: bitvec![1; n] }
    }

    /// Builds a set over `0..n` from an iterator of vertex ids.
    ///
    /// Panics if an id is out of range.
    pub fn from_ids<I: IntoIterator<Item = usize>>(n: usize, ids: I) -> Self {
        let mut s = VertexSet::empty(n);
        for v in ids {
            s.insert(v);
        }
        s
    }

    /// The one-element set `{v}` over `0..n`.
    pub fn singleton(n: usize, v: usize) -> Self {
        VertexSet::from_ids(n, [v])
    }

    /// Size of the universe this set ranges over.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits[v]
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.bits.len(), "vertex {v} outside universe 0..{}", self.bits.len());
        self.bits.set(v, true);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.bits.len(), "vertex {v} outside universe 0..{}", self.bits.len());
        self.bits.set(v, false);
    }

    /// Number of members.
    pub fn count(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.not_any()
    }

    pub fn is_full(&self) -> bool {
        self.bits.all()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check(other);
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.check(other);
        self.iter().all(|v| !other.contains(v))
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.check(other);
        self.bits |= &other.bits;
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.check(other);
        self.bits &= &other.bits;
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        self.check(other);
        for v in other.iter() {
            self.bits.set(v, false);
        }
    }

    pub fn complement(&self) -> VertexSet {
        let mut bits = self.bits.clone();
        for mut b in bits.iter_mut() {
            *b = !*b;
        }
        VertexSet { bits }
    }

    fn check(&self, other: &VertexSet) {
        assert_eq!(
            self.bits.len(),
            other.bits.len(),
            "vertex sets from different universes ({} vs {})",
            self.bits.len(),
            other.bits.len()
        );
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl BitAnd for &VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(rhs);
        out
    }
}

impl BitOr for &VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(rhs);
        out
    }
}

impl Sub for &VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.subtract(rhs);
        out
    }
}

impl Not for &VertexSet {
    type Output = VertexSet;
    fn not(self) -> VertexSet {
        self.complement()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_roundtrip() {
        let a = VertexSet::from_ids(6, [0, 2, 4]);
        let b = VertexSet::from_ids(6, [2, 3]);
        assert_eq!((&a & &b), VertexSet::from_ids(6, [2]));
        assert_eq!((&a | &b), VertexSet::from_ids(6, [0, 2, 3, 4]));
        assert_eq!((&a - &b), VertexSet::from_ids(6, [0, 4]));
        assert_eq!(!&a, VertexSet::from_ids(6, [1, 3, 5]));
        assert_eq!(a.count(), 3);
        assert!(VertexSet::empty(6).is_empty());
        assert!(VertexSet::from_ids(6, [2]).is_subset(&b));
        assert!(a.is_disjoint(&VertexSet::from_ids(6, [1, 5])));
    }

    #[test]
    fn iteration_is_ascending() {
        let a = VertexSet::from_ids(9, [8, 1, 5]);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![1, 5, 8]);
    }

    #[test]
    #[should_panic(expected = "different universes")]
    fn universe_mismatch_panics() {
        let _ = &VertexSet::empty(3) | &VertexSet::empty(4);
    }

    #[test]
    fn debug_format() {
        assert_eq!(format!("{:?}", VertexSet::from_ids(5, [0, 3])), "{0, 3}");
    }
}
