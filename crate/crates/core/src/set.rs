//! Membership sets over canonical element indices.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    bits: FixedBitSet,
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet { bits: FixedBitSet::with_capacity(universe) }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElemSet { bits }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut set = Self::empty(universe);
        for x in items {
            set.insert(x);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    /// Returns true when `x` was not already present.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        !self.bits.put(x)
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

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ElemSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElemSet { bits }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElemSet { bits }
    }

    pub fn complement(&self) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        ElemSet { bits }
    }

    /// Least element of `self` that is also in `other`.
    pub fn first_common(&self, other: &ElemSet) -> Option<usize> {
        self.bits.intersection(&other.bits).next()
    }

    /// Canonical lattice order: by size, then lexicographically by sorted members.
    pub fn lattice_cmp(&self, other: &ElemSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
