use std::fmt;

use fixedbitset::FixedBitSet;

use crate::universe::AtomId;

/// A set of atoms of one universe, stored as a bitset over atom ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AtomSet {
    bits: FixedBitSet,
}

impl AtomSet {
    pub fn new(universe_len: usize) -> Self {
        AtomSet {
            bits: FixedBitSet::with_capacity(universe_len),
        }
    }

    pub fn full(universe_len: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe_len);
        bits.insert_range(..);
        AtomSet { bits }
    }

    pub fn from_ids(universe_len: usize, ids: impl IntoIterator<Item = AtomId>) -> Self {
        let mut set = AtomSet::new(universe_len);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn universe_len(&self) -> usize {
        self.bits.len()
    }

    /// Returns `true` if the atom was newly inserted.
    pub fn insert(&mut self, id: AtomId) -> bool {
        !self.bits.put(id.index())
    }

    pub fn remove(&mut self, id: AtomId) {
        self.bits.set(id.index(), false);
    }

    #[inline]
    pub fn contains(&self, id: AtomId) -> bool {
        self.bits.contains(id.index())
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.bits.ones().map(AtomId::from_index)
    }

    pub fn to_vec(&self) -> Vec<AtomId> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &AtomSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
