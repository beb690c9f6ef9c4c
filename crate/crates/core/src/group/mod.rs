//! Permutations of a truncated universe and the group `𝒢` they form.
//!
//! A member of `𝒢` maps every stratum onto itself, preserves `pr₁`, and
//! commutes with `pr₂`. Permutations are stored as dense arrays over atom
//! ids, so composition and membership are linear scans.

mod extension;
mod mover;
mod orbits;

use std::fmt;

use thiserror::Error;

use crate::atomset::AtomSet;
use crate::universe::{AtomId, Universe};

pub use extension::{embed_canonically, equivariant_extension, index_transposition};
pub use mover::{fixing_generators, mover, mover_outside};
pub use orbits::{orbits, UnionFind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("permutations belong to different universes")]
    UniverseMismatch,
    #[error("map is not a member of the truncated group: {0}")]
    NotAMember(MembershipViolation),
    #[error("no base or surjective family at level {level} for element {element}")]
    NotAFamily { level: usize, element: usize },
    #[error("index {index} is outside the index budget {index_budget}")]
    IndexOutOfRange { index: usize, index_budget: usize },
    #[error("transposition of index {0} with itself")]
    DegenerateTransposition(usize),
    #[error("atom {0} lies in the closure of the fixed set")]
    InClosure(AtomId),
    #[error(
        "no fresh index below {index_budget} to move atom {atom}; an index budget of at least {suggested} is needed"
    )]
    IndexBudgetExhausted {
        atom: AtomId,
        index_budget: usize,
        suggested: usize,
    },
    #[error("supplied set is not closed")]
    NotClosed,
    #[error("extension moves atom {0} of the closed set")]
    ExtensionMovesClosedSet(AtomId),
}

/// First condition a candidate map fails, with the witness atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipViolation {
    WrongLength { expected: usize, found: usize },
    OutOfRange(AtomId),
    NotBijective(AtomId),
    LevelChanged(AtomId),
    ElementChanged(AtomId),
    ParentMismatch(AtomId),
}

impl fmt::Display for MembershipViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipViolation::WrongLength { expected, found } => {
                write!(f, "map has {found} entries, expected {expected}")
            }
            MembershipViolation::OutOfRange(a) => write!(f, "image of {a} is out of range"),
            MembershipViolation::NotBijective(a) => write!(f, "{a} is hit twice"),
            MembershipViolation::LevelChanged(a) => write!(f, "{a} changes stratum"),
            MembershipViolation::ElementChanged(a) => write!(f, "{a} changes pr1"),
            MembershipViolation::ParentMismatch(a) => {
                write!(f, "pr2(f({a})) differs from f(pr2({a}))")
            }
        }
    }
}

/// Checks a map on the prefix `A_level` (the whole universe when `level ≥ N`).
pub fn check_partial_member(
    u: &Universe,
    map: &[AtomId],
    level: usize,
) -> Result<(), MembershipViolation> {
    let len = u.stratum_len(level);
    if map.len() != len {
        return Err(MembershipViolation::WrongLength {
            expected: len,
            found: map.len(),
        });
    }
    let mut hit = vec![false; len];
    for (i, &image) in map.iter().enumerate() {
        let a = AtomId::from_index(i);
        if image.index() >= len {
            return Err(MembershipViolation::OutOfRange(a));
        }
        if std::mem::replace(&mut hit[image.index()], true) {
            return Err(MembershipViolation::NotBijective(image));
        }
        let (src, dst) = (u.atom(a), u.atom(image));
        if src.level() != dst.level() {
            return Err(MembershipViolation::LevelChanged(a));
        }
        if src.element() != dst.element() {
            return Err(MembershipViolation::ElementChanged(a));
        }
        if src.parent().map(|p| map[p.index()]) != dst.parent() {
            return Err(MembershipViolation::ParentMismatch(a));
        }
    }
    Ok(())
}

pub fn check_member(u: &Universe, map: &[AtomId]) -> Result<(), MembershipViolation> {
    check_partial_member(u, map, u.depth())
}

pub fn is_member(u: &Universe, map: &[AtomId]) -> bool {
    check_member(u, map).is_ok()
}

/// A member of the truncated group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    universe: u64,
    map: Vec<AtomId>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Permutation").field(&self.cycles()).finish()
    }
}

impl Permutation {
    pub fn identity(u: &Universe) -> Self {
        Permutation {
            universe: u.fingerprint(),
            map: u.ids().collect(),
        }
    }

    /// Validates `map` with [`check_member`].
    pub fn from_map(u: &Universe, map: Vec<AtomId>) -> Result<Self, GroupError> {
        check_member(u, &map).map_err(GroupError::NotAMember)?;
        Ok(Permutation {
            universe: u.fingerprint(),
            map,
        })
    }

    /// Builds from disjoint cycles; atoms not mentioned are fixed.
    pub fn from_cycles(u: &Universe, cycles: &[Vec<AtomId>]) -> Result<Self, GroupError> {
        let mut map: Vec<AtomId> = u.ids().collect();
        let mut seen = u.empty_set();
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a.index() >= u.len() {
                    return Err(GroupError::NotAMember(MembershipViolation::OutOfRange(a)));
                }
                if !seen.insert(a) {
                    return Err(GroupError::NotAMember(MembershipViolation::NotBijective(a)));
                }
                map[a.index()] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_map(u, map)
    }

    pub(crate) fn from_map_unchecked(u: &Universe, map: Vec<AtomId>) -> Self {
        debug_assert!(is_member(u, &map));
        Permutation {
            universe: u.fingerprint(),
            map,
        }
    }

    pub fn universe_fingerprint(&self) -> u64 {
        self.universe
    }

    pub fn belongs_to(&self, u: &Universe) -> bool {
        self.universe == u.fingerprint() && self.map.len() == u.len()
    }

    #[inline]
    pub fn apply(&self, a: AtomId) -> AtomId {
        self.map[a.index()]
    }

    pub fn as_slice(&self) -> &[AtomId] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, a)| a.index() == i)
    }

    pub fn moves(&self, a: AtomId) -> bool {
        self.apply(a) != a
    }

    pub fn fixes_all(&self, set: &AtomSet) -> bool {
        set.iter().all(|a| !self.moves(a))
    }

    /// Atoms moved by the permutation, ascending.
    pub fn support(&self) -> Vec<AtomId> {
        self.map
            .iter()
            .enumerate()
            .filter(|(i, a)| a.index() != *i)
            .map(|(i, _)| AtomId::from_index(i))
            .collect()
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, GroupError> {
        if self.universe != other.universe || self.map.len() != other.map.len() {
            return Err(GroupError::UniverseMismatch);
        }
        Ok(Permutation {
            universe: self.universe,
            map: other.map.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = self.map.clone();
        for (i, &image) in self.map.iter().enumerate() {
            map[image.index()] = AtomId::from_index(i);
        }
        Permutation {
            universe: self.universe,
            map,
        }
    }

    /// Disjoint cycles of length ≥ 2, each starting at its least atom, sorted
    /// by that atom.
    pub fn cycles(&self) -> Vec<Vec<AtomId>> {
        let mut visited = vec![false; self.map.len()];
        let mut cycles = Vec::new();
        for start in 0..self.map.len() {
            if visited[start] || self.map[start].index() == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(AtomId::from_index(x));
                x = self.map[x].index();
            }
            cycles.push(cycle);
        }
        cycles
    }
}
