//! The truncated atom hierarchy `T(N, K)`.
//!
//! Level-0 atoms are `⟨0, p, ∅, k⟩` for every element `p` and index `k < K`.
//! A successor atom `⟨n+1, q, a, k⟩` exists for every parent `a ∈ A_n` (any
//! level up to `n`) and element `q` such that either
//!
//! * `pr₁(a) ≺ q`, in which case `k = 0` (an *injective* atom), or
//! * `pr₁(a) ⋠ q` and `pr₁(a) ≼* q`, in which case `k < K` (a *surjective*
//!   atom).
//!
//! Atoms are interned with dense ids in `(level, element, parent, index)`
//! order, so every stratum `A_n` is a prefix of the id range.

use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};

use thiserror::Error;

use crate::atomset::AtomSet;
use crate::order::{DoublyOrderedSet, OrderError};

pub const DEFAULT_SIZE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("index budget must be at least 1")]
    ZeroIndexBudget,
    #[error("universe exceeds the size cap of {cap} atoms while building level {level}")]
    SizeBudgetExceeded { cap: usize, level: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Dense id of an interned atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(u32);

impl AtomId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        AtomId(i as u32)
    }
}

impl fmt::Display for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Which clause of the recursion produced an atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Base,
    /// `pr₁(parent) ≺ pr₁(atom)`; index is always 0.
    Injective,
    /// `pr₁(parent) ⋠ pr₁(atom)` and `pr₁(parent) ≼* pr₁(atom)`.
    Surjective,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    level: usize,
    element: usize,
    parent: Option<AtomId>,
    index: usize,
    kind: AtomKind,
}

impl Atom {
    /// `pr₀`
    pub fn level(&self) -> usize {
        self.level
    }

    /// `pr₁`, as a carrier position.
    pub fn element(&self) -> usize {
        self.element
    }

    /// `pr₂`; `None` for level-0 atoms.
    pub fn parent(&self) -> Option<AtomId> {
        self.parent
    }

    /// `pr₃`
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn kind(&self) -> AtomKind {
        self.kind
    }

    pub fn family(&self) -> Family {
        Family {
            level: self.level,
            element: self.element,
            parent: self.parent,
        }
    }
}

/// The first three coordinates of an atom; the index ranges over a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family {
    pub level: usize,
    pub element: usize,
    pub parent: Option<AtomId>,
}

/// Value of `pr_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection<'u> {
    Level(usize),
    Element(&'u str),
    Parent(Option<AtomId>),
    Index(usize),
}

#[derive(Debug, Clone)]
pub struct Universe {
    order: DoublyOrderedSet,
    depth: usize,
    index_budget: usize,
    atoms: Vec<Atom>,
    stratum_end: Vec<usize>,
    children: Vec<Vec<AtomId>>,
    position: Vec<u32>,
    sectors: Vec<Vec<AtomId>>,
    fingerprint: u64,
}

pub fn build_universe(
    order: &DoublyOrderedSet,
    depth: usize,
    index_budget: usize,
) -> Result<Universe, UniverseError> {
    Universe::build(order, depth, index_budget, DEFAULT_SIZE_CAP)
}

impl Universe {
    pub fn build(
        order: &DoublyOrderedSet,
        depth: usize,
        index_budget: usize,
        size_cap: usize,
    ) -> Result<Universe, UniverseError> {
        if index_budget == 0 {
            return Err(UniverseError::ZeroIndexBudget);
        }
        let n_elems = order.len();
        let mut atoms = Vec::new();
        let push = |atoms: &mut Vec<Atom>, atom: Atom| {
            if atoms.len() >= size_cap {
                return Err(UniverseError::SizeBudgetExceeded {
                    cap: size_cap,
                    level: atom.level,
                });
            }
            atoms.push(atom);
            Ok(())
        };
        for element in 0..n_elems {
            for index in 0..index_budget {
                let atom = Atom {
                    level: 0,
                    element,
                    parent: None,
                    index,
                    kind: AtomKind::Base,
                };
                push(&mut atoms, atom)?;
            }
        }
        let mut stratum_end = vec![atoms.len()];
        for level in 1..=depth {
            let below = atoms.len();
            for q in 0..n_elems {
                for a in 0..below {
                    let pa = atoms[a].element;
                    let parent = Some(AtomId::from_index(a));
                    if order.strictly_less(pa, q) {
                        let atom = Atom {
                            level,
                            element: q,
                            parent,
                            index: 0,
                            kind: AtomKind::Injective,
                        };
                        push(&mut atoms, atom)?;
                    } else if !order.le(pa, q) && order.lestar(pa, q) {
                        for index in 0..index_budget {
                            let atom = Atom {
                                level,
                                element: q,
                                parent,
                                index,
                                kind: AtomKind::Surjective,
                            };
                            push(&mut atoms, atom)?;
                        }
                    }
                }
            }
            stratum_end.push(atoms.len());
        }

        let mut children = vec![Vec::new(); atoms.len()];
        let mut position = vec![0u32; atoms.len()];
        let mut sectors = vec![Vec::new(); n_elems];
        for (i, atom) in atoms.iter().enumerate() {
            let id = AtomId::from_index(i);
            if let Some(parent) = atom.parent {
                let siblings: &mut Vec<AtomId> = &mut children[parent.index()];
                position[i] = siblings.len() as u32;
                siblings.push(id);
            }
            sectors[atom.element].push(id);
        }

        let mut hasher = DefaultHasher::new();
        order.hash(&mut hasher);
        depth.hash(&mut hasher);
        index_budget.hash(&mut hasher);

        Ok(Universe {
            order: order.clone(),
            depth,
            index_budget,
            atoms,
            stratum_end,
            children,
            position,
            sectors,
            fingerprint: hasher.finish(),
        })
    }

    pub fn order(&self) -> &DoublyOrderedSet {
        &self.order
    }

    /// `N`
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `K`
    pub fn index_budget(&self) -> usize {
        self.index_budget
    }

    /// Identifies the `(order, N, K)` triple; permutations carry it to detect
    /// mixing universes.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    #[inline]
    pub fn atom(&self, id: AtomId) -> &Atom {
        &self.atoms[id.index()]
    }

    pub fn atoms(&self) -> impl ExactSizeIterator<Item = (AtomId, &Atom)> + '_ {
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (AtomId::from_index(i), a))
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = AtomId> {
        (0..self.atoms.len()).map(AtomId::from_index)
    }

    /// Number of atoms in `A_n`; ids `0..stratum_len(n)` are exactly `A_n`.
    pub fn stratum_len(&self, level: usize) -> usize {
        self.stratum_end[level.min(self.depth)]
    }

    pub fn stratum(&self, level: usize) -> impl ExactSizeIterator<Item = AtomId> {
        (0..self.stratum_len(level)).map(AtomId::from_index)
    }

    /// Children in `(level, element, index)` order. Two atoms with equal
    /// level and element have children lists of identical shape.
    #[inline]
    pub fn children(&self, id: AtomId) -> &[AtomId] {
        &self.children[id.index()]
    }

    /// Position of a successor atom in its parent's children list.
    #[inline]
    pub fn position_in_parent(&self, id: AtomId) -> usize {
        self.position[id.index()] as usize
    }

    pub fn empty_set(&self) -> AtomSet {
        AtomSet::new(self.len())
    }

    pub fn set_of(&self, ids: impl IntoIterator<Item = AtomId>) -> AtomSet {
        AtomSet::from_ids(self.len(), ids)
    }

    /// `pr_i` for `i` in `0..4`.
    pub fn project(&self, id: AtomId, i: usize) -> Option<Projection<'_>> {
        let atom = self.atom(id);
        match i {
            0 => Some(Projection::Level(atom.level)),
            1 => Some(Projection::Element(self.order.name(atom.element))),
            2 => Some(Projection::Parent(atom.parent)),
            3 => Some(Projection::Index(atom.index)),
            _ => None,
        }
    }

    /// `S_p` restricted to the truncation, ascending ids.
    pub fn sector(&self, element: &str) -> Result<&[AtomId], UniverseError> {
        Ok(self.sector_of(self.order.index_of(element)?))
    }

    pub fn sector_of(&self, element: usize) -> &[AtomId] {
        &self.sectors[element]
    }

    /// Looks up `⟨level, element, parent, index⟩`.
    pub fn find(
        &self,
        level: usize,
        element: usize,
        parent: Option<AtomId>,
        index: usize,
    ) -> Option<AtomId> {
        match parent {
            None => (level == 0 && element < self.order.len() && index < self.index_budget)
                .then(|| AtomId::from_index(element * self.index_budget + index)),
            Some(parent) => {
                let siblings = self.children.get(parent.index())?;
                siblings
                    .binary_search_by(|&c| {
                        let a = self.atom(c);
                        (a.level, a.element, a.index).cmp(&(level, element, index))
                    })
                    .ok()
                    .map(|i| siblings[i])
            }
        }
    }

    /// Atoms of a family in index order. Empty if the family does not exist.
    pub fn family_members(&self, family: Family) -> Vec<AtomId> {
        (0..self.index_budget)
            .map_while(|k| self.find(family.level, family.element, family.parent, k))
            .collect()
    }

    /// Maps every atom of `self` to the structurally equal atom of `larger`,
    /// or `None` if some atom has no counterpart (different order, or `larger`
    /// is not a deeper/wider truncation).
    pub fn translate_into(&self, larger: &Universe) -> Option<Vec<AtomId>> {
        if self.order != larger.order {
            return None;
        }
        let mut image: Vec<AtomId> = Vec::with_capacity(self.len());
        for atom in &self.atoms {
            let parent = atom.parent.map(|p| image[p.index()]);
            image.push(larger.find(atom.level, atom.element, parent, atom.index)?);
        }
        Some(image)
    }
}
