//! Closed sets and the closure operator.
//!
//! A set `C` is closed when it contains every injective child
//! `⟨n+1, q, a, 0⟩` (with `n+1 ≤ N`) of each member `a`, and the parent of
//! each non-base member. `Cl(B)` is computed by the two-chain recursion:
//! `Y` descends through parents from `B`, `X` saturates injective children of
//! `X ∪ Y`. Both chains are run stage by stage until neither grows.

use thiserror::Error;

use crate::atomset::AtomSet;
use crate::universe::{AtomId, AtomKind, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    /// A shape check failed. This indicates a bug, not bad input.
    #[error("closure shape violated at atom {0}")]
    ShapeViolation(AtomId),
    #[error("atom {0} is not in the required sector or stratum")]
    Precondition(AtomId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSet {
    pub base: AtomSet,
    pub members: AtomSet,
    /// Union of the `X` chain; every atom here has index 0.
    pub x_part: AtomSet,
    /// Union of the `Y` chain; contains `base`.
    pub y_part: AtomSet,
    /// Number of stages until the joint fixpoint.
    pub stages: usize,
}

pub fn is_closed(u: &Universe, set: &AtomSet) -> bool {
    set.iter().all(|a| {
        let atom = u.atom(a);
        let parent_ok = atom.parent().is_none_or(|p| set.contains(p));
        parent_ok
            && u.children(a)
                .iter()
                .filter(|&&c| u.atom(c).kind() == AtomKind::Injective)
                .all(|&c| set.contains(c))
    })
}

pub fn closure(u: &Universe, base: &AtomSet) -> ClosureSet {
    let mut y_part = base.clone();
    let mut x_part = u.empty_set();
    let mut members = base.clone();
    // Atoms that entered Y (resp. X ∪ Y) at the previous stage.
    let mut y_frontier: Vec<AtomId> = base.to_vec();
    let mut xy_frontier: Vec<AtomId> = y_frontier.clone();
    let mut stages = 0;

    loop {
        let mut next_y = Vec::new();
        for &b in &y_frontier {
            if let Some(parent) = u.atom(b).parent() {
                if y_part.insert(parent) {
                    next_y.push(parent);
                }
            }
        }
        let mut next_x = Vec::new();
        for &a in &xy_frontier {
            for &child in u.children(a) {
                if u.atom(child).kind() == AtomKind::Injective && x_part.insert(child) {
                    next_x.push(child);
                }
            }
        }
        if next_y.is_empty() && next_x.is_empty() {
            break;
        }
        stages += 1;
        xy_frontier.clear();
        for &a in next_y.iter().chain(&next_x) {
            if members.insert(a) {
                xy_frontier.push(a);
            }
        }
        y_frontier = next_y;
    }

    ClosureSet {
        base: base.clone(),
        members,
        x_part,
        y_part,
        stages,
    }
}

/// `{a ∈ Cl(B) : pr₃(a) ≠ 0}`.
pub fn nonzero_index_part(u: &Universe, base: &AtomSet) -> AtomSet {
    let cl = closure(u, base);
    u.set_of(cl.members.iter().filter(|&a| u.atom(a).index() != 0))
}

/// Checks that every `a ∈ Cl({b})` has `pr₀(a) ≠ 0` or `pr₁(a) ≼* q`, where
/// `q = pr₁(b)`.
pub fn closure_shape_lestar(u: &Universe, b: AtomId, q: usize) -> Result<bool, ClosureError> {
    if u.atom(b).element() != q {
        return Err(ClosureError::Precondition(b));
    }
    check_shape_lestar(u, &closure(u, &u.set_of([b])).members, q)?;
    Ok(true)
}

/// Checks that every `a ∈ Cl({c})` has `p ≼ pr₁(a)` for the level-0 atom `c`
/// with `p = pr₁(c)`.
pub fn closure_shape_le(u: &Universe, c: AtomId) -> Result<bool, ClosureError> {
    let atom = u.atom(c);
    if atom.level() != 0 {
        return Err(ClosureError::Precondition(c));
    }
    check_shape_le(u, &closure(u, &u.set_of([c])).members, atom.element())?;
    Ok(true)
}

/// The predicate of [`closure_shape_lestar`] on an already computed closure.
pub fn check_shape_lestar(u: &Universe, members: &AtomSet, q: usize) -> Result<(), ClosureError> {
    match members.iter().find(|&a| {
        let atom = u.atom(a);
        atom.level() == 0 && !u.order().lestar(atom.element(), q)
    }) {
        Some(a) => Err(ClosureError::ShapeViolation(a)),
        None => Ok(()),
    }
}

/// The predicate of [`closure_shape_le`] on an already computed closure.
pub fn check_shape_le(u: &Universe, members: &AtomSet, p: usize) -> Result<(), ClosureError> {
    match members
        .iter()
        .find(|&a| !u.order().le(p, u.atom(a).element()))
    {
        Some(a) => Err(ClosureError::ShapeViolation(a)),
        None => Ok(()),
    }
}

/// Single-atom closures of every atom; `Cl(B)` is the union of `Cl({b})`
/// over `b ∈ B`.
#[derive(Debug)]
pub struct ClosureCache<'u> {
    universe: &'u Universe,
    singles: Vec<AtomSet>,
}

impl<'u> ClosureCache<'u> {
    pub fn filled(universe: &'u Universe) -> Self {
        ClosureCache {
            universe,
            singles: universe
                .ids()
                .map(|a| closure(universe, &universe.set_of([a])).members)
                .collect(),
        }
    }

    pub fn get(&self, a: AtomId) -> &AtomSet {
        &self.singles[a.index()]
    }

    pub fn members_of(&self, atoms: impl IntoIterator<Item = AtomId>) -> AtomSet {
        let mut out = self.universe.empty_set();
        for a in atoms {
            out.union_with(self.get(a));
        }
        out
    }
}
