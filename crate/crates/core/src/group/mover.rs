use crate::atomset::AtomSet;
use crate::closure::closure;
use crate::universe::{AtomId, AtomKind, Family, Universe};

use super::{index_transposition, GroupError, Permutation};

/// A member fixing `Cl(b)` pointwise and moving `c`.
pub fn mover(u: &Universe, b: &AtomSet, c: AtomId) -> Result<Permutation, GroupError> {
    mover_outside(u, &closure(u, b).members, c)
}

/// [`mover`] for a precomputed closed set.
///
/// Injective atoms are moved through their parent; a base or surjective
/// atom `⟨F, k⟩` is swapped with `⟨F, l⟩` for the least `l ≠ k` whose atom is
/// outside `closed`.
pub fn mover_outside(u: &Universe, closed: &AtomSet, c: AtomId) -> Result<Permutation, GroupError> {
    if closed.contains(c) {
        return Err(GroupError::InClosure(c));
    }
    let mut target = c;
    while u.atom(target).kind() == AtomKind::Injective {
        target = u
            .atom(target)
            .parent()
            .expect("injective atoms have parents");
        if closed.contains(target) {
            // Cannot happen for a closed set: the child would be in it too.
            return Err(GroupError::NotClosed);
        }
    }
    let atom = u.atom(target);
    let family = atom.family();
    let occupied: Vec<bool> = u
        .family_members(family)
        .iter()
        .map(|&a| closed.contains(a))
        .collect();
    let is_free = |l: usize| l != atom.index() && !occupied.get(l).copied().unwrap_or(false);
    match (0..u.index_budget()).find(|&l| is_free(l)) {
        Some(l) => index_transposition(u, family, atom.index(), l),
        None => {
            let needed = (0..).find(|&l| is_free(l)).expect("finitely many occupied");
            Err(GroupError::IndexBudgetExhausted {
                atom: target,
                index_budget: u.index_budget(),
                suggested: needed + 1,
            })
        }
    }
}

/// Families whose index can be permuted: level-0 families and surjective
/// families, in id order of their first atom.
pub(crate) fn indexed_families(u: &Universe) -> impl Iterator<Item = Family> + '_ {
    u.atoms()
        .filter(|(_, a)| a.index() == 0 && a.kind() != AtomKind::Injective)
        .map(|(_, a)| a.family())
}

/// Transpositions generating the subgroup that fixes `Cl(b)` pointwise: for
/// each family, swaps of consecutive indices among those whose atom lies
/// outside the closure.
pub fn fixing_generators(u: &Universe, b: &AtomSet) -> Vec<Permutation> {
    let closed = closure(u, b).members;
    let mut gens = Vec::new();
    for family in indexed_families(u) {
        let free: Vec<usize> = u
            .family_members(family)
            .iter()
            .enumerate()
            .filter(|(_, a)| !closed.contains(**a))
            .map(|(k, _)| k)
            .collect();
        for w in free.windows(2) {
            gens.push(
                index_transposition(u, family, w[0], w[1]).expect("family and indices are valid"),
            );
        }
    }
    gens
}
