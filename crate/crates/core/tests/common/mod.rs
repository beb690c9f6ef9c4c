//! Oracles shared by the integration tests. None of them call the library
//! routine they check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cardlab::universe::AtomKind;
use cardlab::{enumerate_small_doubly_ordered, AtomId, DoublyOrderedSet, Universe};

/// Saturates `base` under "add the parent" and "add every injective atom
/// whose parent is present", scanning the whole universe each round.
pub fn naive_closure(u: &Universe, base: &[AtomId]) -> BTreeSet<AtomId> {
    let mut set: BTreeSet<AtomId> = base.iter().copied().collect();
    loop {
        let mut additions = Vec::new();
        for (id, atom) in u.atoms() {
            let Some(parent) = atom.parent() else {
                continue;
            };
            if set.contains(&id) && !set.contains(&parent) {
                additions.push(parent);
            }
            if atom.kind() == AtomKind::Injective && set.contains(&parent) && !set.contains(&id) {
                additions.push(id);
            }
        }
        if additions.is_empty() {
            return set;
        }
        set.extend(additions);
    }
}

/// Membership from the projections alone: bijective, preserves level and
/// element, and commutes with taking parents.
pub fn member_oracle(u: &Universe, map: &[AtomId]) -> bool {
    if map.len() != u.len() {
        return false;
    }
    let image: BTreeSet<AtomId> = map.iter().copied().collect();
    image.len() == map.len()
        && image.iter().all(|a| a.index() < u.len())
        && u.atoms().all(|(x, a)| {
            let b = u.atom(map[x.index()]);
            a.level() == b.level()
                && a.element() == b.element()
                && a.parent().map(|p| map[p.index()]) == b.parent()
        })
}

fn holds(bits: u32, n: usize, p: usize, q: usize) -> bool {
    bits >> (p * n + q) & 1 == 1
}

fn reflexive(bits: u32, n: usize) -> bool {
    (0..n).all(|p| holds(bits, n, p, p))
}

fn transitive(bits: u32, n: usize) -> bool {
    (0..n).all(|p| {
        (0..n).all(|q| {
            (0..n).all(|r| !(holds(bits, n, p, q) && holds(bits, n, q, r)) || holds(bits, n, p, r))
        })
    })
}

fn antisymmetric(bits: u32, n: usize) -> bool {
    (0..n).all(|p| (0..n).all(|q| p == q || !(holds(bits, n, p, q) && holds(bits, n, q, p))))
}

/// Number of pairs `(le, lestar)` of relations on `n` labeled points with
/// `le` a partial order, `lestar` a preorder and `le ⊆ lestar`, by filtering
/// all `2^(n²)` bit matrices.
pub fn brute_force_count(n: usize) -> usize {
    let all = 1u32 << (n * n);
    let posets: Vec<u32> = (0..all)
        .filter(|&b| reflexive(b, n) && transitive(b, n) && antisymmetric(b, n))
        .collect();
    let preorders: Vec<u32> = (0..all)
        .filter(|&b| reflexive(b, n) && transitive(b, n))
        .collect();
    posets
        .iter()
        .map(|&le| preorders.iter().filter(|&&ls| le & !ls == 0).count())
        .sum()
}

/// Every labeled structure on at most `max` elements.
pub fn structures_up_to(max: usize) -> Vec<DoublyOrderedSet> {
    (0..=max)
        .flat_map(|n| enumerate_small_doubly_ordered(n).expect("within the limit"))
        .collect()
}

pub fn structures_of_size(n: usize) -> Vec<DoublyOrderedSet> {
    enumerate_small_doubly_ordered(n)
        .expect("within the limit")
        .collect()
}
