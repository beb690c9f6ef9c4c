use crate::atomset::AtomSet;
use crate::closure::is_closed;
use crate::universe::{AtomId, AtomKind, Family, Universe};

use super::{check_partial_member, GroupError, Permutation};

/// Extends `g ∈ 𝒢_level` (given on the prefix `A_level`) to the whole
/// universe by `⟨n, q, a, k⟩ ↦ ⟨n, q, f(a), k⟩` above `level`.
///
/// When `closed` is supplied it must be a closed set; if `g` fixes its part
/// in `A_level`, the extension is checked to fix all of it.
pub fn equivariant_extension(
    u: &Universe,
    g: &[AtomId],
    level: usize,
    closed: Option<&AtomSet>,
) -> Result<Permutation, GroupError> {
    check_partial_member(u, g, level).map_err(GroupError::NotAMember)?;
    let mut map = g.to_vec();
    map.reserve(u.len() - g.len());
    for i in g.len()..u.len() {
        let a = AtomId::from_index(i);
        let parent = u
            .atom(a)
            .parent()
            .expect("only level-0 atoms lack a parent");
        map.push(u.children(map[parent.index()])[u.position_in_parent(a)]);
    }
    if let Some(closed) = closed {
        if !is_closed(u, closed) {
            return Err(GroupError::NotClosed);
        }
        let fixes_bottom = closed
            .iter()
            .filter(|a| a.index() < g.len())
            .all(|a| g[a.index()] == a);
        if fixes_bottom {
            if let Some(a) = closed.iter().find(|a| map[a.index()] != *a) {
                return Err(GroupError::ExtensionMovesClosedSet(a));
            }
        }
    }
    Ok(Permutation::from_map_unchecked(u, map))
}

/// The member swapping `⟨family, k⟩` and `⟨family, l⟩`, fixing the rest of
/// their stratum and carrying the swap up through descendants.
pub fn index_transposition(
    u: &Universe,
    family: Family,
    k: usize,
    l: usize,
) -> Result<Permutation, GroupError> {
    let not_a_family = GroupError::NotAFamily {
        level: family.level,
        element: family.element,
    };
    let first = u
        .find(family.level, family.element, family.parent, 0)
        .ok_or(not_a_family.clone())?;
    if u.atom(first).kind() == AtomKind::Injective {
        return Err(not_a_family);
    }
    let budget = u.index_budget();
    for index in [k, l] {
        if index >= budget {
            return Err(GroupError::IndexOutOfRange {
                index,
                index_budget: budget,
            });
        }
    }
    if k == l {
        return Err(GroupError::DegenerateTransposition(k));
    }
    let c = u
        .find(family.level, family.element, family.parent, k)
        .ok_or(not_a_family.clone())?;
    let d = u
        .find(family.level, family.element, family.parent, l)
        .ok_or(not_a_family)?;
    let mut g: Vec<AtomId> = u.stratum(family.level).collect();
    g.swap(c.index(), d.index());
    equivariant_extension(u, &g, family.level, None)
}

/// Carries `f` into a deeper or wider truncation of the same order: atoms
/// shared with `from` follow `f`, new level-0 atoms are fixed, and new
/// successors follow their parent.
pub fn embed_canonically(
    f: &Permutation,
    from: &Universe,
    into: &Universe,
) -> Result<Permutation, GroupError> {
    if !f.belongs_to(from) {
        return Err(GroupError::UniverseMismatch);
    }
    let translation = from
        .translate_into(into)
        .ok_or(GroupError::UniverseMismatch)?;
    let mut preimage: Vec<Option<AtomId>> = vec![None; into.len()];
    for (i, t) in translation.iter().enumerate() {
        preimage[t.index()] = Some(AtomId::from_index(i));
    }
    let mut map: Vec<AtomId> = Vec::with_capacity(into.len());
    for x in into.ids() {
        let image = match (preimage[x.index()], into.atom(x).parent()) {
            (Some(y), _) => translation[f.apply(y).index()],
            (None, None) => x,
            (None, Some(parent)) => into.children(map[parent.index()])[into.position_in_parent(x)],
        };
        map.push(image);
    }
    Permutation::from_map(into, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::closure;
    use crate::order::{validate_order, DoublyOrderedSet, OrderSpec};
    use crate::universe::build_universe;

    fn d2_prime() -> DoublyOrderedSet {
        validate_order(
            &OrderSpec::new(["p", "q"])
                .with_reflexive()
                .with_le(&[("p", "q")])
                .with_lestar(&[("p", "q")]),
        )
        .unwrap()
    }

    fn d2() -> DoublyOrderedSet {
        validate_order(
            &OrderSpec::new(["p", "q"])
                .with_reflexive()
                .with_lestar(&[("p", "q")]),
        )
        .unwrap()
    }

    const BASE_P: Family = Family {
        level: 0,
        element: 0,
        parent: None,
    };

    #[test]
    fn base_transposition_moves_children() {
        let u = build_universe(&d2_prime(), 1, 2).unwrap();
        let f = index_transposition(&u, BASE_P, 0, 1).unwrap();
        let p0 = u.find(0, 0, None, 0).unwrap();
        let p1 = u.find(0, 0, None, 1).unwrap();
        let c0 = u.find(1, 1, Some(p0), 0).unwrap();
        let c1 = u.find(1, 1, Some(p1), 0).unwrap();
        assert_eq!(f.cycles(), vec![vec![p0, p1], vec![c0, c1]]);
        for q in u.sector("q").unwrap() {
            if u.atom(*q).level() == 0 {
                assert!(!f.moves(*q));
            }
        }
        assert!(f.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn surjective_family_transposition() {
        let u = build_universe(&d2(), 1, 2).unwrap();
        let p0 = u.find(0, 0, None, 0).unwrap();
        let fam = Family {
            level: 1,
            element: 1,
            parent: Some(p0),
        };
        let f = index_transposition(&u, fam, 0, 1).unwrap();
        assert_eq!(f.support().len(), 2);
        assert!(u.stratum(0).all(|a| !f.moves(a)));
    }

    #[test]
    fn transposition_errors() {
        let u = build_universe(&d2_prime(), 1, 2).unwrap();
        let p0 = u.find(0, 0, None, 0).unwrap();
        let injective = Family {
            level: 1,
            element: 1,
            parent: Some(p0),
        };
        assert!(matches!(
            index_transposition(&u, injective, 0, 1),
            Err(GroupError::NotAFamily { .. })
        ));
        assert!(matches!(
            index_transposition(&u, BASE_P, 0, 2),
            Err(GroupError::IndexOutOfRange { index: 2, .. })
        ));
        assert_eq!(
            index_transposition(&u, BASE_P, 1, 1),
            Err(GroupError::DegenerateTransposition(1))
        );
    }

    #[test]
    fn extension_of_base_swap_equals_transposition() {
        let u = build_universe(&d2_prime(), 2, 3).unwrap();
        let mut g: Vec<AtomId> = u.stratum(0).collect();
        g.swap(0, 1);
        let ext = equivariant_extension(&u, &g, 0, None).unwrap();
        assert_eq!(ext, index_transposition(&u, BASE_P, 0, 1).unwrap());

        let identity: Vec<AtomId> = u.stratum(0).collect();
        assert!(equivariant_extension(&u, &identity, 0, None)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn extension_fixes_closed_sets() {
        let u = build_universe(&d2(), 2, 3).unwrap();
        let q0 = u.find(0, 1, None, 0).unwrap();
        let c = closure(&u, &u.set_of([q0])).members;
        let identity: Vec<AtomId> = u.stratum(0).collect();
        let ext = equivariant_extension(&u, &identity, 0, Some(&c)).unwrap();
        assert!(ext.fixes_all(&c));
        let not_closed = u.set_of([u.find(1, 1, Some(AtomId::from_index(0)), 0).unwrap()]);
        assert_eq!(
            equivariant_extension(&u, &identity, 0, Some(&not_closed)),
            Err(GroupError::NotClosed)
        );
    }

    #[test]
    fn extension_rejects_non_members() {
        let u = build_universe(&d2(), 1, 2).unwrap();
        let mut g: Vec<AtomId> = u.stratum(0).collect();
        g.swap(0, 2);
        assert!(matches!(
            equivariant_extension(&u, &g, 0, None),
            Err(GroupError::NotAMember(_))
        ));
    }

    #[test]
    fn canonical_embedding_keeps_membership() {
        let u = build_universe(&d2(), 1, 2).unwrap();
        let f = index_transposition(&u, BASE_P, 0, 1).unwrap();
        for (n, k) in [(2, 2), (1, 3), (2, 4)] {
            let big = build_universe(&d2(), n, k).unwrap();
            let g = embed_canonically(&f, &u, &big).unwrap();
            assert_eq!(g, index_transposition(&big, BASE_P, 0, 1).unwrap());
        }
        let other = build_universe(&d2_prime(), 2, 2).unwrap();
        assert_eq!(
            embed_canonically(&f, &u, &other),
            Err(GroupError::UniverseMismatch)
        );
    }
}
