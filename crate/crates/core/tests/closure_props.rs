mod common;

use proptest::prelude::*;

use cardlab::{build_universe, closure, is_closed, AtomId, DoublyOrderedSet, Universe};
use common::{naive_closure, structures_up_to};

fn universes() -> Vec<Universe> {
    structures_up_to(3)
        .iter()
        .filter(|d: &&DoublyOrderedSet| !d.is_empty())
        .step_by(5)
        .map(|d| build_universe(d, 2, 2).unwrap())
        .collect()
}

fn pick(u: &Universe, raw: &[usize]) -> Vec<AtomId> {
    raw.iter()
        .map(|&i| AtomId::from_index(i % u.len()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_matches_naive_saturation(s in 0usize..1000, raw in prop::collection::vec(0usize..10_000, 0..5)) {
        let all = universes();
        let u = &all[s % all.len()];
        let b = pick(u, &raw);
        let cl = closure(u, &u.set_of(b.iter().copied()));
        prop_assert_eq!(cl.members.iter().collect::<std::collections::BTreeSet<_>>(), naive_closure(u, &b));
        prop_assert!(is_closed(u, &cl.members));
        prop_assert!(cl.base.is_subset(&cl.y_part));
    }

    #[test]
    fn closure_is_additive_and_monotone(s in 0usize..1000, x in prop::collection::vec(0usize..10_000, 0..4), y in prop::collection::vec(0usize..10_000, 0..4)) {
        let all = universes();
        let u = &all[s % all.len()];
        let (b, c) = (pick(u, &x), pick(u, &y));
        let cl_b = closure(u, &u.set_of(b.iter().copied())).members;
        let cl_c = closure(u, &u.set_of(c.iter().copied())).members;
        let cl_bc = closure(u, &u.set_of(b.iter().chain(&c).copied())).members;
        prop_assert_eq!(&cl_bc, &cl_b.union(&cl_c));
        prop_assert!(cl_b.is_subset(&cl_bc));
        prop_assert_eq!(closure(u, &cl_bc).members, cl_bc);
    }
}
