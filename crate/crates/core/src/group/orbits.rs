use crate::universe::{AtomId, Universe};

use super::{GroupError, Permutation};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if two classes were merged.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        if self.size[rx] < self.size[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[ry] = rx;
        self.size[rx] += self.size[ry];
        true
    }

    /// Classes as ascending lists, ordered by least element.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); self.parent.len()];
        for x in 0..self.parent.len() {
            let r = self.find(x);
            by_root[r].push(x);
        }
        let mut classes: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        classes.sort_by_key(|c| c[0]);
        classes
    }
}

/// Orbits of the subgroup generated by `gens`, each ascending, ordered by
/// least atom.
pub fn orbits(u: &Universe, gens: &[Permutation]) -> Result<Vec<Vec<AtomId>>, GroupError> {
    let mut uf = UnionFind::new(u.len());
    for g in gens {
        if !g.belongs_to(u) {
            return Err(GroupError::UniverseMismatch);
        }
        for (i, image) in g.as_slice().iter().enumerate() {
            uf.union(i, image.index());
        }
    }
    Ok(uf
        .classes()
        .into_iter()
        .map(|c| c.into_iter().map(AtomId::from_index).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::fixing_generators;
    use crate::order::{validate_order, OrderSpec};
    use crate::universe::build_universe;

    #[test]
    fn orbit_examples() {
        let d = validate_order(
            &OrderSpec::new(["p", "q"])
                .with_reflexive()
                .with_le(&[("p", "q")])
                .with_lestar(&[("p", "q")]),
        )
        .unwrap();
        let u = build_universe(&d, 1, 2).unwrap();
        let trivial = orbits(&u, &[]).unwrap();
        assert_eq!(trivial.len(), u.len());

        let all = orbits(&u, &fixing_generators(&u, &u.empty_set())).unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|o| o.len() == 2));

        let p0 = u.find(0, 0, None, 0).unwrap();
        let child = u.find(1, 1, Some(p0), 0).unwrap();
        let fixed = orbits(&u, &fixing_generators(&u, &u.set_of([p0]))).unwrap();
        let singletons: Vec<AtomId> = fixed
            .iter()
            .filter(|o| o.len() == 1)
            .map(|o| o[0])
            .collect();
        assert!(singletons.contains(&p0) && singletons.contains(&child));

        let other = build_universe(&d, 1, 3).unwrap();
        assert_eq!(
            orbits(&other, &fixing_generators(&u, &u.empty_set())),
            Err(GroupError::UniverseMismatch)
        );
    }

    #[test]
    fn union_find_classes() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(3, 1));
        assert!(!uf.union(1, 3));
        uf.union(4, 0);
        assert_eq!(uf.classes(), vec![vec![0, 4], vec![1, 3], vec![2]]);
    }
}
