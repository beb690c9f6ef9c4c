use crate::atomset::AtomSet;
use crate::closure::{check_shape_le, check_shape_lestar, closure, ClosureCache, ClosureError};
use crate::group::mover_outside;
use crate::universe::{AtomId, Universe};

use super::witness::element_pair;
use super::{Branch, EmbeddingError, Evidence, RefutationCertificate, RefutationKind};

/// Builds refutation certificates, optionally over a table of single-atom
/// closures so that `Cl(B ∪ {b}) = Cl(B) ∪ Cl({b})` is a union of bitsets.
pub struct Refuter<'u> {
    universe: &'u Universe,
    cache: Option<ClosureCache<'u>>,
}

impl<'u> Refuter<'u> {
    /// Precomputes the closure of every atom.
    pub fn new(universe: &'u Universe) -> Self {
        Refuter {
            universe,
            cache: Some(ClosureCache::filled(universe)),
        }
    }

    /// Computes closures on demand.
    pub fn uncached(universe: &'u Universe) -> Self {
        Refuter {
            universe,
            cache: None,
        }
    }

    pub fn universe(&self) -> &'u Universe {
        self.universe
    }

    fn closure_of(&self, atoms: &[AtomId]) -> AtomSet {
        match &self.cache {
            Some(cache) => cache.members_of(atoms.iter().copied()),
            None => closure(self.universe, &self.universe.set_of(atoms.iter().copied())).members,
        }
    }

    fn closure_of_one(&self, a: AtomId) -> std::borrow::Cow<'_, AtomSet> {
        match &self.cache {
            Some(cache) => std::borrow::Cow::Borrowed(cache.get(a)),
            None => std::borrow::Cow::Owned(self.closure_of(&[a])),
        }
    }

    /// Least-index level-0 atom of sector `p` outside `closed`.
    fn fresh_atom(&self, p: usize, closed: &AtomSet) -> Result<AtomId, EmbeddingError> {
        let u = self.universe;
        let free = |k: usize| u.find(0, p, None, k).is_none_or(|c| !closed.contains(c));
        match (0..u.index_budget()).find(|&k| free(k)) {
            Some(k) => Ok(u.find(0, p, None, k).expect("k is below the budget")),
            None => {
                // Occupied indices are all below the budget, so the first free
                // one is exactly the budget.
                Err(EmbeddingError::IndexBudgetExhausted {
                    index_budget: u.index_budget(),
                    suggested: u.index_budget() + 1,
                })
            }
        }
    }

    /// Certificate that no partial surjection from `S_q` onto `S_p` is
    /// supported by `support`. Requires `p ⋠* q`.
    pub fn refute_surjection(
        &self,
        p: usize,
        q: usize,
        support: &[AtomId],
    ) -> Result<RefutationCertificate, EmbeddingError> {
        let u = self.universe;
        if u.order().lestar(p, q) {
            return Err(precondition(u, "refute_surjection", p, q));
        }
        let support_closure = self.closure_of(support);
        let fresh = self.fresh_atom(p, &support_closure)?;
        let mut evidence = Vec::with_capacity(u.sector_of(q).len());
        for &b in u.sector_of(q) {
            let cl_b = self.closure_of_one(b);
            check_shape_lestar(u, &cl_b, q)?;
            let mut closed = support_closure.clone();
            closed.union_with(&cl_b);
            if closed.contains(fresh) {
                return Err(ClosureError::ShapeViolation(fresh).into());
            }
            evidence.push(Evidence {
                atom: b,
                branch: Branch::MovesFresh,
                permutation: mover_outside(u, &closed, fresh)?,
            });
        }
        Ok(RefutationCertificate {
            kind: RefutationKind::NoSurjection,
            p,
            q,
            support: sorted(support),
            fresh,
            evidence,
        })
    }

    /// Certificate that no injection from `S_p` into `S_q` is supported by
    /// `support`. Requires `p ⋠ q`.
    pub fn refute_injection(
        &self,
        p: usize,
        q: usize,
        support: &[AtomId],
    ) -> Result<RefutationCertificate, EmbeddingError> {
        let u = self.universe;
        if u.order().le(p, q) {
            return Err(precondition(u, "refute_injection", p, q));
        }
        let support_closure = self.closure_of(support);
        let fresh = self.fresh_atom(p, &support_closure)?;
        let fresh_closure = self.closure_of_one(fresh);
        check_shape_le(u, &fresh_closure, p)?;
        let mut evidence = Vec::with_capacity(u.sector_of(q).len());
        for &b in u.sector_of(q) {
            let cl_b = self.closure_of_one(b);
            let (branch, closed, moved) = if !cl_b.contains(fresh) {
                let mut closed = support_closure.clone();
                closed.union_with(&cl_b);
                (Branch::MovesFresh, closed, fresh)
            } else {
                let mut closed = support_closure.clone();
                closed.union_with(&fresh_closure);
                if closed.contains(b) {
                    return Err(ClosureError::ShapeViolation(b).into());
                }
                (Branch::MovesImage, closed, b)
            };
            evidence.push(Evidence {
                atom: b,
                branch,
                permutation: mover_outside(u, &closed, moved)?,
            });
        }
        Ok(RefutationCertificate {
            kind: RefutationKind::NoInjection,
            p,
            q,
            support: sorted(support),
            fresh,
            evidence,
        })
    }
}

fn sorted(support: &[AtomId]) -> Vec<AtomId> {
    let mut s = support.to_vec();
    s.sort();
    s.dedup();
    s
}

fn precondition(u: &Universe, operation: &'static str, p: usize, q: usize) -> EmbeddingError {
    EmbeddingError::PreconditionViolated {
        operation,
        p: u.order().name(p).to_string(),
        q: u.order().name(q).to_string(),
    }
}

pub fn refute_surjection(
    u: &Universe,
    p: &str,
    q: &str,
    support: &[AtomId],
) -> Result<RefutationCertificate, EmbeddingError> {
    let (p, q) = element_pair(u, p, q)?;
    Refuter::uncached(u).refute_surjection(p, q, support)
}

pub fn refute_injection(
    u: &Universe,
    p: &str,
    q: &str,
    support: &[AtomId],
) -> Result<RefutationCertificate, EmbeddingError> {
    let (p, q) = element_pair(u, p, q)?;
    Refuter::uncached(u).refute_injection(p, q, support)
}
