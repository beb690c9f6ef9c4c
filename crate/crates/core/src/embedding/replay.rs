//! Re-checks witnesses and certificates from the universe data alone.
//!
//! Nothing here calls the constructors in `group`, `closure` or the
//! witness/refutation builders; membership is re-derived from `pr₀`, `pr₁`
//! and `pr₂` directly.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::group::Permutation;
use crate::universe::{AtomId, Universe};

use super::{
    finite_le, finite_lestar, Branch, RefutationCertificate, RefutationKind, WitnessKind,
    WitnessMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("pair ({0}, {1}) leaves the declared sectors")]
    WrongSector(AtomId, AtomId),
    #[error("atom {0} has two images")]
    NotAFunction(AtomId),
    #[error("atom {0} is the image of two atoms")]
    NotInjective(AtomId),
    #[error("domain differs from the declared stratum")]
    WrongDomain,
    #[error("atom {0} of the declared co-domain is not covered")]
    NotCovering(AtomId),
    #[error("cardinality oracle rejects the witness")]
    OracleDisagrees,
    #[error("witness is not invariant under a group generator")]
    NotInvariant,
    #[error("fresh atom {0} is not a level-0 atom of the refuted sector")]
    BadFreshAtom(AtomId),
    #[error("evidence does not cover exactly the target sector")]
    IncompleteEvidence,
    #[error("surjection refutations only use the moves-fresh branch")]
    BadBranch,
    #[error("permutation for atom {0} is not a group member")]
    NotAMember(AtomId),
    #[error("permutation for atom {0} moves a fixed atom")]
    MovesFixed(AtomId),
    #[error("permutation for atom {0} does not move its target")]
    DoesNotMove(AtomId),
}

fn member(u: &Universe, f: &Permutation) -> bool {
    if !f.belongs_to(u) {
        return false;
    }
    let map = f.as_slice();
    let mut inverse = vec![usize::MAX; map.len()];
    for (x, y) in map.iter().enumerate() {
        if y.index() >= map.len() || inverse[y.index()] != usize::MAX {
            return false;
        }
        inverse[y.index()] = x;
    }
    u.ids().all(|x| {
        let (a, b) = (u.atom(x), u.atom(map[x.index()]));
        a.level() == b.level()
            && a.element() == b.element()
            && match (a.parent(), b.parent()) {
                (None, None) => true,
                (Some(pa), Some(pb)) => map[pa.index()] == pb,
                _ => false,
            }
    })
}

fn coverage_set(u: &Universe, sector: usize, up_to: Option<usize>) -> BTreeSet<AtomId> {
    match up_to {
        None => BTreeSet::new(),
        Some(level) => u
            .atoms()
            .filter(|(_, a)| a.element() == sector && a.level() <= level)
            .map(|(id, _)| id)
            .collect(),
    }
}

/// Checks sectors, functionality, injectivity or coverage, agreement with the
/// finite cardinality oracle, and invariance under every `generators`
/// member.
pub fn replay_witness(
    u: &Universe,
    w: &WitnessMap,
    generators: &[Permutation],
) -> Result<(), ReplayError> {
    let mut domain = BTreeSet::new();
    let mut image = BTreeSet::new();
    let mut injective = true;
    for &(a, b) in &w.pairs {
        if u.atom(a).element() != w.source || u.atom(b).element() != w.target {
            return Err(ReplayError::WrongSector(a, b));
        }
        if !domain.insert(a) {
            return Err(ReplayError::NotAFunction(a));
        }
        injective &= image.insert(b);
    }
    let declared = coverage_set(u, w.coverage.sector, w.coverage.up_to_level);
    match w.kind {
        WitnessKind::Injection => {
            if let Some(&(_, b)) = w.pairs.iter().find(|_| !injective) {
                return Err(ReplayError::NotInjective(b));
            }
            if domain != declared {
                return Err(ReplayError::WrongDomain);
            }
            if !finite_le(&domain, &image) {
                return Err(ReplayError::OracleDisagrees);
            }
        }
        WitnessKind::PartialSurjection => {
            if let Some(&missing) = declared.difference(&image).next() {
                return Err(ReplayError::NotCovering(missing));
            }
            if !finite_lestar(&declared, &domain) {
                return Err(ReplayError::OracleDisagrees);
            }
        }
    }
    let pairs: BTreeSet<(AtomId, AtomId)> = w.pairs.iter().copied().collect();
    for g in generators {
        if !g.belongs_to(u) {
            return Err(ReplayError::NotInvariant);
        }
        if !pairs
            .iter()
            .all(|&(a, b)| pairs.contains(&(g.apply(a), g.apply(b))))
        {
            return Err(ReplayError::NotInvariant);
        }
    }
    Ok(())
}

pub fn replay_certificate(u: &Universe, cert: &RefutationCertificate) -> Result<(), ReplayError> {
    let fresh = u.atom(cert.fresh);
    if fresh.level() != 0 || fresh.element() != cert.p {
        return Err(ReplayError::BadFreshAtom(cert.fresh));
    }
    let target_sector: Vec<AtomId> = u
        .atoms()
        .filter(|(_, a)| a.element() == cert.q)
        .map(|(id, _)| id)
        .collect();
    if cert.evidence.len() != target_sector.len()
        || cert
            .evidence
            .iter()
            .zip(&target_sector)
            .any(|(e, &b)| e.atom != b)
    {
        return Err(ReplayError::IncompleteEvidence);
    }
    for e in &cert.evidence {
        if cert.kind == RefutationKind::NoSurjection && e.branch != Branch::MovesFresh {
            return Err(ReplayError::BadBranch);
        }
        if !member(u, &e.permutation) {
            return Err(ReplayError::NotAMember(e.atom));
        }
        let (fixed, moved) = match e.branch {
            Branch::MovesFresh => (e.atom, cert.fresh),
            Branch::MovesImage => (cert.fresh, e.atom),
        };
        if cert
            .support
            .iter()
            .chain(std::iter::once(&fixed))
            .any(|&a| e.permutation.apply(a) != a)
        {
            return Err(ReplayError::MovesFixed(e.atom));
        }
        if e.permutation.apply(moved) == moved {
            return Err(ReplayError::DoesNotMove(e.atom));
        }
    }
    Ok(())
}
