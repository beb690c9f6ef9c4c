use crate::universe::{AtomKind, Universe, UniverseError};

use super::{Coverage, EmbeddingError, WitnessKind, WitnessMap};

pub(crate) fn element_pair(
    u: &Universe,
    p: &str,
    q: &str,
) -> Result<(usize, usize), EmbeddingError> {
    let order = u.order();
    let index = |name| order.index_of(name).map_err(UniverseError::from);
    Ok((index(p)?, index(q)?))
}

fn below_top(u: &Universe) -> Option<usize> {
    u.depth().checked_sub(1)
}

/// For `p ≺ q`: `a ↦ ⟨level(a)+1, q, a, 0⟩`, total on `S_p ∩ A_{N-1}`.
/// For `p = q` the identity on `S_p`.
pub fn injection_witness(u: &Universe, p: &str, q: &str) -> Result<WitnessMap, EmbeddingError> {
    let (pi, qi) = element_pair(u, p, q)?;
    injection_witness_at(u, pi, qi)
}

pub(crate) fn injection_witness_at(
    u: &Universe,
    p: usize,
    q: usize,
) -> Result<WitnessMap, EmbeddingError> {
    if p == q {
        return Ok(WitnessMap {
            kind: WitnessKind::Injection,
            source: p,
            target: q,
            pairs: u.sector_of(p).iter().map(|&a| (a, a)).collect(),
            coverage: Coverage {
                sector: p,
                up_to_level: Some(u.depth()),
            },
        });
    }
    if !u.order().strictly_less(p, q) {
        return Err(EmbeddingError::NotStrictlyLess {
            p: u.order().name(p).to_string(),
            q: u.order().name(q).to_string(),
        });
    }
    let pairs = u
        .sector_of(p)
        .iter()
        .filter(|&&a| u.atom(a).level() < u.depth())
        .map(|&a| {
            let image = u
                .find(u.atom(a).level() + 1, q, Some(a), 0)
                .expect("injective child exists below the top stratum");
            (a, image)
        })
        .collect();
    Ok(WitnessMap {
        kind: WitnessKind::Injection,
        source: p,
        target: q,
        pairs,
        coverage: Coverage {
            sector: p,
            up_to_level: below_top(u),
        },
    })
}

/// For `p ⋠ q` and `p ≼* q`: surjective atoms `b ∈ S_q` with parent in `S_p`
/// map to their parent, covering `S_p ∩ A_{N-1}`.
pub fn surjection_witness(u: &Universe, p: &str, q: &str) -> Result<WitnessMap, EmbeddingError> {
    let (pi, qi) = element_pair(u, p, q)?;
    surjection_witness_at(u, pi, qi)
}

pub(crate) fn surjection_witness_at(
    u: &Universe,
    p: usize,
    q: usize,
) -> Result<WitnessMap, EmbeddingError> {
    let order = u.order();
    if order.le(p, q) || !order.lestar(p, q) {
        return Err(EmbeddingError::PreconditionViolated {
            operation: "surjection_witness",
            p: order.name(p).to_string(),
            q: order.name(q).to_string(),
        });
    }
    let pairs = u
        .sector_of(q)
        .iter()
        .filter_map(|&b| {
            let atom = u.atom(b);
            let parent = atom.parent()?;
            (atom.kind() == AtomKind::Surjective && u.atom(parent).element() == p)
                .then_some((b, parent))
        })
        .collect();
    Ok(WitnessMap {
        kind: WitnessKind::PartialSurjection,
        source: q,
        target: p,
        pairs,
        coverage: Coverage {
            sector: p,
            up_to_level: below_top(u),
        },
    })
}

/// Inverts an injection `S_p → S_q` into a partial surjection from `S_q`
/// onto the injection's domain.
pub fn lestar_witness_from_le(w: &WitnessMap) -> Result<WitnessMap, EmbeddingError> {
    if w.kind != WitnessKind::Injection {
        return Err(EmbeddingError::PreconditionViolated {
            operation: "lestar_witness_from_le",
            p: w.source.to_string(),
            q: w.target.to_string(),
        });
    }
    let mut pairs: Vec<_> = w.pairs.iter().map(|&(a, b)| (b, a)).collect();
    pairs.sort();
    Ok(WitnessMap {
        kind: WitnessKind::PartialSurjection,
        source: w.target,
        target: w.source,
        pairs,
        coverage: w.coverage,
    })
}
