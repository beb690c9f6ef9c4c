use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::group::fixing_generators;
use crate::order::DoublyOrderedSet;
use crate::universe::{AtomId, Universe};

use super::replay::{replay_certificate, replay_witness};
use super::witness::{injection_witness_at, lestar_witness_from_le, surjection_witness_at};
use super::{EmbeddingError, RefutationCertificate, Refuter, WitnessMap};

/// How supports are drawn for negative cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSampling {
    /// Enumerate every support when there are at most this many.
    pub exhaustive_limit: usize,
    /// Number of random non-empty supports otherwise (the empty support is
    /// always included).
    pub samples: usize,
    pub seed: u64,
}

impl Default for SupportSampling {
    fn default() -> Self {
        SupportSampling {
            exhaustive_limit: 4096,
            samples: 256,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportConfig {
    pub support_budget: usize,
    pub sampling: SupportSampling,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            support_budget: 1,
            sampling: SupportSampling::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportsUsed {
    Exhaustive { count: usize },
    Sampled { count: usize, seed: u64 },
}

impl SupportsUsed {
    pub fn count(&self) -> usize {
        match *self {
            SupportsUsed::Exhaustive { count } | SupportsUsed::Sampled { count, .. } => count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Positive(WitnessMap),
    /// `certificate` is the one for the empty support; every support counted
    /// in `supports_certified` produced a certificate that replayed.
    Negative {
        certificate: RefutationCertificate,
        supports_certified: usize,
    },
    /// Evidence was produced but failed replay. Indicates a bug.
    Failed {
        reason: String,
    },
}

impl Verdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, Verdict::Positive(_))
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Verdict::Negative { .. })
    }
}

/// Verdict matrices for `≤` and `≤*` between all pairs of sectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub order: DoublyOrderedSet,
    pub depth: usize,
    pub index_budget: usize,
    pub support_budget: usize,
    pub supports: SupportsUsed,
    /// `le[p][q]` decides `|S_p| ≤ |S_q|`.
    pub le: Vec<Vec<Verdict>>,
    /// `lestar[p][q]` decides `|S_p| ≤* |S_q|`.
    pub lestar: Vec<Vec<Verdict>>,
}

impl EmbeddingReport {
    /// `(relation, p, q)` for every cell whose verdict disagrees with the
    /// input order, including failed cells.
    pub fn mismatches(&self) -> Vec<(&'static str, usize, usize)> {
        let mut out = Vec::new();
        let n = self.order.len();
        for p in 0..n {
            for q in 0..n {
                let expected = [
                    ("le", self.order.le(p, q), &self.le[p][q]),
                    ("lestar", self.order.lestar(p, q), &self.lestar[p][q]),
                ];
                for (name, holds, verdict) in expected {
                    let ok = if holds {
                        verdict.is_positive()
                    } else {
                        verdict.is_negative()
                    };
                    if !ok {
                        out.push((name, p, q));
                    }
                }
            }
        }
        out
    }

    pub fn matches_input(&self) -> bool {
        self.mismatches().is_empty()
    }
}

/// An index budget that always leaves room for refutations over supports of
/// `support_budget` atoms: the supports and the candidate image can each
/// occupy one index of the fresh atom's family, which itself needs one more
/// free index to move to.
pub fn suggested_index_budget(support_budget: usize) -> usize {
    support_budget + 3
}

fn binomial_sum(n: usize, k: usize) -> usize {
    let mut total: usize = 0;
    let mut term: u128 = 1;
    for i in 0..=k.min(n) {
        if i > 0 {
            term = term * (n - i + 1) as u128 / i as u128;
        }
        total = total.saturating_add(usize::try_from(term).unwrap_or(usize::MAX));
    }
    total
}

/// Supports of at most `budget` atoms: all of them, ordered by size and then
/// lexicographically, when few enough; otherwise the empty support followed
/// by seeded random ones.
pub fn enumerate_supports(
    u: &Universe,
    budget: usize,
    sampling: &SupportSampling,
) -> (Vec<Vec<AtomId>>, SupportsUsed) {
    let n = u.len();
    let total = binomial_sum(n, budget);
    if total <= sampling.exhaustive_limit {
        let mut out = vec![Vec::new()];
        for size in 1..=budget.min(n) {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                out.push(combo.iter().map(|&i| AtomId::from_index(i)).collect());
                let Some(i) = (0..size).rev().find(|&i| combo[i] != i + n - size) else {
                    break;
                };
                combo[i] += 1;
                for j in i + 1..size {
                    combo[j] = combo[j - 1] + 1;
                }
            }
        }
        let count = out.len();
        return (out, SupportsUsed::Exhaustive { count });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let mut out = vec![Vec::new()];
    for _ in 0..sampling.samples {
        let size = rand::Rng::random_range(&mut rng, 1..=budget.min(n));
        let mut s: Vec<AtomId> = rand::seq::index::sample(&mut rng, n, size)
            .into_iter()
            .map(AtomId::from_index)
            .collect();
        s.sort();
        out.push(s);
    }
    let count = out.len();
    (
        out,
        SupportsUsed::Sampled {
            count,
            seed: sampling.seed,
        },
    )
}

/// Builds and replays evidence for every cell of both matrices.
///
/// Positive cells get an explicit witness replayed against the index
/// transpositions of the whole group. Negative cells get a certificate for
/// every support in the sample; each is replayed, and the one for the empty
/// support is kept. Supports are processed in parallel, and the result is
/// identical to a sequential run.
pub fn embedding_report(
    u: &Universe,
    config: &ReportConfig,
) -> Result<EmbeddingReport, EmbeddingError> {
    let order = u.order();
    let n = order.len();
    let generators = fixing_generators(u, &u.empty_set());
    let refuter = Refuter::new(u);
    let (supports, used) = enumerate_supports(u, config.support_budget, &config.sampling);

    let positive = |w: WitnessMap| match replay_witness(u, &w, &generators) {
        Ok(()) => Verdict::Positive(w),
        Err(e) => Verdict::Failed {
            reason: e.to_string(),
        },
    };
    let negative = |refute: &(dyn Fn(&[AtomId]) -> Result<RefutationCertificate, EmbeddingError>
                          + Sync)|
     -> Result<Verdict, EmbeddingError> {
        let results: Vec<Result<Result<Option<RefutationCertificate>, String>, EmbeddingError>> =
            supports
                .par_iter()
                .enumerate()
                .map(|(i, s)| {
                    let cert = refute(s)?;
                    Ok(match replay_certificate(u, &cert) {
                        Ok(()) => Ok((i == 0).then_some(cert)),
                        Err(e) => Err(format!("support {s:?}: {e}")),
                    })
                })
                .collect();
        let mut kept = None;
        for r in results {
            match r? {
                Ok(Some(cert)) => kept = Some(cert),
                Ok(None) => {}
                Err(reason) => return Ok(Verdict::Failed { reason }),
            }
        }
        Ok(Verdict::Negative {
            certificate: kept.expect("the empty support comes first"),
            supports_certified: supports.len(),
        })
    };
    let widen = |e: EmbeddingError| match e {
        EmbeddingError::IndexBudgetExhausted {
            index_budget,
            suggested,
        } => EmbeddingError::IndexBudgetExhausted {
            index_budget,
            suggested: suggested.max(suggested_index_budget(config.support_budget)),
        },
        other => other,
    };

    let mut le = Vec::with_capacity(n);
    let mut lestar = Vec::with_capacity(n);
    for p in 0..n {
        let mut le_row = Vec::with_capacity(n);
        let mut lestar_row = Vec::with_capacity(n);
        for q in 0..n {
            if order.le(p, q) {
                let w = injection_witness_at(u, p, q)?;
                lestar_row.push(positive(lestar_witness_from_le(&w)?));
                le_row.push(positive(w));
                continue;
            }
            le_row.push(negative(&|s| refuter.refute_injection(p, q, s)).map_err(widen)?);
            lestar_row.push(if order.lestar(p, q) {
                positive(surjection_witness_at(u, p, q)?)
            } else {
                negative(&|s| refuter.refute_surjection(p, q, s)).map_err(widen)?
            });
        }
        le.push(le_row);
        lestar.push(lestar_row);
    }
    Ok(EmbeddingReport {
        order: order.clone(),
        depth: u.depth(),
        index_budget: u.index_budget(),
        support_budget: config.support_budget,
        supports: used,
        le,
        lestar,
    })
}
