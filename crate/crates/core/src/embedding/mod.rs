//! Evidence for the cardinal comparisons between sectors.
//!
//! Positive comparisons are witnessed by explicit maps between sectors;
//! negative ones by refutation certificates: a fresh level-0 atom `c` plus,
//! for every candidate image `b`, a group member that fixes the relevant
//! atoms pointwise and moves the one the hypothetical map cannot move.

mod refute;
mod replay;
mod report;
mod witness;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::closure::ClosureError;
use crate::group::{GroupError, Permutation};
use crate::universe::{AtomId, UniverseError};

pub use refute::{refute_injection, refute_surjection, Refuter};
pub use replay::{replay_certificate, replay_witness, ReplayError};
pub use report::{
    embedding_report, enumerate_supports, suggested_index_budget, EmbeddingReport, ReportConfig,
    SupportSampling, SupportsUsed, Verdict,
};
pub use witness::{injection_witness, lestar_witness_from_le, surjection_witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("`{p}` is not strictly below `{q}`")]
    NotStrictlyLess { p: String, q: String },
    #[error("precondition of {operation} violated for ({p}, {q})")]
    PreconditionViolated {
        operation: &'static str,
        p: String,
        q: String,
    },
    #[error(
        "index budget {index_budget} is too small; rerun with an index budget of at least {suggested}"
    )]
    IndexBudgetExhausted {
        index_budget: usize,
        suggested: usize,
    },
    #[error(transparent)]
    Shape(#[from] ClosureError),
    #[error(transparent)]
    Group(GroupError),
    #[error(transparent)]
    Universe(#[from] UniverseError),
}

impl From<GroupError> for EmbeddingError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::IndexBudgetExhausted {
                index_budget,
                suggested,
                ..
            } => EmbeddingError::IndexBudgetExhausted {
                index_budget,
                suggested,
            },
            other => EmbeddingError::Group(other),
        }
    }
}

/// `|x| ≤ |y|`: an injection from `x` into `y` exists.
pub fn finite_le<T: Ord>(x: &BTreeSet<T>, y: &BTreeSet<T>) -> bool {
    x.len() <= y.len()
}

/// `|x| ≤* |y|`: a partial surjection from `y` onto `x` exists.
pub fn finite_lestar<T: Ord>(x: &BTreeSet<T>, y: &BTreeSet<T>) -> bool {
    x.is_empty() || x.len() <= y.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    Injection,
    PartialSurjection,
}

/// The atoms of sector `sector` up to level `up_to_level`; `None` is the
/// empty set (a witness into the top stratum of a depth-0 universe).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coverage {
    pub sector: usize,
    pub up_to_level: Option<usize>,
}

/// An explicit map between sectors.
///
/// For an injection, `pairs` maps `S_source` into `S_target` and its domain
/// is exactly `coverage`. For a partial surjection, `pairs` maps part of
/// `S_source` onto a set containing `coverage ⊆ S_target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessMap {
    pub kind: WitnessKind,
    pub source: usize,
    pub target: usize,
    pub pairs: Vec<(AtomId, AtomId)>,
    pub coverage: Coverage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefutationKind {
    /// Refutes `|S_p| ≤* |S_q|`.
    NoSurjection,
    /// Refutes `|S_p| ≤ |S_q|`.
    NoInjection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// The permutation fixes `support ∪ {b}` and moves the fresh atom.
    MovesFresh,
    /// The permutation fixes `support ∪ {c}` and moves `b`.
    MovesImage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub atom: AtomId,
    pub branch: Branch,
    pub permutation: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationCertificate {
    pub kind: RefutationKind,
    pub p: usize,
    pub q: usize,
    pub support: Vec<AtomId>,
    pub fresh: AtomId,
    /// One entry per atom of `S_q`, in id order.
    pub evidence: Vec<Evidence>,
}

impl Evidence {
    /// Atoms the permutation must fix, and the atom it must move.
    pub fn obligations(&self, support: &[AtomId], fresh: AtomId) -> (Vec<AtomId>, AtomId) {
        let mut fixed = support.to_vec();
        match self.branch {
            Branch::MovesFresh => {
                fixed.push(self.atom);
                (fixed, fresh)
            }
            Branch::MovesImage => {
                fixed.push(fresh);
                (fixed, self.atom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_comparisons() {
        let a: BTreeSet<u8> = [1, 2].into();
        let b: BTreeSet<u8> = [1, 2, 3].into();
        assert!(finite_le(&a, &b));
        assert!(!finite_lestar(&b, &a));
        let e = BTreeSet::<u8>::new();
        assert!(finite_le(&e, &e) && finite_lestar(&e, &e));
        assert!(finite_lestar(&e, &a));
    }
}
