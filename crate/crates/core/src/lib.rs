//! Finite truncations of a permutation model that realizes a doubly ordered
//! set `⟨P, ≼, ≼*⟩` inside the injective (`≤`) and surjective (`≤*`)
//! cardinal orders.
//!
//! For each element `p` the sector `S_p` of atoms tagged `p` stands for a
//! cardinal. Comparisons that should hold are witnessed by explicit maps
//! between sectors; comparisons that should fail are refuted by
//! certificates built from group members that fix a finite support and move
//! an atom outside its closure. Everything is computed on the truncation
//! `T(N, K)` with atom levels `≤ N` and family indices `< K`.
//!
//! ```
//! use cardlab::{build_universe, embedding_report, validate_order, OrderSpec, ReportConfig};
//!
//! let order = validate_order(
//!     &OrderSpec::new(["p", "q"])
//!         .with_reflexive()
//!         .with_le(&[("p", "q")])
//!         .with_lestar(&[("p", "q")]),
//! )?;
//! let universe = build_universe(&order, 2, 4)?;
//! let report = embedding_report(&universe, &ReportConfig::default())?;
//! assert!(report.matches_input());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod atomset;
pub mod cli;
pub mod closure;
pub mod embedding;
pub mod group;
pub mod order;
pub mod path;
pub mod universe;

pub use atomset::AtomSet;
pub use closure::{closure, is_closed, nonzero_index_part, ClosureSet};
pub use embedding::{
    embedding_report, injection_witness, refute_injection, refute_surjection, surjection_witness,
    EmbeddingReport, RefutationCertificate, ReportConfig, Verdict, WitnessMap,
};
pub use group::{fixing_generators, is_member, mover, orbits, Permutation};
pub use order::{
    complete_relations, enumerate_small_doubly_ordered, validate_order, DoublyOrderedSet, OrderSpec,
};
pub use universe::{build_universe, Atom, AtomId, Universe};
