//! Finite doubly ordered sets: a carrier with a partial order `≼` and a
//! preorder `≼*` containing it.
//!
//! Relations are dense boolean matrices indexed by the position of an element
//! in the lexicographically sorted carrier.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Largest carrier accepted by [`enumerate_small_doubly_ordered`].
pub const ENUMERATION_LIMIT: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error(
        "invalid element identifier `{0}` (must be non-empty, without whitespace or any of `@[]#`)"
    )]
    InvalidIdentifier(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation `{relation}` is not reflexive: missing ({element}, {element})")]
    NotReflexive {
        relation: RelationName,
        element: String,
    },
    #[error("`le` is not antisymmetric: both ({0}, {1}) and ({1}, {0})")]
    NotAntisymmetric(String, String),
    #[error(
        "relation `{relation}` is not transitive: ({p}, {q}) and ({q}, {r}) but not ({p}, {r})"
    )]
    NotTransitive {
        relation: RelationName,
        p: String,
        q: String,
        r: String,
    },
    #[error("`le` is not contained in `lestar`: ({0}, {1})")]
    NotContained(String, String),
    #[error("enumeration of carriers with {0} elements exceeds the budget of {ENUMERATION_LIMIT}")]
    BudgetExceeded(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationName {
    Le,
    LeStar,
}

impl fmt::Display for RelationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationName::Le => f.write_str("le"),
            RelationName::LeStar => f.write_str("lestar"),
        }
    }
}

/// Raw, unvalidated encoding of a doubly ordered set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrderSpec {
    pub elements: Vec<String>,
    pub le: BTreeSet<(String, String)>,
    pub lestar: BTreeSet<(String, String)>,
}

impl OrderSpec {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = S>) -> Self {
        OrderSpec {
            elements: elements.into_iter().map(Into::into).collect(),
            ..OrderSpec::default()
        }
    }

    pub fn with_le(mut self, pairs: &[(&str, &str)]) -> Self {
        self.le
            .extend(pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())));
        self
    }

    pub fn with_lestar(mut self, pairs: &[(&str, &str)]) -> Self {
        self.lestar
            .extend(pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())));
        self
    }

    /// Adds `(e, e)` for every element to both relations.
    pub fn with_reflexive(mut self) -> Self {
        for e in &self.elements {
            self.le.insert((e.clone(), e.clone()));
            self.lestar.insert((e.clone(), e.clone()));
        }
        self
    }
}

pub fn is_valid_identifier(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '@' | '[' | ']' | '#'))
}

/// A square boolean matrix over carrier positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    size: usize,
    cells: Vec<bool>,
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        Relation {
            size,
            cells: vec![false; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut r = Relation::empty(size);
        for i in 0..size {
            r.set(i, i, true);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, p: usize, q: usize) -> bool {
        self.cells[p * self.size + q]
    }

    #[inline]
    pub fn set(&mut self, p: usize, q: usize, value: bool) {
        self.cells[p * self.size + q] = value;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size)
            .flat_map(move |p| (0..self.size).map(move |q| (p, q)))
            .filter(move |&(p, q)| self.get(p, q))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.size == other.size && self.pairs().all(|(p, q)| other.get(p, q))
    }

    fn first_non_reflexive(&self) -> Option<usize> {
        (0..self.size).find(|&i| !self.get(i, i))
    }

    fn first_non_antisymmetric(&self) -> Option<(usize, usize)> {
        self.pairs().find(|&(p, q)| p != q && self.get(q, p))
    }

    fn first_non_transitive(&self) -> Option<(usize, usize, usize)> {
        for (p, q) in self.pairs() {
            for r in 0..self.size {
                if self.get(q, r) && !self.get(p, r) {
                    return Some((p, q, r));
                }
            }
        }
        None
    }

    /// Reflexive-transitive closure (Warshall).
    pub fn reflexive_transitive_closure(&self) -> Relation {
        let mut r = self.clone();
        for i in 0..self.size {
            r.set(i, i, true);
        }
        for k in 0..self.size {
            for i in 0..self.size {
                if r.get(i, k) {
                    for j in 0..self.size {
                        if r.get(k, j) {
                            r.set(i, j, true);
                        }
                    }
                }
            }
        }
        r
    }

    fn from_bits(size: usize, bits: u32) -> Relation {
        let mut r = Relation::empty(size);
        for i in 0..size * size {
            r.cells[i] = bits >> i & 1 == 1;
        }
        r
    }

    pub fn is_partial_order(&self) -> bool {
        self.first_non_reflexive().is_none()
            && self.first_non_antisymmetric().is_none()
            && self.first_non_transitive().is_none()
    }

    pub fn is_preorder(&self) -> bool {
        self.first_non_reflexive().is_none() && self.first_non_transitive().is_none()
    }
}

/// A validated triple `⟨P, ≼, ≼*⟩`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoublyOrderedSet {
    elements: Vec<String>,
    le: Relation,
    lestar: Relation,
}

impl DoublyOrderedSet {
    /// The carrier, sorted lexicographically. Element positions in this slice
    /// are the indices used throughout the crate.
    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, OrderError> {
        self.elements
            .binary_search_by(|e| e.as_str().cmp(name))
            .map_err(|_| OrderError::UnknownElement(name.to_string()))
    }

    pub fn name(&self, index: usize) -> &str {
        &self.elements[index]
    }

    pub fn le_relation(&self) -> &Relation {
        &self.le
    }

    pub fn lestar_relation(&self) -> &Relation {
        &self.lestar
    }

    #[inline]
    pub fn le(&self, p: usize, q: usize) -> bool {
        self.le.get(p, q)
    }

    #[inline]
    pub fn lestar(&self, p: usize, q: usize) -> bool {
        self.lestar.get(p, q)
    }

    /// The strict part of `≼`.
    #[inline]
    pub fn strictly_less(&self, p: usize, q: usize) -> bool {
        p != q && self.le.get(p, q)
    }

    /// Name-based [`DoublyOrderedSet::strictly_less`].
    pub fn strict_less(&self, p: &str, q: &str) -> Result<bool, OrderError> {
        Ok(self.strictly_less(self.index_of(p)?, self.index_of(q)?))
    }

    /// Converts back to the raw pair encoding (elements sorted).
    pub fn to_spec(&self) -> OrderSpec {
        let name_pairs = |r: &Relation| {
            r.pairs()
                .map(|(p, q)| (self.elements[p].clone(), self.elements[q].clone()))
                .collect()
        };
        OrderSpec {
            elements: self.elements.clone(),
            le: name_pairs(&self.le),
            lestar: name_pairs(&self.lestar),
        }
    }
}

fn index_spec(spec: &OrderSpec) -> Result<(Vec<String>, BTreeMap<&str, usize>), OrderError> {
    let mut sorted = spec.elements.clone();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(OrderError::DuplicateElement(w[0].clone()));
        }
    }
    if let Some(bad) = sorted.iter().find(|e| !is_valid_identifier(e)) {
        return Err(OrderError::InvalidIdentifier(bad.clone()));
    }
    let index = spec
        .elements
        .iter()
        .map(|e| (e.as_str(), sorted.binary_search(e).unwrap()))
        .collect();
    Ok((sorted, index))
}

fn to_matrix(
    pairs: &BTreeSet<(String, String)>,
    index: &BTreeMap<&str, usize>,
) -> Result<Relation, OrderError> {
    let mut r = Relation::empty(index.len());
    for (a, b) in pairs {
        let ia = *index
            .get(a.as_str())
            .ok_or_else(|| OrderError::UnknownElement(a.clone()))?;
        let ib = *index
            .get(b.as_str())
            .ok_or_else(|| OrderError::UnknownElement(b.clone()))?;
        r.set(ia, ib, true);
    }
    Ok(r)
}

/// Checks the doubly-ordered-set axioms on the literal pair sets.
///
/// Violations are reported in a fixed order (reflexivity, antisymmetry,
/// transitivity, containment) and name the first offending tuple in
/// carrier order.
pub fn validate_order(spec: &OrderSpec) -> Result<DoublyOrderedSet, OrderError> {
    let (elements, index) = index_spec(spec)?;
    let le = to_matrix(&spec.le, &index)?;
    let lestar = to_matrix(&spec.lestar, &index)?;
    let name = |i: usize| elements[i].clone();

    for (relation, r) in [(RelationName::Le, &le), (RelationName::LeStar, &lestar)] {
        if let Some(i) = r.first_non_reflexive() {
            return Err(OrderError::NotReflexive {
                relation,
                element: name(i),
            });
        }
    }
    if let Some((p, q)) = le.first_non_antisymmetric() {
        return Err(OrderError::NotAntisymmetric(name(p), name(q)));
    }
    for (relation, r) in [(RelationName::Le, &le), (RelationName::LeStar, &lestar)] {
        if let Some((p, q, r)) = r.first_non_transitive() {
            return Err(OrderError::NotTransitive {
                relation,
                p: name(p),
                q: name(q),
                r: name(r),
            });
        }
    }
    if let Some((p, q)) = le.pairs().find(|&(p, q)| !lestar.get(p, q)) {
        return Err(OrderError::NotContained(name(p), name(q)));
    }
    Ok(DoublyOrderedSet {
        elements,
        le,
        lestar,
    })
}

/// Replaces both relations by their reflexive-transitive closures, with
/// `lestar` also absorbing the closed `le`. Unknown endpoints are left for
/// [`validate_order`] to report.
pub fn complete_relations(spec: &OrderSpec) -> OrderSpec {
    let close = |pairs: &BTreeSet<(String, String)>| {
        let mut out: BTreeSet<(String, String)> = pairs.clone();
        for e in &spec.elements {
            out.insert((e.clone(), e.clone()));
        }
        loop {
            let mut added = Vec::new();
            for (a, b) in &out {
                for (c, d) in out.range((b.clone(), String::new())..) {
                    if c != b {
                        break;
                    }
                    if !out.contains(&(a.clone(), d.clone())) {
                        added.push((a.clone(), d.clone()));
                    }
                }
            }
            if added.is_empty() {
                return out;
            }
            out.extend(added);
        }
    };
    let le = close(&spec.le);
    let mut lestar_input = spec.lestar.clone();
    lestar_input.extend(le.iter().cloned());
    OrderSpec {
        elements: spec.elements.clone(),
        le,
        lestar: close(&lestar_input),
    }
}

/// Every labeled doubly ordered set on `{e1, …, en}`, partial orders in
/// increasing bit-mask order, each followed by its containing preorders in
/// increasing bit-mask order.
pub fn enumerate_small_doubly_ordered(
    n: usize,
) -> Result<impl Iterator<Item = DoublyOrderedSet>, OrderError> {
    if n > ENUMERATION_LIMIT {
        return Err(OrderError::BudgetExceeded(n));
    }
    let elements: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let relations: Vec<Relation> = (0u32..1 << (n * n))
        .map(|bits| Relation::from_bits(n, bits))
        .collect();
    let partial: Vec<Relation> = relations
        .iter()
        .filter(|r| r.is_partial_order())
        .cloned()
        .collect();
    let pre: Vec<Relation> = relations.into_iter().filter(|r| r.is_preorder()).collect();
    Ok(partial.into_iter().flat_map(move |le| {
        let elements = elements.clone();
        pre.iter()
            .filter(|lestar| le.is_subset(lestar))
            .map(|lestar| DoublyOrderedSet {
                elements: elements.clone(),
                le: le.clone(),
                lestar: lestar.clone(),
            })
            .collect::<Vec<_>>()
    }))
}
