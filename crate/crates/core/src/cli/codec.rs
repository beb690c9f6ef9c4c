//! JSON documents for specs, witnesses, certificates and reports.
//!
//! Atoms are written as paths and permutations as disjoint cycles of paths,
//! so documents do not depend on interning order. `serde_json::Map` is
//! ordered, which keeps object keys sorted; [`to_document`] adds the final
//! newline.

use std::collections::BTreeSet;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::embedding::{
    Branch, Coverage, EmbeddingReport, Evidence, RefutationCertificate, RefutationKind,
    SupportsUsed, Verdict, WitnessKind, WitnessMap,
};
use crate::group::{GroupError, Permutation};
use crate::order::{validate_order, DoublyOrderedSet, OrderError, OrderSpec};
use crate::path::{atom_path, parse_atom_path, PathError};
use crate::universe::{AtomId, Universe, UniverseError, DEFAULT_SIZE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{at}: {message}")]
    Schema { at: String, message: String },
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error("invalid permutation: {0}")]
    Group(#[from] GroupError),
}

fn schema(at: &str, message: impl Into<String>) -> CodecError {
    CodecError::Schema {
        at: at.to_string(),
        message: message.into(),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_document(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
    s.push('\n');
    s
}

pub fn parse_document(text: &str) -> Result<Value, CodecError> {
    serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        CodecError::Json {
            line: e.line(),
            column: e.column(),
            message,
        }
    })
}

fn object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>, CodecError> {
    v.as_object()
        .ok_or_else(|| schema(at, "expected an object"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value, CodecError> {
    m.get(key)
        .ok_or_else(|| schema(at, format!("missing field `{key}`")))
}

fn string<'a>(v: &'a Value, at: &str) -> Result<&'a str, CodecError> {
    v.as_str().ok_or_else(|| schema(at, "expected a string"))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>, CodecError> {
    v.as_array().ok_or_else(|| schema(at, "expected an array"))
}

fn number(v: &Value, at: &str) -> Result<usize, CodecError> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| schema(at, "expected a non-negative integer"))
}

fn pair<'a>(v: &'a Value, at: &str) -> Result<(&'a Value, &'a Value), CodecError> {
    match array(v, at)?.as_slice() {
        [a, b] => Ok((a, b)),
        _ => Err(schema(at, "expected a pair")),
    }
}

// ---------------------------------------------------------------------------
// Specs

pub fn spec_to_value(spec: &OrderSpec) -> Value {
    let pairs = |set: &BTreeSet<(String, String)>| -> Value {
        set.iter().map(|(a, b)| json!([a, b])).collect()
    };
    json!({
        "elements": spec.elements,
        "le": pairs(&spec.le),
        "lestar": pairs(&spec.lestar),
    })
}

pub fn spec_from_value(v: &Value) -> Result<OrderSpec, CodecError> {
    let m = object(v, "spec")?;
    for key in m.keys() {
        if !matches!(key.as_str(), "elements" | "le" | "lestar") {
            return Err(schema("spec", format!("unexpected field `{key}`")));
        }
    }
    let elements = array(field(m, "elements", "spec")?, "spec.elements")?
        .iter()
        .map(|e| string(e, "spec.elements").map(str::to_string))
        .collect::<Result<Vec<_>, _>>()?;
    let relation = |key: &str| -> Result<BTreeSet<(String, String)>, CodecError> {
        let at = format!("spec.{key}");
        let Some(v) = m.get(key) else {
            return Ok(BTreeSet::new());
        };
        array(v, &at)?
            .iter()
            .map(|p| {
                let (a, b) = pair(p, &at)?;
                Ok((string(a, &at)?.to_string(), string(b, &at)?.to_string()))
            })
            .collect()
    };
    Ok(OrderSpec {
        elements,
        le: relation("le")?,
        lestar: relation("lestar")?,
    })
}

pub fn serialize_spec(spec: &OrderSpec) -> String {
    to_document(&spec_to_value(spec))
}

pub fn parse_spec(text: &str) -> Result<OrderSpec, CodecError> {
    spec_from_value(&parse_document(text)?)
}

// ---------------------------------------------------------------------------
// Atoms and permutations

fn path_value(u: &Universe, a: AtomId) -> Value {
    Value::String(atom_path(u, a))
}

fn atom_from(u: &Universe, v: &Value, at: &str) -> Result<AtomId, CodecError> {
    Ok(parse_atom_path(u, string(v, at)?)?)
}

fn atoms_from(u: &Universe, v: &Value, at: &str) -> Result<Vec<AtomId>, CodecError> {
    array(v, at)?.iter().map(|a| atom_from(u, a, at)).collect()
}

pub fn permutation_to_value(u: &Universe, g: &Permutation) -> Value {
    g.cycles()
        .iter()
        .map(|c| c.iter().map(|&a| path_value(u, a)).collect::<Value>())
        .collect()
}

pub fn permutation_from_value(u: &Universe, v: &Value) -> Result<Permutation, CodecError> {
    let cycles = array(v, "cycles")?
        .iter()
        .map(|c| atoms_from(u, c, "cycles"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Permutation::from_cycles(u, &cycles)?)
}

fn element_from(order: &DoublyOrderedSet, v: &Value, at: &str) -> Result<usize, CodecError> {
    Ok(order.index_of(string(v, at)?)?)
}

// ---------------------------------------------------------------------------
// Witnesses and certificates

pub fn witness_to_value(u: &Universe, w: &WitnessMap) -> Value {
    let order = u.order();
    json!({
        "kind": match w.kind {
            WitnessKind::Injection => "injection",
            WitnessKind::PartialSurjection => "partial_surjection",
        },
        "source": order.name(w.source),
        "target": order.name(w.target),
        "coverage": {
            "sector": order.name(w.coverage.sector),
            "up_to_level": w.coverage.up_to_level,
        },
        "pairs": w.pairs.iter()
            .map(|&(a, b)| json!([atom_path(u, a), atom_path(u, b)]))
            .collect::<Value>(),
    })
}

pub fn witness_from_value(u: &Universe, v: &Value) -> Result<WitnessMap, CodecError> {
    let order = u.order();
    let m = object(v, "witness")?;
    let kind = match string(field(m, "kind", "witness")?, "witness.kind")? {
        "injection" => WitnessKind::Injection,
        "partial_surjection" => WitnessKind::PartialSurjection,
        other => return Err(schema("witness.kind", format!("unknown kind `{other}`"))),
    };
    let cov = object(field(m, "coverage", "witness")?, "witness.coverage")?;
    let up_to_level = match field(cov, "up_to_level", "witness.coverage")? {
        Value::Null => None,
        n => Some(number(n, "witness.coverage.up_to_level")?),
    };
    let pairs = array(field(m, "pairs", "witness")?, "witness.pairs")?
        .iter()
        .map(|p| {
            let (a, b) = pair(p, "witness.pairs")?;
            Ok((
                atom_from(u, a, "witness.pairs")?,
                atom_from(u, b, "witness.pairs")?,
            ))
        })
        .collect::<Result<Vec<_>, CodecError>>()?;
    Ok(WitnessMap {
        kind,
        source: element_from(order, field(m, "source", "witness")?, "witness.source")?,
        target: element_from(order, field(m, "target", "witness")?, "witness.target")?,
        pairs,
        coverage: Coverage {
            sector: element_from(
                order,
                field(cov, "sector", "witness.coverage")?,
                "witness.coverage.sector",
            )?,
            up_to_level,
        },
    })
}

pub fn certificate_to_value(u: &Universe, cert: &RefutationCertificate) -> Value {
    let order = u.order();
    let evidence: Vec<Value> = cert
        .evidence
        .iter()
        .map(|e| {
            json!({
                "atom": atom_path(u, e.atom),
                "branch": match e.branch {
                    Branch::MovesFresh => "moves_fresh",
                    Branch::MovesImage => "moves_image",
                },
                "cycles": permutation_to_value(u, &e.permutation),
            })
        })
        .collect();
    json!({
        "kind": match cert.kind {
            RefutationKind::NoInjection => "no_injection",
            RefutationKind::NoSurjection => "no_surjection",
        },
        "p": order.name(cert.p),
        "q": order.name(cert.q),
        "support": cert.support.iter().map(|&a| path_value(u, a)).collect::<Value>(),
        "fresh": atom_path(u, cert.fresh),
        "evidence": evidence,
    })
}

pub fn certificate_from_value(
    u: &Universe,
    v: &Value,
) -> Result<RefutationCertificate, CodecError> {
    let order = u.order();
    let m = object(v, "certificate")?;
    let kind = match string(field(m, "kind", "certificate")?, "certificate.kind")? {
        "no_injection" => RefutationKind::NoInjection,
        "no_surjection" => RefutationKind::NoSurjection,
        other => {
            return Err(schema(
                "certificate.kind",
                format!("unknown kind `{other}`"),
            ))
        }
    };
    let evidence = array(field(m, "evidence", "certificate")?, "certificate.evidence")?
        .iter()
        .map(|e| {
            let at = "certificate.evidence";
            let e = object(e, at)?;
            let branch = match string(field(e, "branch", at)?, at)? {
                "moves_fresh" => Branch::MovesFresh,
                "moves_image" => Branch::MovesImage,
                other => return Err(schema(at, format!("unknown branch `{other}`"))),
            };
            Ok(Evidence {
                atom: atom_from(u, field(e, "atom", at)?, at)?,
                branch,
                permutation: permutation_from_value(u, field(e, "cycles", at)?)?,
            })
        })
        .collect::<Result<Vec<_>, CodecError>>()?;
    Ok(RefutationCertificate {
        kind,
        p: element_from(order, field(m, "p", "certificate")?, "certificate.p")?,
        q: element_from(order, field(m, "q", "certificate")?, "certificate.q")?,
        support: atoms_from(
            u,
            field(m, "support", "certificate")?,
            "certificate.support",
        )?,
        fresh: atom_from(u, field(m, "fresh", "certificate")?, "certificate.fresh")?,
        evidence,
    })
}

pub fn serialize_certificate(u: &Universe, cert: &RefutationCertificate) -> String {
    to_document(&certificate_to_value(u, cert))
}

pub fn parse_certificate(u: &Universe, text: &str) -> Result<RefutationCertificate, CodecError> {
    certificate_from_value(u, &parse_document(text)?)
}

// ---------------------------------------------------------------------------
// Reports

fn coverage_note(u: &Universe, c: &Coverage) -> String {
    let name = u.order().name(c.sector);
    match c.up_to_level {
        None => format!("no {name} atoms covered"),
        Some(n) => format!("{name} atoms of level <= {n}"),
    }
}

fn cell_to_value(u: &Universe, relation: &str, p: usize, q: usize, v: &Verdict) -> Value {
    let order = u.order();
    let id = format!("{relation}[{}][{}]", order.name(p), order.name(q));
    match v {
        Verdict::Positive(w) => json!({
            "verdict": "positive",
            "id": id,
            "notes": coverage_note(u, &w.coverage),
            "witness": witness_to_value(u, w),
        }),
        Verdict::Negative {
            certificate,
            supports_certified,
        } => json!({
            "verdict": "negative",
            "id": id,
            "notes": format!(
                "fresh atom {} at level 0; {} candidate images",
                atom_path(u, certificate.fresh),
                certificate.evidence.len()
            ),
            "supports_certified": supports_certified,
            "certificate": certificate_to_value(u, certificate),
        }),
        Verdict::Failed { reason } => json!({
            "verdict": "failed",
            "id": id,
            "reason": reason,
        }),
    }
}

fn cell_from_value(u: &Universe, v: &Value, at: &str) -> Result<Verdict, CodecError> {
    let m = object(v, at)?;
    match string(field(m, "verdict", at)?, at)? {
        "positive" => Ok(Verdict::Positive(witness_from_value(
            u,
            field(m, "witness", at)?,
        )?)),
        "negative" => Ok(Verdict::Negative {
            certificate: certificate_from_value(u, field(m, "certificate", at)?)?,
            supports_certified: number(field(m, "supports_certified", at)?, at)?,
        }),
        "failed" => Ok(Verdict::Failed {
            reason: string(field(m, "reason", at)?, at)?.to_string(),
        }),
        other => Err(schema(at, format!("unknown verdict `{other}`"))),
    }
}

fn matrix_to_value(u: &Universe, relation: &str, cells: &[Vec<Verdict>]) -> Value {
    let order = u.order();
    let mut rows = Map::new();
    for (p, row) in cells.iter().enumerate() {
        let mut cols = Map::new();
        for (q, v) in row.iter().enumerate() {
            cols.insert(
                order.name(q).to_string(),
                cell_to_value(u, relation, p, q, v),
            );
        }
        rows.insert(order.name(p).to_string(), Value::Object(cols));
    }
    Value::Object(rows)
}

fn matrix_from_value(
    u: &Universe,
    relation: &str,
    v: &Value,
) -> Result<Vec<Vec<Verdict>>, CodecError> {
    let order = u.order();
    let rows = object(v, relation)?;
    if rows.len() != order.len() {
        return Err(schema(relation, "wrong number of rows"));
    }
    (0..order.len())
        .map(|p| {
            let at = format!("{relation}.{}", order.name(p));
            let cols = object(field(rows, order.name(p), relation)?, &at)?;
            if cols.len() != order.len() {
                return Err(schema(&at, "wrong number of columns"));
            }
            (0..order.len())
                .map(|q| {
                    let at = format!("{at}.{}", order.name(q));
                    cell_from_value(u, field(cols, order.name(q), &at)?, &at)
                })
                .collect()
        })
        .collect()
}

/// `u` must be the universe the report was computed on.
pub fn report_to_value(u: &Universe, r: &EmbeddingReport) -> Value {
    let supports = match r.supports {
        SupportsUsed::Exhaustive { count } => json!({"mode": "exhaustive", "count": count}),
        SupportsUsed::Sampled { count, seed } => {
            json!({"mode": "sampled", "count": count, "seed": seed})
        }
    };
    json!({
        "header": {
            "order": spec_to_value(&r.order.to_spec()),
            "depth": r.depth,
            "index_budget": r.index_budget,
            "support_budget": r.support_budget,
            "atoms": u.len(),
            "supports": supports,
        },
        "le": matrix_to_value(u, "le", &r.le),
        "lestar": matrix_to_value(u, "lestar", &r.lestar),
    })
}

pub fn serialize_report(u: &Universe, r: &EmbeddingReport) -> String {
    to_document(&report_to_value(u, r))
}

/// Rebuilds the universe named in the header and decodes the matrices
/// against it.
pub fn report_from_value(v: &Value) -> Result<(Universe, EmbeddingReport), CodecError> {
    let m = object(v, "report")?;
    let header = object(field(m, "header", "report")?, "header")?;
    let order = validate_order(&spec_from_value(field(header, "order", "header")?)?)?;
    let depth = number(field(header, "depth", "header")?, "header.depth")?;
    let index_budget = number(
        field(header, "index_budget", "header")?,
        "header.index_budget",
    )?;
    let support_budget = number(
        field(header, "support_budget", "header")?,
        "header.support_budget",
    )?;
    let s = object(field(header, "supports", "header")?, "header.supports")?;
    let count = number(
        field(s, "count", "header.supports")?,
        "header.supports.count",
    )?;
    let supports = match string(field(s, "mode", "header.supports")?, "header.supports.mode")? {
        "exhaustive" => SupportsUsed::Exhaustive { count },
        "sampled" => SupportsUsed::Sampled {
            count,
            seed: field(s, "seed", "header.supports")?
                .as_u64()
                .ok_or_else(|| schema("header.supports.seed", "expected an integer"))?,
        },
        other => {
            return Err(schema(
                "header.supports.mode",
                format!("unknown mode `{other}`"),
            ))
        }
    };
    let u = Universe::build(&order, depth, index_budget, DEFAULT_SIZE_CAP)?;
    let report = EmbeddingReport {
        le: matrix_from_value(&u, "le", field(m, "le", "report")?)?,
        lestar: matrix_from_value(&u, "lestar", field(m, "lestar", "report")?)?,
        order,
        depth,
        index_budget,
        support_budget,
        supports,
    };
    Ok((u, report))
}

pub fn parse_report(text: &str) -> Result<(Universe, EmbeddingReport), CodecError> {
    report_from_value(&parse_document(text)?)
}
