//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Every comparison is exact; the numeric
//! parameters below are the pinned tolerances.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use cardlab::cli::codec::{
    parse_certificate, parse_report, parse_spec, serialize_certificate, serialize_report,
    serialize_spec,
};
use cardlab::cli::{cmd_report, run, OutputFormat, RunConfig};
use cardlab::closure::{closure_shape_le, closure_shape_lestar};
use cardlab::embedding::{finite_le, finite_lestar, Refuter};
use cardlab::group::{embed_canonically, equivariant_extension, index_transposition};
use cardlab::universe::{AtomKind, DEFAULT_SIZE_CAP};
use cardlab::{
    build_universe, closure, embedding_report, fixing_generators, is_member, mover,
    nonzero_index_part, AtomId, AtomSet, DoublyOrderedSet, Permutation, ReportConfig, Universe,
};

use common::{
    brute_force_count, member_oracle, naive_closure, structures_of_size, structures_up_to,
};

/// Labeled structures on at most three elements: 1 + 1 + 8 + 167.
const STRUCTURES_UP_TO_3: usize = 177;
const DEPTH: usize = 2;
const INDEX_BUDGET: usize = 3;
const SUPPORT_BUDGET: usize = 1;
const CLOSURE_SAMPLES: usize = 200;
const CLOSURE_SAMPLE_MAX: usize = 3;
const WORDS: usize = 500;
const WORD_MAX_LEN: usize = 6;
const ORACLE_MAX_SIZE: usize = 4;
const ROUND_TRIPS: usize = 100;
const SEED: u64 = 0x5eed;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn t23(d: &DoublyOrderedSet) -> Universe {
    build_universe(d, DEPTH, INDEX_BUDGET).expect("T(2,3) fits")
}

/// The empty set followed by every singleton.
fn small_supports(u: &Universe) -> Vec<Vec<AtomId>> {
    std::iter::once(Vec::new())
        .chain(u.ids().map(|a| vec![a]))
        .collect()
}

fn as_set(s: &AtomSet) -> BTreeSet<AtomId> {
    s.iter().collect()
}

// 1 ---------------------------------------------------------------------------

fn report_equivalence(index_budget: usize) -> Outcome {
    let structures = structures_up_to(3);
    let brute: usize = (0..=3).map(brute_force_count).sum();
    if structures.len() != STRUCTURES_UP_TO_3 || brute != STRUCTURES_UP_TO_3 {
        return outcome(
            false,
            format!(
                "enumerated {} structures, brute force {brute}, frozen {STRUCTURES_UP_TO_3}",
                structures.len()
            ),
        );
    }
    let dir = tempfile::tempdir().expect("temp dir");
    let results: Vec<(i32, String)> = structures
        .par_iter()
        .enumerate()
        .map(|(i, d)| {
            let path = dir.path().join(format!("s{i}.json"));
            std::fs::write(&path, serialize_spec(&d.to_spec())).expect("write spec");
            let config = RunConfig {
                input_path: Some(path),
                depth: DEPTH,
                index_budget,
                support_budget: SUPPORT_BUDGET,
                output_format: OutputFormat::Text,
                size_cap: DEFAULT_SIZE_CAP,
                seed: SEED,
                complete: false,
            };
            match cmd_report(&config) {
                Ok((code, _)) => (code, String::new()),
                Err(e) => (e.exit_code(), e.to_string()),
            }
        })
        .collect();
    let ok = results.iter().filter(|r| r.0 == 0).count();
    let mut reasons: Vec<String> = results
        .iter()
        .filter(|r| r.0 != 0)
        .map(|(code, msg)| format!("exit {code}: {msg}"))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    reasons.truncate(3);
    let mut detail = format!("{ok}/{} structures exit 0", structures.len());
    if !reasons.is_empty() {
        detail.push_str(&format!("; {}", reasons.join("; ")));
    }
    outcome(ok == structures.len(), detail)
}

// 2 ---------------------------------------------------------------------------

fn closure_laws() -> Outcome {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for d in structures_of_size(2) {
        let u = t23(&d);
        let supports = small_supports(&u);
        let singles: Vec<AtomSet> = supports
            .iter()
            .map(|b| closure(&u, &u.set_of(b.iter().copied())).members)
            .collect();
        for (i, b) in supports.iter().enumerate() {
            let cl_b = &singles[i];
            if as_set(cl_b) != naive_closure(&u, b) || closure(&u, cl_b).members != *cl_b {
                failures.push(format!("{b:?}"));
            }
            for (j, c) in supports.iter().enumerate().skip(i) {
                let bc: Vec<AtomId> = b.iter().chain(c).copied().collect();
                let cl_bc = closure(&u, &u.set_of(bc.iter().copied())).members;
                let ok = cl_bc == singles[i].union(&singles[j])
                    && singles[i].is_subset(&cl_bc)
                    && singles[j].is_subset(&cl_bc)
                    && closure(&u, &cl_bc).members == cl_bc
                    && as_set(&cl_bc) == naive_closure(&u, &bc);
                if !ok {
                    failures.push(format!("{bc:?}"));
                }
                checked += 1;
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{checked} pairs over 8 structures, {} failures",
            failures.len()
        ),
    )
}

// 3 ---------------------------------------------------------------------------

fn nonzero_index_bound() -> Outcome {
    let universes: Vec<Universe> = structures_of_size(2).iter().map(t23).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = 0;
    for _ in 0..CLOSURE_SAMPLES {
        let u = &universes[rng.random_range(0..universes.len())];
        let size = rng.random_range(0..=CLOSURE_SAMPLE_MAX);
        let b: Vec<AtomId> = sample(&mut rng, u.len(), size)
            .into_iter()
            .map(AtomId::from_index)
            .collect();
        let cl = closure(u, &u.set_of(b.iter().copied()));
        let nonzero: BTreeSet<AtomId> = naive_closure(u, &b)
            .into_iter()
            .filter(|&a| u.atom(a).index() != 0)
            .collect();
        let bound: usize = b.iter().map(|&a| u.atom(a).level() + 1).sum();
        let ok = cl.x_part.iter().all(|a| u.atom(a).index() == 0)
            && as_set(&nonzero_index_part(u, &u.set_of(b.iter().copied()))) == nonzero
            && nonzero.len() <= bound;
        failures += usize::from(!ok);
    }
    outcome(
        failures == 0,
        format!("{CLOSURE_SAMPLES} seeded samples with |B| <= {CLOSURE_SAMPLE_MAX}, {failures} failures"),
    )
}

// 4 ---------------------------------------------------------------------------

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, k - 1);
            out.push(p);
        }
    }
    out
}

/// Every member of the level-0 group: independent permutations of the `K`
/// atoms of each element.
fn level0_group(u: &Universe) -> Vec<Vec<AtomId>> {
    let k = u.index_budget();
    let n = u.order().len();
    let perms = permutations(k);
    let mut out = vec![Vec::new()];
    for element in 0..n {
        let mut next = Vec::new();
        for prefix in &out {
            for p in &perms {
                let mut g: Vec<AtomId> = prefix.clone();
                g.extend(
                    p.iter()
                        .map(|&i| u.find(0, element, None, i).expect("level-0 atom")),
                );
                next.push(g);
            }
        }
        out = next;
    }
    // Level-0 ids are ordered by (element, index), so `g` is already a map
    // on the stratum.
    out
}

fn mover_and_extension() -> Outcome {
    let results: Vec<(usize, usize, usize)> = structures_up_to(3)
        .par_iter()
        .map(|d| {
            let u = t23(d);
            let group0 = level0_group(&u);
            let (mut movers, mut extensions, mut failures) = (0, 0, 0);
            for b in small_supports(&u) {
                let bset = u.set_of(b.iter().copied());
                let cl = closure(&u, &bset).members;
                for c in u.ids().filter(|&c| !cl.contains(c)) {
                    let ok = match mover(&u, &bset, c) {
                        Ok(g) => {
                            is_member(&u, g.as_slice())
                                && member_oracle(&u, g.as_slice())
                                && g.fixes_all(&cl)
                                && g.moves(c)
                        }
                        Err(_) => false,
                    };
                    movers += 1;
                    failures += usize::from(!ok);
                }
                for g0 in &group0 {
                    if cl
                        .iter()
                        .filter(|a| u.atom(*a).level() == 0)
                        .any(|a| g0[a.index()] != a)
                    {
                        continue;
                    }
                    let ok = match equivariant_extension(&u, g0, 0, Some(&cl)) {
                        Ok(g) => g.fixes_all(&cl) && member_oracle(&u, g.as_slice()),
                        Err(_) => false,
                    };
                    extensions += 1;
                    failures += usize::from(!ok);
                }
            }
            (movers, extensions, failures)
        })
        .collect();
    let (m, e, f) = results
        .iter()
        .fold((0, 0, 0), |acc, r| (acc.0 + r.0, acc.1 + r.1, acc.2 + r.2));
    outcome(
        f == 0,
        format!("{m} movers and {e} extensions over 177 structures, {f} failures"),
    )
}

// 5 ---------------------------------------------------------------------------

fn fixed_points_equal_closure() -> Outcome {
    let results: Vec<(usize, usize)> = structures_up_to(3)
        .par_iter()
        .map(|d| {
            let u = t23(d);
            let mut failures = 0;
            let supports = small_supports(&u);
            for b in &supports {
                let gens = fixing_generators(&u, &u.set_of(b.iter().copied()));
                let fixed: BTreeSet<AtomId> = u
                    .ids()
                    .filter(|&a| gens.iter().all(|g| !g.moves(a)))
                    .collect();
                failures += usize::from(fixed != naive_closure(&u, b));
            }
            (supports.len(), failures)
        })
        .collect();
    let checked: usize = results.iter().map(|r| r.0).sum();
    let failures: usize = results.iter().map(|r| r.1).sum();
    outcome(
        failures == 0,
        format!("{checked} supports over 177 structures, {failures} failures"),
    )
}

// 6 ---------------------------------------------------------------------------

/// Every single-atom closure the refutations inspect, on every structure of
/// criteria 1 to 5.
fn shape_checks() -> Outcome {
    let results: Vec<(usize, usize)> = structures_up_to(3)
        .par_iter()
        .map(|d| {
            let u = t23(d);
            let mut failures = 0;
            for (id, atom) in u.atoms() {
                failures += usize::from(closure_shape_lestar(&u, id, atom.element()) != Ok(true));
                if atom.level() == 0 {
                    failures += usize::from(closure_shape_le(&u, id) != Ok(true));
                }
            }
            (u.len(), failures)
        })
        .collect();
    let atoms: usize = results.iter().map(|r| r.0).sum();
    let failures: usize = results.iter().map(|r| r.1).sum();
    outcome(
        failures == 0,
        format!("{atoms} atoms over 177 structures, {failures} shape violations"),
    )
}

// 7 ---------------------------------------------------------------------------

fn random_word(u: &Universe, rng: &mut ChaCha8Rng) -> Permutation {
    let indexed: Vec<AtomId> = u
        .atoms()
        .filter(|(_, a)| a.kind() != AtomKind::Injective)
        .map(|(id, _)| id)
        .collect();
    let mut g = Permutation::identity(u);
    for _ in 0..rng.random_range(1..=WORD_MAX_LEN) {
        let atom = u.atom(indexed[rng.random_range(0..indexed.len())]);
        let k = atom.index();
        let l = (k + rng.random_range(1..u.index_budget())) % u.index_budget();
        let t = index_transposition(u, atom.family(), k, l).expect("valid transposition");
        g = t.compose(&g).expect("same universe");
    }
    g
}

fn group_laws_and_truncation() -> Outcome {
    let structures: Vec<DoublyOrderedSet> = structures_up_to(3)
        .into_iter()
        .filter(|d| !d.is_empty())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = 0;
    for _ in 0..WORDS {
        let d = &structures[rng.random_range(0..structures.len())];
        let u = t23(d);
        let g = random_word(&u, &mut rng);
        let mut ok = is_member(&u, g.as_slice()) && member_oracle(&u, g.as_slice());
        for (depth, k) in [(DEPTH + 1, INDEX_BUDGET), (DEPTH, INDEX_BUDGET + 1)] {
            let big = build_universe(d, depth, k).expect("fits");
            let t = u.translate_into(&big).expect("same order");
            ok &= match embed_canonically(&g, &u, &big) {
                Ok(h) => {
                    is_member(&big, h.as_slice())
                        && member_oracle(&big, h.as_slice())
                        && u.ids()
                            .all(|x| h.apply(t[x.index()]) == t[g.apply(x).index()])
                }
                Err(_) => false,
            };
        }
        failures += usize::from(!ok);
    }
    outcome(
        failures == 0,
        format!("{WORDS} seeded words embedded into T(3,3) and T(2,4), {failures} failures"),
    )
}

// 8 ---------------------------------------------------------------------------

/// Whether some map `0..x → 0..y` is injective, by trying all `y^x` maps.
fn injection_exists(x: usize, y: usize) -> bool {
    let total = y.pow(x as u32);
    (0..total).any(|mut code| {
        let mut seen = vec![false; y];
        (0..x).all(|_| {
            let v = code % y;
            code /= y;
            !std::mem::replace(&mut seen[v], true)
        })
    })
}

/// Whether some partial map `0..y ⇀ 0..x` hits every point, by trying all
/// `(x+1)^y` partial maps.
fn partial_surjection_exists(x: usize, y: usize) -> bool {
    let total = (x + 1).pow(y as u32);
    (0..total).any(|mut code| {
        let mut hit = vec![false; x];
        for _ in 0..y {
            let v = code % (x + 1);
            code /= x + 1;
            if v < x {
                hit[v] = true;
            }
        }
        hit.iter().all(|&h| h)
    })
}

fn oracle_agreement() -> Outcome {
    let mut disagreements = Vec::new();
    for x in 0..=ORACLE_MAX_SIZE {
        for y in 0..=ORACLE_MAX_SIZE {
            let xs: BTreeSet<usize> = (0..x).collect();
            let ys: BTreeSet<usize> = (100..100 + y).collect();
            if finite_le(&xs, &ys) != injection_exists(x, y)
                || finite_lestar(&xs, &ys) != partial_surjection_exists(x, y)
            {
                disagreements.push((x, y));
            }
        }
    }
    let pairs = (ORACLE_MAX_SIZE + 1).pow(2);
    outcome(
        disagreements.is_empty(),
        format!("{pairs} size pairs, disagreements {disagreements:?}"),
    )
}

// 9 ---------------------------------------------------------------------------

fn round_trips() -> Outcome {
    let structures = structures_up_to(3);
    let two = structures_of_size(2);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    for i in 0..ROUND_TRIPS {
        let ok = match i % 3 {
            0 => {
                let spec = structures[rng.random_range(0..structures.len())].to_spec();
                let s = serialize_spec(&spec);
                parse_spec(&s).is_ok_and(|back| back == spec && serialize_spec(&back) == s)
            }
            1 => {
                let d = &structures[rng.random_range(1 + 1 + 8..structures.len())];
                let u = build_universe(d, DEPTH, INDEX_BUDGET + SUPPORT_BUDGET).expect("fits");
                let n = d.len();
                let cells: Vec<(bool, usize, usize)> = (0..n)
                    .flat_map(|p| (0..n).map(move |q| (p, q)))
                    .flat_map(|(p, q)| {
                        [(true, p, q), (false, p, q)]
                            .into_iter()
                            .filter(|&(le, p, q)| if le { !d.le(p, q) } else { !d.lestar(p, q) })
                    })
                    .collect();
                if cells.is_empty() {
                    true
                } else {
                    let (le, p, q) = cells[rng.random_range(0..cells.len())];
                    let size = rng.random_range(0..=SUPPORT_BUDGET);
                    let support: Vec<AtomId> = sample(&mut rng, u.len(), size)
                        .into_iter()
                        .map(AtomId::from_index)
                        .collect();
                    let refuter = Refuter::uncached(&u);
                    let cert = if le {
                        refuter.refute_injection(p, q, &support)
                    } else {
                        refuter.refute_surjection(p, q, &support)
                    }
                    .expect("refutable with four indices");
                    let s = serialize_certificate(&u, &cert);
                    parse_certificate(&u, &s)
                        .is_ok_and(|back| back == cert && serialize_certificate(&u, &back) == s)
                }
            }
            _ => {
                let d = &two[rng.random_range(0..two.len())];
                let u = build_universe(d, 1, INDEX_BUDGET + SUPPORT_BUDGET).expect("fits");
                let report = embedding_report(&u, &ReportConfig::default()).expect("report");
                let s = serialize_report(&u, &report);
                parse_report(&s)
                    .is_ok_and(|(u2, back)| back == report && serialize_report(&u2, &back) == s)
            }
        };
        if !ok {
            failures.push(i);
        }
    }

    // Identical configurations give identical bytes.
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("spec.json");
    let d = &structures[structures.len() - 1];
    std::fs::write(&path, serialize_spec(&d.to_spec())).expect("write spec");
    let args = |p: &Path| {
        vec![
            "cardlab".to_string(),
            "report".into(),
            p.display().to_string(),
            "--format".into(),
            "json".into(),
            "--index-budget".into(),
            "4".into(),
        ]
    };
    let first = run(args(&path));
    let second = run(args(&path));
    let deterministic = first.code == 0 && first == second;

    outcome(
        failures.is_empty() && deterministic,
        format!(
            "{ROUND_TRIPS} seeded round trips, failures at {failures:?}; repeated report runs identical: {deterministic}"
        ),
    )
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "1",
            "report equals the input on T(2,3), support budget 1, all structures on <= 3 elements",
            || report_equivalence(INDEX_BUDGET),
        ),
        ("1+", "(supplementary) the same with index budget 4", || {
            report_equivalence(INDEX_BUDGET + 1)
        }),
        (
            "2",
            "closure idempotent, monotone, additive, equal to naive saturation",
            closure_laws,
        ),
        (
            "3",
            "X-part has index 0; non-zero-index part bounded by sum of levels + 1",
            nonzero_index_bound,
        ),
        (
            "4",
            "movers fix the closure and move the atom; extensions fix the closure",
            mover_and_extension,
        ),
        (
            "5",
            "common fixed points of the fixing generators equal the closure",
            fixed_points_equal_closure,
        ),
        ("6", "closure shape checks never fail", shape_checks),
        (
            "7",
            "random words are members and embed into larger truncations",
            group_laws_and_truncation,
        ),
        (
            "8",
            "finite cardinal oracles agree with exhaustive map search",
            oracle_agreement,
        ),
        (
            "9",
            "specs, certificates and reports round-trip byte for byte; runs are deterministic",
            round_trips,
        ),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:<2} {status}  {name}: {} ({:.1}s)",
            result.detail,
            start.elapsed().as_secs_f64()
        );
        // The supplementary line is informational.
        if !result.pass && id != "1+" {
            failed += 1;
        }
    }
    println!("{failed} criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
