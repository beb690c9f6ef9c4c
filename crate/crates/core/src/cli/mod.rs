//! Command-line front end.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! with the captured output; the binary only prints it. Exit codes: 0
//! success, 1 bad input or arguments, 2 an internal invariant failed.

pub mod codec;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::closure::{closure, ClosureError};
use crate::embedding::{
    embedding_report, replay_certificate, EmbeddingError, EmbeddingReport, Refuter, ReportConfig,
    SupportSampling, Verdict,
};
use crate::group::{check_member, fixing_generators, mover, orbits, GroupError};
use crate::order::{
    complete_relations, enumerate_small_doubly_ordered, validate_order, DoublyOrderedSet,
    OrderError, ENUMERATION_LIMIT,
};
use crate::path::{atom_path, parse_atom_path, PathError};
use crate::universe::{AtomId, Universe, UniverseError, DEFAULT_SIZE_CAP};

pub use codec::CodecError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "cardlab",
    version,
    about = "Injective and surjective cardinal orders in finite permutation models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Maximum atom level N.
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,
    /// Number of indices K per family.
    #[arg(long, global = true, default_value_t = 4)]
    index_budget: usize,
    /// Largest support size certified for negative report cells.
    #[arg(long, global = true, default_value_t = 1)]
    support_budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Refuse to build universes with more atoms than this.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: usize,
    /// Close both relations reflexively and transitively and add `le` to
    /// `lestar` before validating.
    #[arg(long, global = true)]
    complete: bool,
    /// Seed for support sampling above the exhaustive limit.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the order axioms and echo the normalized structure.
    Validate { input: PathBuf },
    /// Decide both cardinal orders between all sectors, with evidence.
    Report { input: PathBuf },
    /// Closure of a set of atoms.
    Closure {
        input: PathBuf,
        #[arg(required = true)]
        atoms: Vec<String>,
    },
    /// A group member fixing the closure of the support and moving ATOM.
    Move {
        input: PathBuf,
        atom: String,
        #[arg(long, num_args = 0..)]
        support: Vec<String>,
    },
    /// Orbits of the subgroup generated by transpositions fixing the support.
    Orbits {
        input: PathBuf,
        #[arg(long, num_args = 0..)]
        support: Vec<String>,
    },
    /// Refutation certificate for `P <= Q` or `P <=* Q`.
    Refute {
        input: PathBuf,
        #[arg(value_enum)]
        relation: RelationArg,
        p: String,
        q: String,
        #[arg(long, num_args = 0..)]
        support: Vec<String>,
    },
    /// All doubly ordered sets on `size` labeled elements.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RelationArg {
    Le,
    Lestar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub input_path: Option<PathBuf>,
    pub depth: usize,
    pub index_budget: usize,
    pub support_budget: usize,
    pub output_format: OutputFormat,
    pub size_cap: usize,
    pub seed: u64,
    pub complete: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.index_budget == 0 {
            return Err(CliError::Config("index budget must be at least 1"));
        }
        if self.size_cap == 0 {
            return Err(CliError::Config("size cap must be at least 1"));
        }
        Ok(())
    }

    fn input(&self) -> &Path {
        self.input_path
            .as_deref()
            .expect("commands with input set it")
    }

    pub fn load_order(&self) -> Result<DoublyOrderedSet, CliError> {
        let text = std::fs::read_to_string(self.input()).map_err(|e| CliError::Io {
            path: self.input().display().to_string(),
            message: e.to_string(),
        })?;
        let mut spec = codec::parse_spec(&text)?;
        if self.complete {
            spec = complete_relations(&spec);
        }
        Ok(validate_order(&spec)?)
    }

    pub fn universe(&self, order: &DoublyOrderedSet) -> Result<Universe, CliError> {
        Ok(Universe::build(
            order,
            self.depth,
            self.index_budget,
            self.size_cap,
        )?)
    }

    pub fn report_config(&self) -> ReportConfig {
        ReportConfig {
            support_budget: self.support_budget,
            sampling: SupportSampling {
                seed: self.seed,
                ..SupportSampling::default()
            },
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(&'static str),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error("invariant failed: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_)
            | CliError::Closure(ClosureError::ShapeViolation(_))
            | CliError::Embedding(EmbeddingError::Shape(ClosureError::ShapeViolation(_)))
            | CliError::Group(
                GroupError::NotAMember(_)
                | GroupError::NotClosed
                | GroupError::ExtensionMovesClosedSet(_),
            )
            | CliError::Embedding(EmbeddingError::Group(
                GroupError::NotAMember(_)
                | GroupError::NotClosed
                | GroupError::ExtensionMovesClosedSet(_),
            )) => 2,
            _ => 1,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let input_path = match &cli.command {
        Command::Validate { input }
        | Command::Report { input }
        | Command::Closure { input, .. }
        | Command::Move { input, .. }
        | Command::Orbits { input, .. }
        | Command::Refute { input, .. } => Some(input.clone()),
        Command::Enumerate { .. } => None,
    };
    let config = RunConfig {
        input_path,
        depth: cli.depth,
        index_budget: cli.index_budget,
        support_budget: cli.support_budget,
        output_format: cli.format,
        size_cap: cli.size_cap,
        seed: cli.seed,
        complete: cli.complete,
    };
    match config
        .validate()
        .and_then(|()| dispatch(&config, &cli.command))
    {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(config: &RunConfig, command: &Command) -> Result<(i32, String), CliError> {
    match command {
        Command::Validate { .. } => cmd_validate(config).map(|s| (0, s)),
        Command::Report { .. } => cmd_report(config),
        Command::Closure { atoms, .. } => cmd_closure(config, atoms).map(|s| (0, s)),
        Command::Move { atom, support, .. } => cmd_move(config, support, atom).map(|s| (0, s)),
        Command::Orbits { support, .. } => cmd_orbits(config, support),
        Command::Refute {
            relation,
            p,
            q,
            support,
            ..
        } => cmd_refute(config, *relation, p, q, support).map(|s| (0, s)),
        Command::Enumerate { size } => cmd_enumerate(config, *size).map(|s| (0, s)),
    }
}

fn atoms_arg(u: &Universe, paths: &[String]) -> Result<Vec<AtomId>, CliError> {
    paths
        .iter()
        .map(|p| parse_atom_path(u, p).map_err(CliError::from))
        .collect()
}

fn paths(u: &Universe, atoms: impl IntoIterator<Item = AtomId>) -> Vec<String> {
    atoms.into_iter().map(|a| atom_path(u, a)).collect()
}

pub fn cmd_validate(config: &RunConfig) -> Result<String, CliError> {
    let order = config.load_order()?;
    let spec = order.to_spec();
    Ok(match config.output_format {
        OutputFormat::Json => codec::serialize_spec(&spec),
        OutputFormat::Text => {
            let mut out = format!("valid: {} elements\n", order.len());
            for (name, set) in [("le", &spec.le), ("lestar", &spec.lestar)] {
                let pairs: Vec<String> = set
                    .iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| format!("{a}<{b}"))
                    .collect();
                let pairs = if pairs.is_empty() {
                    "-".to_string()
                } else {
                    pairs.join(" ")
                };
                let _ = writeln!(out, "{name}: {pairs}");
            }
            out
        }
    })
}

/// Exit code 2 when a matrix disagrees with the input order.
pub fn cmd_report(config: &RunConfig) -> Result<(i32, String), CliError> {
    let order = config.load_order()?;
    let u = config.universe(&order)?;
    let report = embedding_report(&u, &config.report_config())?;
    let code = if report.matches_input() { 0 } else { 2 };
    let out = match config.output_format {
        OutputFormat::Json => codec::serialize_report(&u, &report),
        OutputFormat::Text => report_text(&u, &report),
    };
    Ok((code, out))
}

fn report_text(u: &Universe, r: &EmbeddingReport) -> String {
    let order = &r.order;
    let mut out = format!(
        "T({}, {}) with {} atoms; {} supports of size <= {}\n",
        r.depth,
        r.index_budget,
        u.len(),
        r.supports.count(),
        r.support_budget
    );
    let width = order.elements().iter().map(String::len).max().unwrap_or(0);
    for (name, cells) in [("le", &r.le), ("lestar", &r.lestar)] {
        let _ = writeln!(out, "\n{name}");
        for (p, row) in cells.iter().enumerate() {
            let marks: Vec<&str> = row
                .iter()
                .map(|v| match v {
                    Verdict::Positive(_) => "+",
                    Verdict::Negative { .. } => "-",
                    Verdict::Failed { .. } => "!",
                })
                .collect();
            let _ = writeln!(out, "  {:width$}  {}", order.name(p), marks.join(" "));
        }
    }
    let mismatches = r.mismatches();
    if mismatches.is_empty() {
        out.push_str("\nmatrices match the input relations\n");
    } else {
        for (rel, p, q) in mismatches {
            let _ = writeln!(out, "mismatch: {rel}({}, {})", order.name(p), order.name(q));
        }
    }
    out
}

fn emit(config: &RunConfig, value: Value, text: impl FnOnce() -> String) -> String {
    match config.output_format {
        OutputFormat::Json => codec::to_document(&value),
        OutputFormat::Text => text(),
    }
}

pub fn cmd_closure(config: &RunConfig, atoms: &[String]) -> Result<String, CliError> {
    let order = config.load_order()?;
    let u = config.universe(&order)?;
    let base = atoms_arg(&u, atoms)?;
    let cl = closure(&u, &u.set_of(base.iter().copied()));
    let members = paths(&u, cl.members.iter());
    Ok(emit(
        config,
        json!({
            "atoms": paths(&u, base.iter().copied()),
            "members": members,
            "x_part": paths(&u, cl.x_part.iter()),
            "y_part": paths(&u, cl.y_part.iter()),
            "stages": cl.stages,
        }),
        || {
            let mut out = format!("{} members after {} stages\n", members.len(), cl.stages);
            for m in &members {
                let _ = writeln!(out, "  {m}");
            }
            out
        },
    ))
}

pub fn cmd_move(config: &RunConfig, support: &[String], atom: &str) -> Result<String, CliError> {
    let order = config.load_order()?;
    let u = config.universe(&order)?;
    let b = atoms_arg(&u, support)?;
    let c = parse_atom_path(&u, atom)?;
    let closed = closure(&u, &u.set_of(b.iter().copied())).members;
    let g = mover(&u, &u.set_of(b.iter().copied()), c)?;
    let member = check_member(&u, g.as_slice());
    let fixes = g.fixes_all(&closed);
    let moves = g.moves(c);
    if member.is_err() || !fixes || !moves {
        return Err(CliError::Invariant(format!(
            "mover audit failed: member={member:?} fixes_closure={fixes} moves_atom={moves}"
        )));
    }
    let cycles = codec::permutation_to_value(&u, &g);
    Ok(emit(
        config,
        json!({
            "atom": atom_path(&u, c),
            "support": paths(&u, b.iter().copied()),
            "cycles": cycles,
            "image": atom_path(&u, g.apply(c)),
            "audit": {"is_member": true, "fixes_closure": true, "moves_atom": true},
        }),
        || {
            let mut out = format!(
                "{} -> {}\n{} cycles, {} atoms moved\naudit: member, fixes closure, moves atom\n",
                atom_path(&u, c),
                atom_path(&u, g.apply(c)),
                g.cycles().len(),
                g.support().len()
            );
            for cycle in g.cycles() {
                let _ = writeln!(out, "  ({})", paths(&u, cycle).join(" "));
            }
            out
        },
    ))
}

/// Exit code 2 when the singleton orbits differ from the closure although
/// every family has two free indices. With fewer, a lone free index is fixed
/// by every generator and the difference is expected.
pub fn cmd_orbits(config: &RunConfig, support: &[String]) -> Result<(i32, String), CliError> {
    let order = config.load_order()?;
    let u = config.universe(&order)?;
    let atoms = atoms_arg(&u, support)?;
    let b = u.set_of(atoms.iter().copied());
    let parts = orbits(&u, &fixing_generators(&u, &b))?;
    let singletons = u.set_of(parts.iter().filter(|o| o.len() == 1).map(|o| o[0]));
    let closed = closure(&u, &b).members;
    let agrees = singletons == closed;
    // Closure atoms of one family lie on distinct ancestor chains.
    let guaranteed = u.index_budget() >= b.len() + 2;
    let out = emit(
        config,
        json!({
            "support": paths(&u, b.iter()),
            "orbits": parts.iter().map(|o| paths(&u, o.iter().copied())).collect::<Vec<_>>(),
            "singletons": paths(&u, singletons.iter()),
            "singletons_equal_closure": agrees,
            "equality_guaranteed": guaranteed,
        }),
        || {
            let mut out = format!(
                "{} orbits, {} singletons; singletons {} the closure\n",
                parts.len(),
                singletons.len(),
                if agrees { "equal" } else { "differ from" }
            );
            if !agrees && !guaranteed {
                let _ = writeln!(
                    out,
                    "index budget {} is below support size + 2; some families have a single free index",
                    u.index_budget()
                );
            }
            for o in parts.iter().filter(|o| o.len() > 1) {
                let _ = writeln!(out, "  {{{}}}", paths(&u, o.iter().copied()).join(", "));
            }
            out
        },
    );
    Ok((if agrees || !guaranteed { 0 } else { 2 }, out))
}

fn cmd_refute(
    config: &RunConfig,
    relation: RelationArg,
    p: &str,
    q: &str,
    support: &[String],
) -> Result<String, CliError> {
    let order = config.load_order()?;
    let u = config.universe(&order)?;
    let s = atoms_arg(&u, support)?;
    let (pi, qi) = (order.index_of(p)?, order.index_of(q)?);
    let refuter = Refuter::uncached(&u);
    let cert = match relation {
        RelationArg::Le => refuter.refute_injection(pi, qi, &s)?,
        RelationArg::Lestar => refuter.refute_surjection(pi, qi, &s)?,
    };
    replay_certificate(&u, &cert)
        .map_err(|e| CliError::Invariant(format!("certificate replay failed: {e}")))?;
    Ok(emit(config, codec::certificate_to_value(&u, &cert), || {
        let moves_image = cert
            .evidence
            .iter()
            .filter(|e| e.branch == crate::embedding::Branch::MovesImage)
            .count();
        format!(
            "fresh atom {}\n{} candidate images: {} permutations move the fresh atom, {} move the image\nreplay: ok\n",
            atom_path(&u, cert.fresh),
            cert.evidence.len(),
            cert.evidence.len() - moves_image,
            moves_image
        )
    }))
}

fn cmd_enumerate(config: &RunConfig, size: usize) -> Result<String, CliError> {
    if size > ENUMERATION_LIMIT {
        return Err(OrderError::BudgetExceeded(size).into());
    }
    let all: Vec<DoublyOrderedSet> = enumerate_small_doubly_ordered(size)?.collect();
    Ok(emit(
        config,
        json!({
            "size": size,
            "count": all.len(),
            "structures": all.iter().map(|d| codec::spec_to_value(&d.to_spec())).collect::<Vec<_>>(),
        }),
        || {
            format!(
                "{} doubly ordered sets on {size} labeled elements\n",
                all.len()
            )
        },
    ))
}
