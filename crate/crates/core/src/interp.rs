//! Script interpreter behind the `tvl` binary.
//!
//! Each input file gets its own environment. Commands run in order and write
//! report records to `out`; diagnostics go to `err`.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::PathBuf;

use serde::Serialize;

use crate::audit::{fuzz, summarize, AuditConfig, AuditLine, Instance, Session, REGISTRY};
use crate::dsl::{self, AuditTarget, Command, Statement};
use crate::error::{Error, Result};
use crate::exact::{Rat, RatVec};
use crate::multi::{complete_to_maximal, MultiTruncation};
use crate::report::Status;
use crate::repr::f_hat;
use crate::spectrum::{spectrum_v, topology_report, PrimeIdeal};
use crate::truncation::{classify, Flag, WeightTruncation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub seed: u64,
    /// Case count for the `fuzz` entry point.
    pub cases: usize,
    pub n_max: u64,
    pub format: Format,
    /// Only FAIL lines are written.
    pub quiet: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { inputs: Vec::new(), seed: 0, cases: 100, n_max: 64, format: Format::Tsv, quiet: false }
    }
}

impl RunConfig {
    fn audit_config(&self) -> AuditConfig {
        AuditConfig { seed: self.seed, n_max: self.n_max, ..AuditConfig::default() }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// One output record. In TSV mode each variant is one line; in JSON mode one
/// object per line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Record {
    Audit(AuditLine),
    Tagged(Tagged),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Tagged {
    Trunc { name: String, support: Vec<usize>, weights: Vec<String> },
    Family { name: String, members: Vec<String> },
    Classify { trunc: String, property: String, holds: bool, witness: Option<String> },
    Point { point: String },
    Block { member: String, points: Vec<String> },
    Base { generator: String, points: Vec<String> },
    Flag { flag: String, value: String },
    Value { vector: String, family: String, point: String, value: String },
}

impl Record {
    fn tsv(&self) -> String {
        match self {
            Record::Audit(l) => l.tsv(),
            Record::Tagged(t) => match t {
                Tagged::Trunc { name, support, weights } => {
                    let s: Vec<String> = support.iter().map(usize::to_string).collect();
                    format!("trunc {name} support={} weights={}", s.join(","), weights.join(","))
                }
                Tagged::Family { name, members } => format!("family {name} = {}", members.join(", ")),
                Tagged::Classify { trunc, property, holds, witness } => {
                    format!("{trunc}\t{property}\t{holds}\t{}", witness.as_deref().unwrap_or("-"))
                }
                Tagged::Point { point } => format!("point\t{point}"),
                Tagged::Block { member, points } => format!("block\t{member}\t{{{}}}", points.join(",")),
                Tagged::Base { generator, points } => format!("base\t{generator}\t{{{}}}", points.join(",")),
                Tagged::Flag { flag, value } => format!("flag\t{flag}\t{value}"),
                Tagged::Value { point, value, .. } => format!("{point}\t{value}"),
            },
        }
    }

    fn is_fail(&self) -> bool {
        matches!(self, Record::Audit(l) if l.status == Status::Fail)
    }
}

struct Emitter<'w> {
    out: &'w mut dyn Write,
    format: Format,
    quiet: bool,
    failed: bool,
}

impl Emitter<'_> {
    fn emit(&mut self, r: Record) -> io::Result<()> {
        let fail = r.is_fail();
        self.failed |= fail;
        if self.quiet && !fail {
            return Ok(());
        }
        match self.format {
            Format::Tsv => writeln!(self.out, "{}", r.tsv()),
            Format::Json => {
                let line = serde_json::to_string(&r).map_err(io::Error::other)?;
                writeln!(self.out, "{line}")
            }
        }
    }

    fn tagged(&mut self, t: Tagged) -> io::Result<()> {
        self.emit(Record::Tagged(t))
    }
}

#[derive(Debug, thiserror::Error)]
enum RunError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Dsl(#[from] dsl::DslError),
    #[error("line {line}: {source}")]
    Runtime { line: usize, source: Error },
}

#[derive(Default)]
struct Env {
    dim: usize,
    vectors: Vec<(String, RatVec)>,
    truncs: BTreeMap<String, WeightTruncation>,
    families: BTreeMap<String, MultiTruncation>,
    /// The family audits run against.
    focus: Option<MultiTruncation>,
}

impl Env {
    /// A declared family, or a declared truncation as a one-member family.
    fn family(&self, name: &str) -> Result<MultiTruncation> {
        if let Some(f) = self.families.get(name) {
            return Ok(f.clone());
        }
        self.truncs
            .get(name)
            .map(|t| MultiTruncation::single(name, t.clone()))
            .ok_or_else(|| Error::Unsupported(format!("unknown family {name}")))
    }

    fn vector(&self, name: &str) -> Result<&RatVec> {
        self.vectors
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::Unsupported(format!("unknown vector {name}")))
    }

    fn instance(&self) -> Result<Instance> {
        let family = self.focus.clone().ok_or_else(|| Error::Unsupported("no instance declared".into()))?;
        Ok(Instance { family, vectors: self.vectors.clone() })
    }
}

fn witness_string(v: &Option<RatVec>) -> Option<String> {
    v.as_ref().map(RatVec::to_string)
}

fn point_names(points: impl IntoIterator<Item = PrimeIdeal>) -> Vec<String> {
    points.into_iter().map(|p| p.to_string()).collect()
}

fn exec(cmd: &Command, env: &mut Env, cfg: &RunConfig, em: &mut Emitter) -> std::result::Result<(), RunError> {
    let rt = |e: Error| RunError::Runtime { line: 0, source: e };
    match cmd {
        Command::Complete(name) => {
            let family = env.family(name).map_err(rt)?;
            let done = complete_to_maximal(&family, name);
            for (label, t) in done.iter().skip(family.len()) {
                env.truncs.insert(label.to_string(), t.clone());
                em.tagged(Tagged::Trunc {
                    name: label.to_string(),
                    support: t.support().iter().map(|i| i + 1).collect(),
                    weights: t.weights().iter().map(Rat::to_string).collect(),
                })?;
            }
            em.tagged(Tagged::Family { name: name.clone(), members: done.labels().to_vec() })?;
            env.families.insert(name.clone(), done.clone());
            env.focus = Some(done);
        }
        Command::Classify(name) => {
            let t = &env.truncs[name];
            let c = classify(t).map_err(rt)?;
            let rows: [(&str, &Flag); 3] =
                [("weak", &c.weak), ("strong-literal", &c.strong_literal), ("strong-bounded", &c.strong_bounded)];
            for (property, flag) in rows {
                em.tagged(Tagged::Classify {
                    trunc: name.clone(),
                    property: property.into(),
                    holds: flag.holds,
                    witness: witness_string(&flag.witness),
                })?;
            }
        }
        Command::Spectrum(name) => {
            let family = env.family(name).map_err(rt)?;
            let space = spectrum_v(&family).map_err(rt)?;
            for p in space.points() {
                em.tagged(Tagged::Point { point: p.to_string() })?;
            }
            for b in space.blocks() {
                em.tagged(Tagged::Block { member: b.label.clone(), points: point_names(space.set_of(b.mask)) })?;
            }
            for s in space.base() {
                em.tagged(Tagged::Base { generator: s.label.clone(), points: point_names(space.set_of(s.mask)) })?;
            }
            let topo = topology_report(&space, &family).map_err(rt)?;
            let flags = [
                ("hausdorff", topo.hausdorff.to_string()),
                ("locally-compact", topo.locally_compact.to_string()),
                ("dense-in-P", topo.dense_in_p.to_string()),
                ("unseparated", topo.unseparated.map_or("-".into(), |(p, q)| format!("{p},{q}"))),
            ];
            for (flag, value) in flags {
                em.tagged(Tagged::Flag { flag: flag.into(), value })?;
            }
        }
        Command::Represent { vector, family } => {
            let f = env.vector(vector).map_err(rt)?.clone();
            let fam = env.family(family).map_err(rt)?;
            for i in fam.covered() {
                let p = PrimeIdeal::new(env.dim, i);
                let value = f_hat(&f, &p, &fam).map_err(rt)?;
                em.tagged(Tagged::Value {
                    vector: vector.clone(),
                    family: family.clone(),
                    point: p.to_string(),
                    value: value.to_string(),
                })?;
            }
        }
        Command::Audit(target) => {
            let inst = env.instance().map_err(rt)?;
            let session = Session::new(&inst, &cfg.audit_config());
            let ids: Vec<&str> = match target {
                AuditTarget::All => REGISTRY.to_vec(),
                AuditTarget::One(id) => vec![id.as_str()],
            };
            for line in session.lines(&ids) {
                em.emit(Record::Audit(line))?;
            }
        }
        Command::Fuzz { seed, cases } => {
            fuzz_lines(*seed, *cases, cfg, em)?;
        }
    }
    Ok(())
}

fn fuzz_lines(seed: u64, cases: usize, cfg: &RunConfig, em: &mut Emitter) -> io::Result<()> {
    let results = fuzz(seed, cases, &REGISTRY, &cfg.audit_config());
    for line in summarize(&results, &REGISTRY) {
        em.emit(Record::Audit(line))?;
    }
    Ok(())
}

fn declare(stmt: &Statement, env: &mut Env) -> Result<()> {
    match stmt {
        Statement::Lattice { dim } => env.dim = *dim,
        Statement::Vec { name, entries } => env.vectors.push((name.clone(), RatVec::new(entries.clone()))),
        Statement::Trunc { name, support, weights } => {
            let support = support.iter().map(|i| i - 1).collect();
            let t = WeightTruncation::new(env.dim, support, weights.clone())?;
            env.focus = Some(MultiTruncation::single(name.as_str(), t.clone()));
            env.truncs.insert(name.clone(), t);
        }
        Statement::Family { name, members } => {
            let ms = members.iter().map(|m| (m.clone(), env.truncs[m].clone())).collect();
            let family = MultiTruncation::new(ms)?;
            env.focus = Some(family.clone());
            env.families.insert(name.clone(), family);
        }
        Statement::Command(_) => unreachable!("commands are executed, not declared"),
    }
    Ok(())
}

fn run_text(text: &str, cfg: &RunConfig, em: &mut Emitter) -> std::result::Result<(), RunError> {
    let script = dsl::load(text)?;
    let mut env = Env::default();
    for (stmt, &line) in script.statements.iter().zip(&script.lines) {
        let at = |e: Error| RunError::Runtime { line, source: e };
        match stmt {
            Statement::Command(c) => match exec(c, &mut env, cfg, em) {
                Err(RunError::Runtime { source, .. }) => return Err(at(source)),
                r => r?,
            },
            decl => declare(decl, &mut env).map_err(at)?,
        }
    }
    Ok(())
}

/// Runs one script held in memory. `origin` prefixes diagnostics.
pub fn run_script(text: &str, origin: &str, cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut em = Emitter { out, format: cfg.format, quiet: cfg.quiet, failed: false };
    match run_text(text, cfg, &mut em) {
        Ok(()) if em.failed => EXIT_FAIL,
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "{origin}: {e}");
            EXIT_ERROR
        }
    }
}

/// Runs every input in order. The exit code is the worst over all inputs.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut code = EXIT_OK;
    for path in &cfg.inputs {
        let origin = path.display().to_string();
        let c = match std::fs::read_to_string(path) {
            Ok(text) => run_script(&text, &origin, cfg, out, err),
            Err(e) => {
                let _ = writeln!(err, "{origin}: {e}");
                EXIT_ERROR
            }
        };
        code = code.max(c);
    }
    code
}

/// The registry over `cfg.cases` random instances from `cfg.seed`.
pub fn run_fuzz(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut em = Emitter { out, format: cfg.format, quiet: cfg.quiet, failed: false };
    match fuzz_lines(cfg.seed, cfg.cases, cfg, &mut em) {
        Ok(()) if em.failed => EXIT_FAIL,
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "fuzz: {e}");
            EXIT_ERROR
        }
    }
}

/// Canonical form of a script, after validation.
pub fn format_script(text: &str) -> std::result::Result<String, dsl::DslError> {
    dsl::load(text).map(|s| dsl::serialize(&s))
}
