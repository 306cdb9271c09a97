//! The audit registry, instances, and the seeded fuzz driver.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Rat, RatVec};
use crate::multi::{is_maximal, MultiTruncation};
use crate::report::{Report, Status};
use crate::repr::{
    audit_ball_rep, audit_strong, audit_theorem_main, check_almost_finite, check_continuity, check_hom_injective,
    check_lemma_ball, check_one_zero, check_trunc_identity, compact_level_set, eps_grid, f_hat_with, lambda_table,
    witness_n, witnesses, Lambda, StrongReading,
};
use crate::sample::Sampler;
use crate::spectrum::{
    all_primes, check_partition, format_points, lemma_value_check, spectrum_v, topology_report, PrimeIdeal,
};
use crate::truncation::{birkhoff_identities, check_axiom_a, check_axiom_b, Truncation, Verdict, WeightTruncation};

/// Every audit id, in report order.
pub const REGISTRY: [&str; 15] = [
    "birkhoff",
    "ball",
    "bh",
    "one-zero",
    "value",
    "partition",
    "hausdorff",
    "topology-iii",
    "sublattice",
    "last",
    "johnson-kist",
    "main",
    "ball-rep",
    "strong-literal",
    "strong-bounded",
];

/// The lemma-level audits, which hold unconditionally.
pub const LEMMAS: [&str; 10] =
    ["birkhoff", "ball", "bh", "one-zero", "value", "partition", "hausdorff", "topology-iii", "sublattice", "last"];

/// An instance to audit: a family, whose first member is the distinguished
/// truncation `t`, and some labelled vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub family: MultiTruncation,
    pub vectors: Vec<(String, RatVec)>,
}

impl Instance {
    pub fn t(&self) -> &WeightTruncation {
        &self.family.members()[0]
    }

    pub fn dim(&self) -> usize {
        self.family.dim()
    }

    pub fn summary(&self) -> String {
        let members: Vec<String> = self.family.iter().map(|(l, t)| format!("{l}: {}", t.label())).collect();
        format!("dim={} {}", self.dim(), members.join("; "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    pub seed: u64,
    /// Sampled vectors or pairs per sampled check.
    pub samples: usize,
    pub n_max: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { seed: 0, samples: 12, n_max: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditLine {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

impl AuditLine {
    pub fn from_report(id: &str, r: &Report) -> AuditLine {
        AuditLine { id: id.into(), status: r.status(), detail: r.detail() }
    }

    pub fn tsv(&self) -> String {
        format!("{}\t{}\t{}", self.id, self.status, self.detail)
    }
}

fn id_seed(seed: u64, id: &str) -> u64 {
    id.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn nonneg_probe_set(inst: &Instance, s: &mut Sampler, count: usize) -> Vec<RatVec> {
    let mut fs: Vec<RatVec> = inst.vectors.iter().map(|(_, f)| f.abs()).collect();
    fs.extend(inst.family.members().iter().map(WeightTruncation::weight_vector));
    fs.extend(s.nonneg_vecs(inst.dim(), count));
    fs
}

fn signed_probe_set(inst: &Instance, s: &mut Sampler, count: usize) -> Vec<RatVec> {
    let mut fs: Vec<RatVec> = inst.vectors.iter().map(|(_, f)| f.clone()).collect();
    fs.extend((0..count).map(|_| s.vec(inst.dim())));
    fs
}

fn pairs(fs: &[RatVec], s: &mut Sampler, count: usize) -> Vec<(RatVec, RatVec)> {
    let dim = fs[0].dim();
    let mut out: Vec<(RatVec, RatVec)> = fs.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    out.extend(fs.iter().map(|f| (f.clone(), f.clone())));
    out.extend(s.nonneg_pairs(dim, count));
    out
}

fn audit_birkhoff(inst: &Instance, cfg: &AuditConfig, s: &mut Sampler) -> Result<Report> {
    let mut r = Report::new();
    let fs = nonneg_probe_set(inst, s, cfg.samples);
    let ps = pairs(&fs, s, cfg.samples);
    for (label, t) in inst.family.iter() {
        let (a, ap) = check_axiom_a(t, &ps)?;
        for rep in [a, ap] {
            r.check(!rep.verdict.is_fail(), || format!("{label}: axiom {} fails", rep.axiom));
        }
        for f in &fs {
            let b = check_axiom_b(t, f, cfg.n_max)?;
            r.check(b.verdict == Verdict::Pass, || format!("{label}: axiom (b) at ({f})"));
        }
        for (f, g) in &ps {
            let bi = birkhoff_identities(t, f, g)?;
            r.check(bi.all(), || format!("{label}: identities fail at f = ({f}), g = ({g}): {bi:?}"));
            let fs_ = t.apply(f)?;
            r.check(t.apply(&fs_)? == fs_, || format!("{label}: not idempotent at ({f})"));
            if f.le(g)? {
                r.check(fs_.le(&t.apply(g)?)?, || format!("{label}: not monotone at ({f}) <= ({g})"));
            }
        }
    }
    Ok(r)
}

fn audit_ball(inst: &Instance, cfg: &AuditConfig, s: &mut Sampler) -> Result<Report> {
    let mut r = Report::new();
    let fs = nonneg_probe_set(inst, s, cfg.samples);
    let ps = pairs(&fs, s, cfg.samples);
    for (label, t) in inst.family.iter() {
        r.absorb_scoped(label, check_lemma_ball(t, &ps, cfg.n_max.min(16))?);
    }
    Ok(r)
}

fn audit_bh(inst: &Instance, cfg: &AuditConfig, s: &mut Sampler) -> Result<Report> {
    let mut r = Report::new();
    let fs = nonneg_probe_set(inst, s, cfg.samples);
    let mut beyond = 0;
    for (label, t) in inst.family.iter() {
        for f in fs.iter().filter(|f| !f.is_zero()) {
            // witness_n asserts the biconditional at the n it returns
            let w = witness_n(t, f)?;
            r.check(true, String::new);
            if !w.proof_n_valid {
                beyond += 1;
            }
        }
        let signed = signed_probe_set(inst, s, 3);
        for &i in t.support() {
            let p = PrimeIdeal::new(t.dim(), i);
            let us = witnesses(t, &p, 3, s)?;
            for f in &signed {
                let vals: Vec<Rat> = us.iter().map(|u| f_hat_with(f, &p, t, u)).collect::<Result<_>>()?;
                r.check(vals.windows(2).all(|w| w[0] == w[1]), || {
                    format!("{label}: f̂({p}) depends on u for f = ({f}): {vals:?}")
                });
            }
        }
    }
    if beyond > 0 {
        r.note(format!("{beyond} vectors needed n beyond 2m for the membership biconditional"));
    }
    Ok(r)
}

fn audit_one_zero(inst: &Instance, lambda: &Lambda, s: &mut Sampler) -> Result<Report> {
    let mut r = Report::new();
    for (k, (label, t)) in inst.family.iter().enumerate() {
        for &i in t.support() {
            let p = PrimeIdeal::new(t.dim(), i);
            r.absorb_scoped(label, check_one_zero(k, &p, lambda, s, 3)?);
        }
    }
    Ok(r)
}

fn audit_value(inst: &Instance, cfg: &AuditConfig, s: &mut Sampler) -> Result<Report> {
    let mut r = Report::new();
    let fs = nonneg_probe_set(inst, s, cfg.samples);
    let ps = pairs(&fs, s, cfg.samples);
    let mut undefined = 0;
    for (label, t) in inst.family.iter() {
        for (f, g) in &ps {
            let sub = lemma_value_check(t, f, g)?;
            if sub.skipped.is_some() {
                undefined += 1;
            } else {
                r.absorb_scoped(label, sub);
            }
        }
    }
    r.note(format!("{undefined} pairs with f* or g* zero"));
    Ok(r)
}

fn audit_hausdorff(inst: &Instance) -> Result<Report> {
    let mut r = Report::new();
    let space = spectrum_v(&inst.family)?;
    let rep = topology_report(&space, &inst.family)?;
    r.check(rep.hausdorff, || format!("points {:?} are not separated", rep.unseparated));
    r.check(rep.locally_compact, || "a point lacks a compact base neighborhood Val(g*)".into());
    let maximal = is_maximal(&inst.family).is_none();
    r.check(rep.dense_in_p == maximal, || format!("dense in P = {} but maximal = {maximal}", rep.dense_in_p));
    r.note(format!("V = {} dense={}", format_points(&space.point_set()), rep.dense_in_p));
    Ok(r)
}

fn audit_topology_iii(inst: &Instance, cfg: &AuditConfig, lambda: &Lambda, s: &mut Sampler) -> Result<Report> {
    let mut r = Report::new();
    let fs = nonneg_probe_set(inst, s, cfg.samples);
    for (k, label) in inst.family.labels().iter().enumerate() {
        for f in &fs {
            r.absorb_scoped(label, check_trunc_identity(f, k, lambda)?);
        }
    }
    Ok(r)
}

fn labelled(fs: Vec<RatVec>) -> Vec<(String, RatVec)> {
    fs.into_iter().enumerate().map(|(i, f)| (format!("g{}", i + 1), f)).collect()
}

fn audit_sublattice(inst: &Instance, cfg: &AuditConfig, lambda: &Lambda, s: &mut Sampler) -> Result<Report> {
    let mut fs = inst.vectors.clone();
    fs.extend(labelled(signed_probe_set(inst, s, cfg.samples.min(4))));
    let table = lambda_table(&fs, lambda)?;
    let mut r = check_almost_finite(&table, lambda)?;
    r.absorb(check_continuity(&table, lambda.space())?);
    Ok(r)
}

fn audit_last(inst: &Instance, cfg: &AuditConfig, lambda: &Lambda, s: &mut Sampler) -> Result<Report> {
    let mut r = Report::new();
    let fs = signed_probe_set(inst, s, cfg.samples.min(4));
    for (k, label) in inst.family.labels().iter().enumerate() {
        for f in &fs {
            for eps in eps_grid() {
                let ls = compact_level_set(f, k, &eps, lambda)?;
                r.check(ls.consistent(), || {
                    format!(
                        "{label}: level sets for f = ({f}), eps = {eps}: {} vs {} (closed: {})",
                        format_points(&ls.set),
                        format_points(&ls.by_threshold),
                        ls.closed
                    )
                });
            }
        }
    }
    Ok(r)
}

fn audit_johnson_kist(inst: &Instance, cfg: &AuditConfig, lambda: &Lambda, s: &mut Sampler) -> Result<Report> {
    let dim = inst.dim();
    let mut fs: Vec<RatVec> = (0..dim).map(|j| RatVec::basis(dim, j)).collect();
    fs.extend(signed_probe_set(inst, s, cfg.samples.min(3)));
    let hom = check_hom_injective(&fs, lambda)?;
    let mut r = hom.report;
    for k in 0..inst.family.len() {
        for f in fs.iter().map(RatVec::abs) {
            r.absorb(check_trunc_identity(&f, k, lambda)?);
        }
    }
    Ok(r)
}

/// Audits of one instance, sharing a memoized `Λ` over all primes.
pub struct Session<'a> {
    inst: &'a Instance,
    cfg: AuditConfig,
    lambda: OnceLock<std::result::Result<Lambda, Error>>,
}

impl<'a> Session<'a> {
    pub fn new(inst: &'a Instance, cfg: &AuditConfig) -> Session<'a> {
        Session { inst, cfg: *cfg, lambda: OnceLock::new() }
    }

    fn lambda(&self) -> Result<&Lambda> {
        self.lambda.get_or_init(|| Lambda::over_all(&self.inst.family)).as_ref().map_err(Clone::clone)
    }

    /// Runs one registry entry. Errors raised inside an audit become
    /// failures.
    pub fn run(&self, id: &str) -> Report {
        let (inst, cfg) = (self.inst, &self.cfg);
        let mut s = Sampler::new(id_seed(cfg.seed, id));
        let extra: Vec<RatVec> = inst.vectors.iter().map(|(_, f)| f.clone()).collect();
        let result = match id {
            "birkhoff" => audit_birkhoff(inst, cfg, &mut s),
            "ball" => audit_ball(inst, cfg, &mut s),
            "bh" => audit_bh(inst, cfg, &mut s),
            "one-zero" => self.lambda().and_then(|l| audit_one_zero(inst, l, &mut s)),
            "value" => audit_value(inst, cfg, &mut s),
            "partition" => check_partition(&all_primes(inst.dim()), &inst.family),
            "hausdorff" => audit_hausdorff(inst),
            "topology-iii" => self.lambda().and_then(|l| audit_topology_iii(inst, cfg, l, &mut s)),
            "sublattice" => self.lambda().and_then(|l| audit_sublattice(inst, cfg, l, &mut s)),
            "last" => self.lambda().and_then(|l| audit_last(inst, cfg, l, &mut s)),
            "johnson-kist" => self.lambda().and_then(|l| audit_johnson_kist(inst, cfg, l, &mut s)),
            "main" => audit_theorem_main(inst.t(), &extra).map(|m| m.combined()),
            "ball-rep" => audit_ball_rep(inst.t(), &extra),
            "strong-literal" => audit_strong(inst.t(), StrongReading::Literal),
            "strong-bounded" => audit_strong(inst.t(), StrongReading::Bounded),
            other => Err(Error::Unsupported(format!("unknown audit id {other}"))),
        };
        result.unwrap_or_else(|e| {
            let mut r = Report::new();
            r.fail(format!("error: {e}"));
            r
        })
    }

    pub fn lines(&self, ids: &[&str]) -> Vec<AuditLine> {
        ids.iter().map(|id| AuditLine::from_report(id, &self.run(id))).collect()
    }
}

pub fn run_audit(id: &str, inst: &Instance, cfg: &AuditConfig) -> Report {
    Session::new(inst, cfg).run(id)
}

pub fn run_registry(inst: &Instance, cfg: &AuditConfig) -> Vec<AuditLine> {
    Session::new(inst, cfg).lines(&REGISTRY)
}

/// Seed of fuzz case `index`.
pub fn case_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A random subset of `coords`; nonempty when `nonempty` is set.
fn random_subset(s: &mut Sampler, coords: &[usize], nonempty: bool) -> Vec<usize> {
    loop {
        let sub: Vec<usize> = coords.iter().copied().filter(|_| s.gen_bool(0.5)).collect();
        if !nonempty || !sub.is_empty() {
            return sub;
        }
    }
}

fn random_truncation(s: &mut Sampler, dim: usize, support: Vec<usize>) -> WeightTruncation {
    let weights = support.iter().map(|_| s.positive_rat()).collect();
    WeightTruncation::new(dim, support, weights).expect("valid random truncation")
}

/// A random instance: dimension `1..=6`, a first member with random support
/// and weights, possibly more members on disjoint supports, and two vectors.
pub fn random_instance(seed: u64) -> Instance {
    let mut s = Sampler::new(seed);
    let dim = s.gen_range(1..=6);
    let all: Vec<usize> = (0..dim).collect();
    let support = random_subset(&mut s, &all, true);
    let mut members = vec![("t".to_string(), random_truncation(&mut s, dim, support.clone()))];
    let mut free: Vec<usize> = all.iter().copied().filter(|i| !support.contains(i)).collect();
    while !free.is_empty() && s.gen_bool(0.5) {
        let sub = random_subset(&mut s, &free, true);
        free.retain(|i| !sub.contains(i));
        let label = format!("u{}", members.len());
        members.push((label, random_truncation(&mut s, dim, sub)));
    }
    let family = MultiTruncation::new(members).expect("disjoint by construction");
    let vectors = vec![("f1".to_string(), s.vec(dim)), ("f2".to_string(), s.vec(dim))];
    Instance { family, vectors }
}

/// A random family that misses at least one coordinate (dimension `2..=6`).
pub fn random_non_maximal(seed: u64) -> Instance {
    let mut s = Sampler::new(seed);
    let dim = s.gen_range(2..=6);
    let all: Vec<usize> = (0..dim).collect();
    let missing = s.gen_range(0..=dim - 1);
    let rest: Vec<usize> = all.iter().copied().filter(|&i| i != missing).collect();
    let support = random_subset(&mut s, &rest, true);
    let family = MultiTruncation::single("t", random_truncation(&mut s, dim, support));
    let vectors = vec![("f1".to_string(), s.vec(dim))];
    Instance { family, vectors }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub index: usize,
    pub instance: Instance,
    pub lines: Vec<AuditLine>,
}

/// Runs `ids` on `cases` random instances in parallel; results are in case
/// order.
pub fn fuzz(seed: u64, cases: usize, ids: &[&str], cfg: &AuditConfig) -> Vec<CaseResult> {
    (0..cases)
        .into_par_iter()
        .map(|index| {
            let cs = case_seed(seed, index);
            let instance = random_instance(cs);
            let case_cfg = AuditConfig { seed: cs, ..*cfg };
            let lines = Session::new(&instance, &case_cfg).lines(ids);
            CaseResult { index, instance, lines }
        })
        .collect()
}

/// One line per id summarizing all cases: FAIL if any case failed, else
/// PASS if any passed, else SKIP.
pub fn summarize(results: &[CaseResult], ids: &[&str]) -> Vec<AuditLine> {
    ids.iter()
        .enumerate()
        .map(|(k, id)| {
            let (mut pass, mut fail, mut skip) = (0, 0, 0);
            let mut first_fail = None;
            let mut first_skip = None;
            for c in results {
                let line = &c.lines[k];
                match line.status {
                    Status::Pass => pass += 1,
                    Status::Skip => {
                        skip += 1;
                        first_skip.get_or_insert_with(|| format!("case {}: {}", c.index, line.detail));
                    }
                    Status::Fail => {
                        fail += 1;
                        first_fail.get_or_insert_with(|| {
                            format!("case {} ({}): {}", c.index, c.instance.summary(), line.detail)
                        });
                    }
                }
            }
            let status = if fail > 0 {
                Status::Fail
            } else if pass > 0 {
                Status::Pass
            } else {
                Status::Skip
            };
            let mut detail = format!("{pass} pass, {skip} skip, {fail} fail");
            if let Some(f) = first_fail {
                detail.push_str("; first failure ");
                detail.push_str(&f);
            } else if status == Status::Skip {
                if let Some(s) = first_skip {
                    detail.push_str("; ");
                    detail.push_str(&s);
                }
            }
            AuditLine { id: id.to_string(), status, detail }
        })
        .collect()
}
