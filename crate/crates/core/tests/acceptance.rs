//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every comparison is exact.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use tvl::audit::{fuzz, random_non_maximal, AuditConfig, CaseResult, Instance, LEMMAS};
use tvl::dsl;
use tvl::multi::complete_to_maximal;
use tvl::repr::{
    audit_strong, audit_theorem_main, check_hom_injective, f_hat_with, pick_witness_u, threshold_paths, witnesses,
    Indicator, Lambda, StrongReading,
};
use tvl::sample::Sampler;
use tvl::spectrum::{PointSet, PrimeIdeal};
use tvl::truncation::classify;
use tvl::{MultiTruncation, Rat, RatVec, Status, Truncation, WeightTruncation};

const SUITE_SEED: u64 = 20_240_601;
const SUITE_CASES: usize = 500;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(s: &str) -> Rat {
    s.parse().unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t = WeightTruncation::new(3, vec![0, 1], vec![r("2"), r("1")]).map_err(|e| e.to_string())?;
    let family = complete_to_maximal(&MultiTruncation::single("t", t.clone()), "t");
    ensure(
        family.len() == 2 && family.members()[1].support() == [2] && family.members()[1].weights() == [r("1")],
        || format!("completion is {family:?}"),
    )?;
    let f: RatVec = "3 1/2 5".parse().unwrap();
    let expected = [r("3/2"), r("1/2"), r("5")];
    for (i, want) in expected.iter().enumerate() {
        let p = PrimeIdeal::new(3, i);
        let k = family.member_of(i).unwrap();
        let m = &family.members()[k];
        let u = pick_witness_u(m, &p).map_err(|e| e.to_string())?;
        let paths = threshold_paths(&f, &p, m, &u).map_err(|e| e.to_string())?;
        ensure(&paths.closed == want && &paths.inf_form == want && &paths.sup_form == want, || {
            format!("{p}: {paths:?}, expected {want}")
        })?;
    }
    let lambda = Lambda::over_all(&family).map_err(|e| e.to_string())?;
    let col_f = lambda.column(&f).map_err(|e| e.to_string())?;
    ensure(col_f == expected, || format!("Λ(f) = {col_f:?}"))?;
    let col_fs = lambda.column(&t.apply(&f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let y: PointSet = [PrimeIdeal::new(3, 0), PrimeIdeal::new(3, 1)].into_iter().collect();
    let ind = Indicator::new(y).on(lambda.points());
    let meet: Vec<Rat> = ind.iter().zip(&col_f).map(|(a, b)| a.clone().min(b.clone())).collect();
    ensure(col_fs == [r("1"), r("1/2"), r("0")] && col_fs == meet, || {
        format!("Λ(f*) = {col_fs:?}, 1_Y ∧ Λ(f) = {meet:?}")
    })?;
    let el = start.elapsed();
    ensure(el < Duration::from_secs(1), || format!("took {el:?}"))?;
    Ok(format!(
        "table (P_1:3/2, P_2:1/2, P_3:5), Λ(f*) = (1, 1/2, 0) = 1_{{P_1,P_2}} ∧ Λ(f), three paths agree, {el:.2?}"
    ))
}

fn criterion_2(results: &[CaseResult], elapsed: Duration) -> Outcome {
    ensure(results.len() == SUITE_CASES, || format!("{} cases", results.len()))?;
    for c in results {
        for line in &c.lines {
            ensure(line.status == Status::Pass, || {
                format!("case {} ({}): {} {} {}", c.index, c.instance.summary(), line.id, line.status, line.detail)
            })?;
        }
    }
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} cases x {} audits all PASS in {elapsed:.2?}", results.len(), LEMMAS.len()))
}

fn basis_and(inst: &Instance) -> Vec<RatVec> {
    let n = inst.dim();
    let mut fs: Vec<RatVec> = (0..n).map(|j| RatVec::basis(n, j)).collect();
    fs.extend(inst.vectors.iter().map(|(_, f)| f.clone()));
    fs
}

/// Returns whether `Y = X` for each instance, for the weak characterization.
fn criterion_3(instances: &[&Instance]) -> (Outcome, Vec<bool>) {
    let mut y_is_x = Vec::new();
    let mut run = || -> Result<String, String> {
        for (k, inst) in instances.iter().enumerate() {
            let done = complete_to_maximal(&inst.family, "T");
            let lambda = Lambda::over_all(&done).map_err(|e| e.to_string())?;
            let h = check_hom_injective(&basis_and(inst), &lambda).map_err(|e| e.to_string())?;
            ensure(h.linear && h.lattice && h.injective && h.report.passed(), || {
                format!("case {k} ({}): {:?}", inst.summary(), h.report)
            })?;
            let extra: Vec<RatVec> = inst.vectors.iter().map(|(_, f)| f.clone()).collect();
            let main = audit_theorem_main(inst.t(), &extra).map_err(|e| e.to_string())?;
            ensure(main.clauses.len() == 5 && main.all_pass(), || {
                format!("case {k} ({}): {:?}", inst.summary(), main.combined())
            })?;
            ensure(main.hom.injective, || format!("case {k}: Λ of the completed {{t}} is not injective"))?;
            y_is_x.push(main.y == main.x);
        }
        let mut attributed = 0;
        for k in 0..100 {
            let inst = random_non_maximal(SUITE_SEED ^ (k as u64 + 1) << 20);
            let lambda = Lambda::over_all(&inst.family).map_err(|e| e.to_string())?;
            let h = check_hom_injective(&basis_and(&inst), &lambda).map_err(|e| e.to_string())?;
            let kw = h.kernel_witness.clone().ok_or_else(|| format!("non-maximal case {k}: no kernel witness"))?;
            let col = lambda.column(&kw).map_err(|e| e.to_string())?;
            ensure(!h.injective && !kw.is_zero() && col.iter().all(Rat::is_zero), || {
                format!(
                    "non-maximal case {k} ({}): injective={} witness ({kw}) column {col:?}",
                    inst.summary(),
                    h.injective
                )
            })?;
            let mw = h.maximal_witness.clone().ok_or_else(|| format!("non-maximal case {k}: maximality not blamed"))?;
            let annihilated = inst.family.members().iter().all(|m| m.eval(&mw).is_zero());
            ensure(annihilated && h.report.detail().contains("not maximal"), || {
                format!("non-maximal case {k}: attribution {:?}", h.report.detail())
            })?;
            attributed += 1;
        }
        Ok(format!(
            "{} completed instances injective with clauses i-v PASS; {attributed}/100 non-maximal families non-injective with kernel witness, attributed to maximality",
            instances.len()
        ))
    };
    let out = run();
    (out, y_is_x)
}

fn criterion_4(instances: &[&Instance], y_is_x: &[bool]) -> Outcome {
    ensure(y_is_x.len() == instances.len(), || "criterion 3 did not finish".into())?;
    let mut weak = 0;
    for (k, (inst, &yx)) in instances.iter().zip(y_is_x).enumerate() {
        let t = inst.t();
        let c = classify(t).map_err(|e| e.to_string())?.weak.holds;
        let full = t.has_full_support();
        ensure(c == full && full == yx, || format!("case {k} ({}): weak={c} full={full} Y=X {yx}", inst.summary()))?;
        weak += c as usize;
    }
    Ok(format!("{} truncations agree three ways ({weak} weak)", instances.len()))
}

fn random_trunc(s: &mut Sampler) -> WeightTruncation {
    let dim = s.gen_range(1..=6);
    let mut support: Vec<usize> = (0..dim).filter(|_| s.gen_bool(0.6)).collect();
    if support.is_empty() {
        support.push(s.gen_range(0..=dim - 1));
    }
    let weights = support.iter().map(|_| s.positive_rat()).collect();
    WeightTruncation::new(dim, support, weights).unwrap()
}

fn random_point(s: &mut Sampler, t: &WeightTruncation) -> PrimeIdeal {
    let sup = t.support();
    PrimeIdeal::new(t.dim(), sup[s.gen_range(0..=sup.len() - 1)])
}

fn criterion_5() -> Outcome {
    let mut s = Sampler::new(SUITE_SEED ^ 5);
    let mut probes = 0;
    for k in 0..10_000 {
        let t = random_trunc(&mut s);
        let f = s.vec(t.dim());
        let p = random_point(&mut s, &t);
        let pool = witnesses(&t, &p, 4, &mut s).map_err(|e| e.to_string())?;
        let u = &pool[k % pool.len()];
        let paths = threshold_paths(&f, &p, &t, u).map_err(|e| format!("triple {k}: {e}"))?;
        ensure(paths.agree(), || format!("triple {k}: f = ({f}), {p}, u = ({u}): {paths:?}"))?;
        probes += paths.probes;
    }
    Ok(format!("10000 triples: closed = inf-bisection = sup-form exactly ({probes} predicate probes)"))
}

fn criterion_6() -> Outcome {
    let mut s = Sampler::new(SUITE_SEED ^ 6);
    for k in 0..1000 {
        let t = random_trunc(&mut s);
        let f = s.vec(t.dim());
        let p = random_point(&mut s, &t);
        let us = witnesses(&t, &p, 3, &mut s).map_err(|e| e.to_string())?;
        ensure(us.len() == 3 && us[0] != us[1] && us[1] != us[2] && us[0] != us[2], || format!("case {k}: {us:?}"))?;
        let vals: Vec<Rat> =
            us.iter().map(|u| f_hat_with(&f, &p, &t, u)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        ensure(vals.iter().all(|v| v == &vals[0]), || format!("case {k}: f = ({f}) at {p}: {vals:?}"))?;
    }
    Ok("1000 cases: f̂(P) identical across 3 distinct witnesses".into())
}

fn criterion_7(instances: &[&Instance], n_max: u64) -> Outcome {
    let mut bounded_pass = 0;
    for (k, inst) in instances.iter().enumerate() {
        let t = inst.t();
        let c = classify(t).map_err(|e| e.to_string())?;
        let w = c.strong_literal.witness.clone().ok_or_else(|| format!("case {k}: no literal witness"))?;
        let unfixed = (1..=n_max).all(|n| {
            let nw = w.scale(&Rat::int(n as i64));
            t.eval(&nw) != nw
        });
        ensure(!c.strong_literal.holds && unfixed, || format!("case {k}: literal reading met or ({w}) fixed"))?;
        ensure(c.strong_bounded.holds == c.weak.holds, || format!("case {k}: bounded != weak"))?;
        let lit = audit_strong(t, StrongReading::Literal).map_err(|e| e.to_string())?;
        ensure(lit.status() == Status::Skip && lit.detail().contains(&w.to_string()), || {
            format!("case {k}: literal audit {:?}", lit.detail())
        })?;
        let b = audit_strong(t, StrongReading::Bounded).map_err(|e| e.to_string())?;
        if t.has_full_support() {
            let rank_note = format!("rank {} = |X|", t.dim());
            ensure(b.passed() && b.detail().contains(&rank_note), || {
                format!("case {k}: bounded audit {:?}", b.detail())
            })?;
            bounded_pass += 1;
        } else {
            ensure(b.status() == Status::Skip, || format!("case {k}: bounded audit ran without full support"))?;
        }
    }
    Ok(format!(
        "{} instances: literal reading fails with witness; bounded ⟺ weak; {bounded_pass} full-support density checks rank n = |X|",
        instances.len()
    ))
}

fn data(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(sub)
}

fn tvl_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "tvl"))
        .collect();
    v.sort();
    v
}

fn criterion_8() -> Outcome {
    let files = tvl_files(&data("roundtrip"));
    ensure(files.len() == 100, || format!("{} round-trip files", files.len()))?;
    for path in &files {
        let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
        let a = dsl::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let b = dsl::parse(&dsl::serialize(&a)).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(a == b && dsl::serialize(&a) == dsl::serialize(&b), || format!("{} is not a fixpoint", path.display()))?;
    }

    let expected = fs::read_to_string(data("malformed/expected.tsv")).map_err(|e| e.to_string())?;
    let mut malformed = 0;
    for row in expected.lines() {
        let f: Vec<&str> = row.split('\t').collect();
        let text = fs::read_to_string(data("malformed").join(f[0])).map_err(|e| e.to_string())?;
        let e1 = dsl::parse(&text).err().ok_or_else(|| format!("{} parsed", f[0]))?;
        let e2 = dsl::parse(&text).err().ok_or_else(|| format!("{} parsed", f[0]))?;
        let pos = (e1.line.to_string(), e1.column.to_string());
        ensure(e1 == e2 && pos == (f[1].into(), f[2].into()) && e1.expected == f[3], || format!("{}: got {e1}", f[0]))?;
        malformed += 1;
    }
    ensure(malformed == 20, || format!("{malformed} malformed files"))?;

    let dir = std::env::temp_dir().join(format!("tvl-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let script = dir.join("fuzz42.tvl");
    fs::write(&script, "fuzz seed=42 cases=100\n").map_err(|e| e.to_string())?;
    let run = || Command::new(env!("CARGO_BIN_EXE_tvl")).arg("run").arg(&script).output();
    let a = run().map_err(|e| e.to_string())?;
    let b = run().map_err(|e| e.to_string())?;
    let _ = fs::remove_dir_all(&dir);
    ensure(a.status.code() == Some(0) && b.status.code() == Some(0), || {
        format!("exit {:?} / {:?}: {}", a.status.code(), b.status.code(), String::from_utf8_lossy(&a.stdout))
    })?;
    ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || "fuzz reports differ".into())?;
    Ok(format!(
        "100 files round-trip, 20 malformed positions deterministic, fuzz seed=42 cases=100 byte-identical ({} bytes)",
        a.stdout.len()
    ))
}

fn main() {
    let cfg = AuditConfig::default();
    let mut lines: Vec<(usize, Outcome, Duration)> = Vec::new();
    let mut timed = |n: usize, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let el = start.elapsed();
        let (tag, msg) = match &out {
            Ok(m) => ("PASS", m.clone()),
            Err(m) => ("FAIL", m.clone()),
        };
        println!("criterion {n}: {tag} [{el:.2?}] {msg}");
        lines.push((n, out, el));
    };

    timed(1, &mut criterion_1);

    let mut results = Vec::new();
    timed(2, &mut || {
        let start = Instant::now();
        results = fuzz(SUITE_SEED, SUITE_CASES, &LEMMAS, &cfg);
        criterion_2(&results, start.elapsed())
    });

    let instances: Vec<&Instance> = results.iter().map(|c| &c.instance).collect();
    let mut y_is_x = Vec::new();
    timed(3, &mut || {
        let (out, yx) = criterion_3(&instances);
        y_is_x = yx;
        out
    });
    timed(4, &mut || criterion_4(&instances, &y_is_x));
    timed(5, &mut criterion_5);
    timed(6, &mut criterion_6);
    timed(7, &mut || criterion_7(&instances, cfg.n_max));
    timed(8, &mut criterion_8);

    let failed: Vec<usize> = lines.iter().filter(|(_, o, _)| o.is_err()).map(|(n, _, _)| *n).collect();
    if failed.is_empty() {
        println!("acceptance: 8/8 criteria PASS");
    } else {
        println!("acceptance: FAIL on criteria {failed:?}");
        std::process::exit(1);
    }
}
