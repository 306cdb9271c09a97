//! The representation `Λ: f ↦ f̂` over `Q_T` and executable audits of its
//! lemmas and theorems.
//!
//! For `P = P_i` in the block of a member `*` and a witness `u ∈ π*(P)`,
//! `f̂(P) = inf{α : (f - α u*)⁺ ∈ P}`. On `Q^n` this is `f_i / u*_i`; every
//! evaluation also recovers the value by bisection on the inf-form and on the
//! dual sup-form `sup{α : (f - α u*)⁻ ∈ P}`, and the three must agree.

use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{rational_reconstruct, ExtRat, Rat, RatVec};
use crate::linalg;
use crate::multi::{complete_to_maximal, is_maximal, MultiTruncation};
use crate::report::Report;
use crate::sample::Sampler;
use crate::spectrum::{all_primes, dense_in_p, format_points, spectrum_v, FiniteSpace, Mask, PointSet, PrimeIdeal};
use crate::truncation::{classify, weight_breaking_n, Truncation, WeightTruncation};

/// `u ∈ π*(P)`, i.e. `(u - u*)* ∉ P`, evaluated directly and by the closed
/// form `u_i > w_i` (`i` in the support); the two must agree.
pub fn pi_star_contains(t: &WeightTruncation, p: &PrimeIdeal, u: &RatVec) -> Result<bool> {
    let us = t.apply(u)?;
    let direct = !p.contains(&t.apply(&u.sub(&us)?)?);
    let closed = t.weight_at(p.coord()).is_some_and(|w| &u[p.coord()] > w);
    if direct != closed {
        return Err(Error::Fault(format!("π* membership disagrees for u = ({u}) at {p}")));
    }
    Ok(direct)
}

/// The doubled weight vector, `2w` on the support and `0` off it.
pub fn pick_witness_u(t: &WeightTruncation, p: &PrimeIdeal) -> Result<RatVec> {
    if !t.in_support(p.coord()) {
        return Err(Error::NoWitness(p.to_string()));
    }
    let u = t.weight_vector().scale(&Rat::int(2));
    if !pi_star_contains(t, p, &u)? {
        return Err(Error::Fault(format!("2w is not in π*({p})")));
    }
    Ok(u)
}

/// `count` distinct members of `π*(P)`: `2w`, then `(w_i + 1/k) e_i` for
/// `k = 1, 2, ...`, then seeded random vectors raised above `w_i` at `i`.
pub fn witnesses(t: &WeightTruncation, p: &PrimeIdeal, count: usize, sampler: &mut Sampler) -> Result<Vec<RatVec>> {
    let i = p.coord();
    let w = t.weight_at(i).ok_or_else(|| Error::NoWitness(p.to_string()))?.clone();
    let mut out = vec![pick_witness_u(t, p)?];
    let mut k = 1;
    while out.len() < count {
        let u = if k <= 2 {
            let mut e = RatVec::zeros(t.dim()).into_entries();
            e[i] = &w + &Rat::new(1, k);
            RatVec::new(e)
        } else {
            let mut e = sampler.nonneg_vec(t.dim()).into_entries();
            e[i] = &w + &sampler.positive_rat();
            RatVec::new(e)
        };
        k += 1;
        if !pi_star_contains(t, p, &u)? {
            return Err(Error::Fault(format!("constructed witness ({u}) is not in π*({p})")));
        }
        if !out.contains(&u) {
            out.push(u);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdPaths {
    pub closed: Rat,
    pub inf_form: Rat,
    pub sup_form: Rat,
    /// Predicate evaluations spent by both bisections.
    pub probes: usize,
}

impl ThresholdPaths {
    pub fn agree(&self) -> bool {
        self.closed == self.inf_form && self.closed == self.sup_form
    }
}

/// Finds the boundary of an up-set predicate on `[-b, b]` by bisection until
/// the bracket is narrower than `1 / d^2`, then returns the simplest rational
/// in it. Every probe is kept and checked for monotonicity.
fn bisect_boundary(pred: &dyn Fn(&Rat) -> Result<bool>, b: &Rat, d: &BigInt) -> Result<(Rat, usize)> {
    let mut probes: Vec<(Rat, bool)> = Vec::new();
    let mut probe = |a: &Rat| -> Result<bool> {
        let v = pred(a)?;
        probes.push((a.clone(), v));
        Ok(v)
    };
    let (mut lo, mut hi) = (-b, b.clone());
    if probe(&lo)? || !probe(&hi)? {
        return Err(Error::Fault(format!("threshold outside the bracket [-{b}, {b}]")));
    }
    // halvings needed for 2b / 2^k < 1 / d²
    let span = (b * &Rat::from_bigint(d * d) * &Rat::int(2)).ceil();
    let steps = span.numer().bits();
    let mut width = &hi - &lo;
    let half = Rat::new(1, 2);
    for _ in 0..steps {
        width = &width * &half;
        let mid = &lo + &width;
        if probe(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let r = rational_reconstruct(&lo, &hi)?;
    probe(&r)?;
    probes.sort_by(|a, b| a.0.cmp(&b.0));
    if probes.windows(2).any(|w| w[0].1 && !w[1].1) {
        return Err(Error::Fault("threshold predicate is not monotone".into()));
    }
    Ok((r, probes.len()))
}

/// `f̂(P)` computed three ways with an explicit witness `u ∈ π*(P)`.
pub fn threshold_paths(f: &RatVec, p: &PrimeIdeal, t: &WeightTruncation, u: &RatVec) -> Result<ThresholdPaths> {
    f.check_dim(u)?;
    if !pi_star_contains(t, p, u)? {
        return Err(Error::NotAWitness(u.to_string(), p.to_string()));
    }
    let us = t.apply(u)?;
    let closed = f[p.coord()].checked_div(&us[p.coord()])?;

    // bracket and denominator bound from the data only
    let min_u = us.iter().filter(|x| x.is_positive()).min().expect("u* is nonzero at P").clone();
    let max_f = f.iter().map(Rat::abs).max().expect("nonempty");
    let b = Rat::one() + (max_f / min_u).ceil();
    let den_f = f.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let num_u = us.iter().map(|x| x.numer().abs()).max().expect("nonempty");
    let d = den_f * num_u;

    // membership in P_i reads coordinate i only, so only that entry of
    // f - α u* is formed
    let i = p.coord();
    let shifted = |alpha: &Rat| &f[i] - &(&us[i] * alpha);
    let inf_pred = |alpha: &Rat| -> Result<bool> { Ok(!shifted(alpha).is_positive()) };
    // (f - α u*)⁻ ∈ P is a down-set; its complement is an up-set with the
    // same boundary
    let sup_pred = |alpha: &Rat| -> Result<bool> { Ok(shifted(alpha).is_negative()) };
    let (inf_form, n1) = bisect_boundary(&inf_pred, &b, &d)?;
    let (sup_form, n2) = bisect_boundary(&sup_pred, &b, &d)?;
    if !inf_pred(&inf_form)? || sup_pred(&sup_form)? {
        return Err(Error::Fault(format!("reconstructed threshold is not attained at {p}")));
    }
    Ok(ThresholdPaths { closed, inf_form, sup_form, probes: n1 + n2 })
}

pub fn f_hat_with(f: &RatVec, p: &PrimeIdeal, t: &WeightTruncation, u: &RatVec) -> Result<Rat> {
    let paths = threshold_paths(f, p, t, u)?;
    if !paths.agree() {
        return Err(Error::Fault(format!(
            "threshold paths disagree at {p} for f = ({f}): closed {}, inf {}, sup {}",
            paths.closed, paths.inf_form, paths.sup_form
        )));
    }
    Ok(paths.closed)
}

/// `f̂(P)` for `P` in `Q_T`, using the member whose block holds `P` and the
/// doubled-weight witness.
pub fn f_hat(f: &RatVec, p: &PrimeIdeal, family: &MultiTruncation) -> Result<ExtRat> {
    let k = family.member_of(p.coord()).ok_or_else(|| Error::NotInSpectrum(p.to_string()))?;
    let t = &family.members()[k];
    let u = pick_witness_u(t, p)?;
    Ok(ExtRat::Finite(f_hat_with(f, p, t, &u)?))
}

/// Evaluates `Λ` over `Q_T` for a fixed family and ambient set, memoizing
/// columns.
pub struct Lambda {
    family: MultiTruncation,
    ambient: PointSet,
    space: FiniteSpace,
    cache: Mutex<HashMap<RatVec, Vec<Rat>>>,
}

impl Lambda {
    pub fn new(family: &MultiTruncation, ambient: &PointSet) -> Result<Lambda> {
        Lambda::with_generators(family, ambient, &[])
    }

    /// Extra nonnegative generators enlarge the recorded base of the space.
    pub fn with_generators(family: &MultiTruncation, ambient: &PointSet, extra: &[RatVec]) -> Result<Lambda> {
        let space = FiniteSpace::over(ambient, family, extra)?;
        Ok(Lambda { family: family.clone(), ambient: ambient.clone(), space, cache: Mutex::new(HashMap::new()) })
    }

    /// Over `𝒫`, the set of all primes.
    pub fn over_all(family: &MultiTruncation) -> Result<Lambda> {
        Lambda::new(family, &all_primes(family.dim()))
    }

    pub fn family(&self) -> &MultiTruncation {
        &self.family
    }

    pub fn ambient(&self) -> &PointSet {
        &self.ambient
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn points(&self) -> &[PrimeIdeal] {
        self.space.points()
    }

    pub fn dim(&self) -> usize {
        self.family.dim()
    }

    /// `Λ(f)` as exact values, one per point of the space.
    pub fn column(&self, f: &RatVec) -> Result<Vec<Rat>> {
        if f.dim() != self.dim() {
            return Err(Error::DimMismatch { left: self.dim(), right: f.dim() });
        }
        if let Some(c) = self.cache.lock().expect("cache").get(f) {
            return Ok(c.clone());
        }
        let col = self
            .points()
            .iter()
            .map(|p| match f_hat(f, p, &self.family)? {
                ExtRat::Finite(x) => Ok(x),
                other => Err(Error::Fault(format!("f̂({p}) = {other} is not finite"))),
            })
            .collect::<Result<Vec<_>>>()?;
        self.cache.lock().expect("cache").insert(f.clone(), col.clone());
        Ok(col)
    }

    pub fn ext_column(&self, f: &RatVec) -> Result<Vec<ExtRat>> {
        Ok(self.column(f)?.into_iter().map(ExtRat::Finite).collect())
    }

    pub fn block_mask(&self, member: usize) -> Mask {
        self.space.blocks()[member].mask
    }
}

/// `1_Y` on the points of a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indicator {
    pub set: PointSet,
}

impl Indicator {
    pub fn new(set: PointSet) -> Indicator {
        Indicator { set }
    }

    pub fn on(&self, points: &[PrimeIdeal]) -> Vec<Rat> {
        points.iter().map(|p| if self.set.contains(p) { Rat::one() } else { Rat::zero() }).collect()
    }
}

fn pointwise(a: &[Rat], b: &[Rat], op: impl Fn(&Rat, &Rat) -> Rat) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

fn show(col: &[Rat]) -> String {
    col.iter().map(Rat::to_string).collect::<Vec<_>>().join(" ")
}

/// Labelled columns of `Λ` over a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReprTable {
    pub points: Vec<PrimeIdeal>,
    pub labels: Vec<String>,
    pub vectors: Vec<RatVec>,
    pub columns: Vec<Vec<ExtRat>>,
}

impl ReprTable {
    pub fn column(&self, label: &str) -> Option<&[ExtRat]> {
        self.labels.iter().position(|l| l == label).map(|k| self.columns[k].as_slice())
    }

    pub fn value(&self, label: &str, p: &PrimeIdeal) -> Option<&ExtRat> {
        let i = self.points.iter().position(|q| q == p)?;
        self.column(label).map(|c| &c[i])
    }
}

pub fn lambda_table(fs: &[(String, RatVec)], lambda: &Lambda) -> Result<ReprTable> {
    let mut columns = Vec::with_capacity(fs.len());
    for (_, f) in fs {
        columns.push(lambda.ext_column(f)?);
    }
    Ok(ReprTable {
        points: lambda.points().to_vec(),
        labels: fs.iter().map(|(l, _)| l.clone()).collect(),
        vectors: fs.iter().map(|(_, f)| f.clone()).collect(),
        columns,
    })
}

#[derive(Clone, Debug)]
pub struct HomCheck {
    pub report: Report,
    pub linear: bool,
    pub lattice: bool,
    pub injective: bool,
    /// Nonzero `f` with `Λ(f) = 0`.
    pub kernel_witness: Option<RatVec>,
    /// Positive vector annihilated by all members when `T` is not maximal.
    pub maximal_witness: Option<RatVec>,
    pub dense: bool,
}

const SCALARS: [(i64, i64, i64, i64); 3] = [(1, 1, 1, 1), (2, 1, -1, 3), (-3, 2, 5, 1)];

/// Linearity and lattice identities on all pairs from `fs`, and injectivity
/// from the exact rank of `Λ` on the standard basis.
///
/// When `T` is not maximal or the ambient set is not dense, the report is
/// skipped with the cause; the structured fields still carry the computed
/// verdicts, including the kernel witness.
pub fn check_hom_injective(fs: &[RatVec], lambda: &Lambda) -> Result<HomCheck> {
    let n = lambda.dim();
    let mut r = Report::new();
    let (mut linear, mut lattice) = (true, true);
    for (a, f) in fs.iter().enumerate() {
        let cf = lambda.column(f)?;
        for (b, g) in fs.iter().enumerate().skip(a) {
            let cg = lambda.column(g)?;
            let (p, q, s, t) = SCALARS[(a + b) % SCALARS.len()];
            let (x, y) = (Rat::new(p, q), Rat::new(s, t));
            let comb = f.scale(&x).add(&g.scale(&y))?;
            let lhs = lambda.column(&comb)?;
            let rhs = pointwise(&cf, &cg, |u, v| u * &x + v * &y);
            linear &= r.check(lhs == rhs, || format!("Λ({x}f + {y}g) != {x}Λ(f) + {y}Λ(g) for f = ({f}), g = ({g})"));
            let join = lambda.column(&f.join(g)?)?;
            let meet = lambda.column(&f.meet(g)?)?;
            lattice &= r.check(join == pointwise(&cf, &cg, |u, v| u.max(v).clone()), || {
                format!("Λ(f ∨ g) != Λ(f) ∨ Λ(g) for f = ({f}), g = ({g})")
            });
            lattice &= r.check(meet == pointwise(&cf, &cg, |u, v| u.min(v).clone()), || {
                format!("Λ(f ∧ g) != Λ(f) ∧ Λ(g) for f = ({f}), g = ({g})")
            });
        }
    }

    // Λ is linear, so its matrix on the basis decides injectivity
    let basis_cols: Vec<Vec<Rat>> = (0..n).map(|j| lambda.column(&RatVec::basis(n, j))).collect::<Result<_>>()?;
    let rows: Vec<Vec<Rat>> =
        (0..lambda.points().len()).map(|i| basis_cols.iter().map(|c| c[i].clone()).collect()).collect();
    let kernel = linalg::kernel(&rows, n);
    let injective = kernel.is_empty();
    let kernel_witness = kernel.into_iter().next();
    if let Some(k) = &kernel_witness {
        let col = lambda.column(k)?;
        r.check(!k.is_zero() && col.iter().all(Rat::is_zero), || format!("kernel vector ({k}) does not replay"));
    }
    for f in fs {
        let zero = lambda.column(f)?.iter().all(Rat::is_zero);
        if zero && !f.is_zero() && injective {
            r.fail(format!("Λ(f) = 0 for f = ({f}) although the basis matrix has full rank"));
        }
    }

    let maximal_witness = is_maximal(lambda.family());
    let dense = dense_in_p(n, lambda.ambient())?;
    let maximal = maximal_witness.is_none();
    r.check(!(maximal && dense) || injective, || {
        format!("Λ not injective: Λ({}) = 0", kernel_witness.as_ref().unwrap())
    });
    if !dense {
        r.skip("ambient set is not dense in P");
    } else if let Some(w) = &maximal_witness {
        r.check(!injective, || format!("T not maximal (witness ({w})) but Λ is injective"));
        match &kernel_witness {
            Some(k) => r.skip(format!(
                "T not maximal: ({w}) is annihilated by every member; injectivity fails with Λ({k}) = 0"
            )),
            None => r.skip(format!("T not maximal: ({w}) is annihilated by every member")),
        }
    }
    Ok(HomCheck { report: r, linear, lattice, injective, kernel_witness, maximal_witness, dense })
}

/// `Λ(f*) = 1_{Q*} ∧ Λ(f)` for member `k`, with `Q*` open-closed.
pub fn check_trunc_identity(f: &RatVec, k: usize, lambda: &Lambda) -> Result<Report> {
    let mut r = Report::new();
    let t = &lambda.family().members()[k];
    let mask = lambda.block_mask(k);
    let space = lambda.space();
    r.check(space.is_open(mask) && space.is_closed(mask), || {
        format!("block {} is not open-closed", format_points(&space.set_of(mask)))
    });
    let lhs = lambda.column(&t.apply(f)?)?;
    let ind = Indicator::new(space.set_of(mask)).on(lambda.points());
    let rhs = pointwise(&ind, &lambda.column(f)?, |a, b| a.min(b).clone());
    r.check(lhs == rhs, || format!("Λ(f*) = ({}) but 1_Q* ∧ Λ(f) = ({}) for f = ({f})", show(&lhs), show(&rhs)));
    Ok(r)
}

/// The three clauses of the one-zero lemma at `P` for member `k`: `û*(P) = 1`
/// on sampled `u ∈ π*(P)` (including `u_i = w_i + 1/k`), `f̂(P) = 0` on sampled
/// `f ∈ P`, and `Λ(f^⋊)(P) = 0` for every other member `⋊`.
pub fn check_one_zero(
    k: usize,
    p: &PrimeIdeal,
    lambda: &Lambda,
    sampler: &mut Sampler,
    count: usize,
) -> Result<Report> {
    let mut r = Report::new();
    let family = lambda.family();
    let t = &family.members()[k];
    let Some(pi) = lambda.points().iter().position(|q| q == p) else {
        return Err(Error::NotInSpectrum(p.to_string()));
    };
    let Some(w) = t.weight_at(p.coord()) else {
        return Err(Error::NoWitness(p.to_string()));
    };
    let n = t.dim();
    for j in 0..count {
        let mut e = sampler.nonneg_vec(n).into_entries();
        e[p.coord()] = if j < 4 { w + &Rat::new(1, j as i64 + 1) } else { w + &sampler.positive_rat() };
        let u = RatVec::new(e);
        let val = &lambda.column(&t.apply(&u)?)?[pi];
        r.check(is_one(val), || format!("û*({p}) = {val} for u = ({u})"));

        let mut e = sampler.vec(n).into_entries();
        e[p.coord()] = Rat::zero();
        let f = RatVec::new(e);
        let val = &lambda.column(&f)?[pi];
        r.check(val.is_zero(), || format!("f̂({p}) = {val} for f = ({f}) ∈ {p}"));

        let g = sampler.nonneg_vec(n);
        for (other, m) in family.members().iter().enumerate() {
            if other != k {
                let val = &lambda.column(&m.apply(&g)?)?[pi];
                r.check(val.is_zero(), || format!("Λ(f^{})({p}) = {val} for f = ({g})", family.labels()[other]));
            }
        }
    }
    Ok(r)
}

fn is_one(x: &Rat) -> bool {
    *x == Rat::one()
}

/// The `n` of the membership lemma `f* ∉ P ⟺ nf ∈ π*(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessN {
    /// Smallest `m` with `(mf)* < mf`.
    pub m: BigInt,
    /// `2m`, the choice made in the lemma's proof.
    pub proof_n: BigInt,
    /// Whether the biconditional holds at `2m` for every prime.
    pub proof_n_valid: bool,
    /// An `n` for which it holds: `max(2m, N0)` where `N0` is the least `n`
    /// with `n f_i > w_i` on every supported `i` with `f_i > 0`.
    pub n: BigInt,
}

/// `f* ∉ P ⟺ nf ∈ π*(P)` at every prime of `Q^n`.
pub fn bh_biconditional(t: &WeightTruncation, f: &RatVec, n: &BigInt) -> Result<Option<PrimeIdeal>> {
    let fs = t.apply(f)?;
    let nf = f.scale(&Rat::from_bigint(n.clone()));
    for p in all_primes(t.dim()) {
        if !p.contains(&fs) != pi_star_contains(t, &p, &nf)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

pub fn witness_n(t: &WeightTruncation, f: &RatVec) -> Result<WitnessN> {
    f.require_nonneg("f")?;
    let m = weight_breaking_n(t, f).ok_or(Error::ZeroVector)?;
    // minimal-m scan replay
    let mf = f.scale(&Rat::from_bigint(m.clone()));
    if t.apply(&mf)? == mf {
        return Err(Error::Fault(format!("(mf)* = mf at m = {m}")));
    }
    if m > BigInt::one() {
        let prev = f.scale(&Rat::from_bigint(&m - 1));
        if t.apply(&prev)? != prev {
            return Err(Error::Fault(format!("m = {m} is not minimal")));
        }
    }
    let proof_n: BigInt = &m * 2u32;
    let n0 = (0..t.dim())
        .filter(|&i| f[i].is_positive())
        .filter_map(|i| t.weight_at(i).map(|w| (w / &f[i]).floor().numer() + 1))
        .max()
        .unwrap_or_else(BigInt::one);
    let n = proof_n.clone().max(n0);
    let proof_n_valid = bh_biconditional(t, f, &proof_n)?.is_none();
    if let Some(p) = bh_biconditional(t, f, &n)? {
        return Err(Error::Fault(format!("biconditional fails at {p} with n = {n}")));
    }
    Ok(WitnessN { m, proof_n, proof_n_valid, n })
}

/// For each point `P` and each closed `F` not containing it, replays the
/// separation construction: a base set `[Q]_{f*} ∋ P` missing `F`, `n` from
/// [`witness_n`] doubled so that `nf_i >= 2 w_i`, `u = nf - (nf)*`, and the
/// column `Λ(u*)` must be `1` at `P` and `0` on `F`.
pub fn check_separation(lambda: &Lambda) -> Result<Report> {
    let mut r = Report::new();
    let space = lambda.space();
    let family = lambda.family();
    let closed = space.closed_sets()?;
    let mut extended = 0usize;
    for (a, p) in space.points().iter().enumerate() {
        for &fmask in &closed {
            if fmask >> a & 1 == 1 {
                continue;
            }
            let Some(base) = space.base().iter().find(|b| b.mask >> a & 1 == 1 && b.mask & fmask == 0) else {
                r.fail(format!("no base set separates {p} from {}", format_points(&space.set_of(fmask))));
                continue;
            };
            let t = &family.members()[base.member];
            let f = &base.generator;
            let wn = witness_n(t, f)?;
            let w = t.weight_at(p.coord()).expect("P in the block of the base set");
            let mut n = wn.n.clone();
            if &f[p.coord()] * &Rat::from_bigint(n.clone()) < w * &Rat::int(2) {
                n *= 2;
                extended += 1;
            }
            let nf = f.scale(&Rat::from_bigint(n));
            let u = nf.sub(&t.apply(&nf)?)?;
            let col = lambda.column(&t.apply(&u)?)?;
            let fset = space.set_of(fmask);
            let ok = is_one(&col[a]) && space.points().iter().zip(&col).all(|(q, v)| !fset.contains(q) || v.is_zero());
            r.check(ok, || {
                format!(
                    "u = ({u}) gives Λ(u*) = ({}) which does not separate {p} from {}",
                    show(&col),
                    format_points(&fset)
                )
            });
        }
    }
    if extended > 0 {
        r.note(format!("{extended} separations needed n doubled beyond the membership witness"));
    }
    Ok(r)
}

/// The three clauses of the ball lemma on the given pairs at every prime,
/// with (iii) checked for `n = 1..=n_bound` and against the closed form.
pub fn check_lemma_ball(t: &WeightTruncation, pairs: &[(RatVec, RatVec)], n_bound: u64) -> Result<Report> {
    let mut r = Report::new();
    let primes = all_primes(t.dim());
    for (f, g) in pairs {
        let fs = t.apply(f)?;
        let gs = t.apply(g)?;
        let f_rest = f.sub(&fs)?;
        let g_rest = g.sub(&gs)?;
        let i_concl = gs.sub(&g.meet(&fs)?)?;
        let ii_prem = t.apply(&f_rest)?.meet(&t.apply(&g_rest)?)?;
        let ii_concl = fs.sub(&gs)?;
        let multiples: Vec<RatVec> =
            (1..=n_bound).map(|n| t.apply(&f.scale(&Rat::int(n as i64)))).collect::<Result<_>>()?;
        for p in &primes {
            r.check(p.contains(&f_rest) || p.contains(&i_concl), || {
                format!("(i) fails at {p} for f = ({f}), g = ({g})")
            });
            r.check(p.contains(&ii_prem) || p.contains(&ii_concl), || {
                format!("(ii) fails at {p} for f = ({f}), g = ({g})")
            });
            let in_p = p.contains(&fs);
            r.check(multiples.iter().all(|m| p.contains(m) == in_p), || format!("(iii) fails at {p} for f = ({f})"));
            let i = p.coord();
            if t.in_support(i) {
                r.check(fs[i].is_zero() == f[i].is_zero(), || format!("(iii) closed form fails at {p} for f = ({f})"));
            }
        }
    }
    Ok(r)
}

/// Values are finite and pointwise sums, scalar multiples, joins and meets of
/// columns are again columns of `Λ`. Skipped when the ambient set is not
/// dense in `P`.
#[allow(clippy::needless_range_loop)] // pairs a < b
pub fn check_almost_finite(table: &ReprTable, lambda: &Lambda) -> Result<Report> {
    if !dense_in_p(lambda.dim(), lambda.ambient())? {
        return Ok(Report::skipped("ambient set is not dense in P"));
    }
    let mut r = Report::new();
    let mut cols = Vec::with_capacity(table.columns.len());
    for (label, col) in table.labels.iter().zip(&table.columns) {
        let finite: Option<Vec<Rat>> = col.iter().map(|v| v.finite().cloned()).collect();
        match finite {
            Some(c) => cols.push(c),
            None => {
                r.fail(format!("column {label} has an infinite value"));
                return Ok(r);
            }
        }
    }
    r.check(true, String::new);
    let half = Rat::new(-1, 2);
    for a in 0..cols.len() {
        let (f, cf) = (&table.vectors[a], &cols[a]);
        r.check(lambda.column(&f.scale(&half))? == pointwise(cf, cf, |x, _| x * &half), || {
            format!("-1/2 Λ({}) is not Λ of -1/2 {}", table.labels[a], table.labels[a])
        });
        for b in a + 1..cols.len() {
            let (g, cg) = (&table.vectors[b], &cols[b]);
            let (la, lb) = (&table.labels[a], &table.labels[b]);
            r.check(lambda.column(&f.add(g)?)? == pointwise(cf, cg, |x, y| x + y), || {
                format!("Λ({la}) + Λ({lb}) is not in L̂")
            });
            r.check(lambda.column(&f.join(g)?)? == pointwise(cf, cg, |x, y| x.max(y).clone()), || {
                format!("Λ({la}) ∨ Λ({lb}) is not in L̂")
            });
            r.check(lambda.column(&f.meet(g)?)? == pointwise(cf, cg, |x, y| x.min(y).clone()), || {
                format!("Λ({la}) ∧ Λ({lb}) is not in L̂")
            });
        }
    }
    Ok(r)
}

/// Preimages of `{< a}`, `{<= a}`, `{> a}`, `{>= a}` at every attained `a`
/// are open. Rays at unattained thresholds have the same preimages as one of
/// these.
pub fn check_continuity(table: &ReprTable, space: &FiniteSpace) -> Result<Report> {
    let mut r = Report::new();
    for (label, col) in table.labels.iter().zip(&table.columns) {
        let attained: BTreeSet<&ExtRat> = col.iter().collect();
        for a in attained {
            let pre = |keep: &dyn Fn(&ExtRat) -> bool| -> Mask {
                col.iter().enumerate().filter(|(_, v)| keep(v)).fold(0, |m, (i, _)| m | 1 << i)
            };
            let rays: [(&str, Mask); 4] =
                [("<", pre(&|v| v < a)), ("<=", pre(&|v| v <= a)), (">", pre(&|v| v > a)), (">=", pre(&|v| v >= a))];
            for (op, mask) in rays {
                r.check(space.is_open(mask), || {
                    format!(
                        "preimage of {{{op} {a}}} under {label} is {} which is not open",
                        format_points(&space.set_of(mask))
                    )
                });
            }
        }
    }
    Ok(r)
}

/// `{P ∈ V* : Λ((|f|/ε)*)(P) = 1}` for member `k`, checked against
/// `{P ∈ V* : |f̂(P)| >= ε}` and for closedness in the space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSet {
    pub set: PointSet,
    pub by_threshold: PointSet,
    pub closed: bool,
}

impl LevelSet {
    pub fn consistent(&self) -> bool {
        self.set == self.by_threshold && self.closed
    }
}

pub fn compact_level_set(f: &RatVec, k: usize, eps: &Rat, lambda: &Lambda) -> Result<LevelSet> {
    if !eps.is_positive() {
        return Err(Error::Negative { what: "eps (must be > 0)", value: eps.to_string() });
    }
    let t = &lambda.family().members()[k];
    let space = lambda.space();
    let block = lambda.block_mask(k);
    let g = t.apply(&f.abs().scale(&(Rat::one() / eps)))?;
    let cg = lambda.column(&g)?;
    let cf = lambda.column(f)?;
    let in_block = |i: usize| block >> i & 1 == 1;
    let pts = space.points();
    let set: PointSet = (0..pts.len()).filter(|&i| in_block(i) && is_one(&cg[i])).map(|i| pts[i]).collect();
    let by_threshold: PointSet =
        (0..pts.len()).filter(|&i| in_block(i) && &cf[i].abs() >= eps).map(|i| pts[i]).collect();
    let closed = space.is_closed(space.mask_of(&set));
    Ok(LevelSet { set, by_threshold, closed })
}

/// Default sample grid of level thresholds.
pub fn eps_grid() -> Vec<Rat> {
    vec![Rat::new(1, 4), Rat::new(1, 2), Rat::one(), Rat::int(2), Rat::int(5)]
}

/// Clause-by-clause outcome of the main theorem pipeline.
#[derive(Clone, Debug)]
pub struct MainReport {
    pub clauses: Vec<(&'static str, Report)>,
    /// The spectrum `X` of the completed family.
    pub x: PointSet,
    /// The block `Y` of `t`.
    pub y: PointSet,
    pub hom: HomCheck,
}

impl MainReport {
    pub fn combined(&self) -> Report {
        let mut r = Report::new();
        for (name, c) in &self.clauses {
            r.absorb_scoped(name, c.clone());
        }
        r.note(format!("Y = {} X = {}", format_points(&self.y), format_points(&self.x)));
        r
    }

    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|(_, c)| c.passed())
    }
}

fn basis_and(dim: usize, extra: &[RatVec]) -> Vec<RatVec> {
    let mut fs: Vec<RatVec> = (0..dim).map(|j| RatVec::basis(dim, j)).collect();
    for f in extra {
        if !fs.contains(f) {
            fs.push(f.clone());
        }
    }
    fs
}

fn labelled(fs: &[RatVec]) -> Vec<(String, RatVec)> {
    fs.iter().enumerate().map(|(i, f)| (format!("f{}", i + 1), f.clone())).collect()
}

/// Completes `{t}` to a maximal family, takes `X = V` and `Y = V*` of `t`,
/// and checks (i) `Λ` is an injective linear lattice homomorphism into
/// almost-finite functions, (ii) separation, (iii) `f* = 1_Y ∧ f` with `Y`
/// open-closed, (iv) some basis column is nonzero at every point, and (v) the
/// level sets agree and are compact.
pub fn audit_theorem_main(t: &WeightTruncation, extra: &[RatVec]) -> Result<MainReport> {
    let family = complete_to_maximal(&MultiTruncation::single("t", t.clone()), "t");
    let x_space = spectrum_v(&family)?;
    let lambda = Lambda::with_generators(&family, &x_space.point_set(), extra)?;
    let space = lambda.space();
    let dim = t.dim();
    let fs = basis_and(dim, extra);

    let hom = check_hom_injective(&fs, &lambda)?;
    let mut c1 = hom.report.clone();
    c1.check(hom.injective, || "Λ is not injective".into());
    let table = lambda_table(&labelled(&fs), &lambda)?;
    c1.absorb(check_almost_finite(&table, &lambda)?);

    let c2 = check_separation(&lambda)?;

    let mut c3 = Report::new();
    for f in &fs {
        c3.absorb(check_trunc_identity(&f.abs(), 0, &lambda)?);
    }

    let mut c4 = Report::new();
    let basis: Vec<Vec<Rat>> = (0..dim).map(|j| lambda.column(&RatVec::basis(dim, j))).collect::<Result<_>>()?;
    for (i, p) in space.points().iter().enumerate() {
        c4.check(basis.iter().any(|c| !c[i].is_zero()), || format!("every basis column vanishes at {p}"));
    }

    let mut c5 = Report::new();
    for f in &fs {
        for eps in eps_grid() {
            let ls = compact_level_set(f, 0, &eps, &lambda)?;
            c5.check(ls.consistent(), || {
                format!(
                    "level sets differ for f = ({f}), eps = {eps}: {} vs {}",
                    format_points(&ls.set),
                    format_points(&ls.by_threshold)
                )
            });
        }
    }

    let y = space.set_of(lambda.block_mask(0));
    Ok(MainReport {
        clauses: vec![("i", c1), ("ii", c2), ("iii", c3), ("iv", c4), ("v", c5)],
        x: space.point_set(),
        y,
        hom,
    })
}

/// For weak `t`: the main pipeline plus `Y = X`, `Λ(f*) = 1 ∧ Λ(f)`, and
/// compact level sets over the threshold grid.
pub fn audit_ball_rep(t: &WeightTruncation, extra: &[RatVec]) -> Result<Report> {
    let cls = classify(t)?;
    if !cls.weak.holds {
        let w = cls.weak.witness.expect("witness for a non-weak truncation");
        return Ok(Report::skipped(format!("t is not weak: f* = 0 for f = ({w})")));
    }
    let main = audit_theorem_main(t, extra)?;
    let mut r = main.combined();
    r.check(main.y == main.x, || format!("Y = {} differs from X = {}", format_points(&main.y), format_points(&main.x)));
    let family = complete_to_maximal(&MultiTruncation::single("t", t.clone()), "t");
    let lambda = Lambda::over_all(&family)?;
    let one = vec![Rat::one(); lambda.points().len()];
    for f in basis_and(t.dim(), extra) {
        let f = f.abs();
        let lhs = lambda.column(&t.apply(&f)?)?;
        let rhs = pointwise(&one, &lambda.column(&f)?, |a, b| a.min(b).clone());
        r.check(lhs == rhs, || format!("Λ(f*) != 1 ∧ Λ(f) for f = ({f})"));
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrongReading {
    Literal,
    Bounded,
}

/// Under the bounded reading (full support on `Q^n`): columns are bounded,
/// `Λ(L)` separates points and vanishes nowhere, and its rank equals `|X|`,
/// so it is all of `Q^X`. The literal reading is never met by a nonzero
/// instance; the report is skipped with the collapse witness.
pub fn audit_strong(t: &WeightTruncation, reading: StrongReading) -> Result<Report> {
    let cls = classify(t)?;
    let flag = match reading {
        StrongReading::Literal => &cls.strong_literal,
        StrongReading::Bounded => &cls.strong_bounded,
    };
    if !flag.holds {
        let w = flag.witness.as_ref().expect("witness for an unmet reading");
        return Ok(Report::skipped(match reading {
            StrongReading::Literal => format!("no n has (nf)* = nf for f = ({w})"),
            StrongReading::Bounded => format!("no n has (f/n)* = f/n for f = ({w})"),
        }));
    }
    let family = complete_to_maximal(&MultiTruncation::single("t", t.clone()), "t");
    let lambda = Lambda::over_all(&family)?;
    let dim = t.dim();
    let basis: Vec<Vec<Rat>> = (0..dim).map(|j| lambda.column(&RatVec::basis(dim, j))).collect::<Result<_>>()?;
    let pts = lambda.points();
    let mut r = Report::new();
    let bound = basis.iter().flatten().map(Rat::abs).max().unwrap_or_else(Rat::zero);
    r.check(basis.iter().flatten().all(|v| v.abs() <= bound), || "unbounded column".into());
    for i in 0..pts.len() {
        r.check(basis.iter().any(|c| !c[i].is_zero()), || format!("Λ(L) vanishes at {}", pts[i]));
        for j in i + 1..pts.len() {
            r.check(basis.iter().any(|c| c[i] != c[j]), || format!("Λ(L) does not separate {} and {}", pts[i], pts[j]));
        }
    }
    let rows: Vec<Vec<Rat>> = (0..pts.len()).map(|i| basis.iter().map(|c| c[i].clone()).collect()).collect();
    let rank = linalg::rank(&rows, dim);
    r.check(rank == pts.len(), || format!("rank of Λ(L) is {rank}, but |X| = {}", pts.len()));
    r.note(format!("rank {rank} = |X|"));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi::complete_to_maximal;
    use crate::report::Status;

    fn v(s: &str) -> RatVec {
        s.parse().unwrap()
    }

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn wt(dim: usize, s: &[usize], w: &[i64]) -> WeightTruncation {
        WeightTruncation::new(dim, s.to_vec(), w.iter().map(|&x| Rat::int(x)).collect()).unwrap()
    }

    fn t0() -> WeightTruncation {
        wt(3, &[0, 1], &[2, 1])
    }

    fn e1() -> MultiTruncation {
        complete_to_maximal(&MultiTruncation::single("t", t0()), "T")
    }

    fn p(i: usize) -> PrimeIdeal {
        PrimeIdeal::new(3, i - 1)
    }

    #[test]
    fn pi_star_examples() {
        assert!(pi_star_contains(&t0(), &p(1), &v("3 0 0")).unwrap());
        assert!(!pi_star_contains(&t0(), &p(1), &v("2 0 0")).unwrap());
        assert!(!pi_star_contains(&t0(), &p(1), &v("0 0 0")).unwrap());
        assert!(matches!(pi_star_contains(&t0(), &p(1), &v("-1 0 0")), Err(Error::Negative { .. })));
    }

    #[test]
    fn witness_examples() {
        assert_eq!(pick_witness_u(&t0(), &p(2)).unwrap(), v("4 2 0"));
        assert_eq!(pick_witness_u(&t0(), &p(3)), Err(Error::NoWitness("P_3".into())));
        assert_eq!(pick_witness_u(&wt(3, &[2], &[1]), &p(3)).unwrap(), v("0 0 2"));
    }

    #[test]
    fn f_hat_examples() {
        let fam = e1();
        let f = v("3 1/2 5");
        let got: Vec<ExtRat> = (1..=3).map(|i| f_hat(&f, &p(i), &fam).unwrap()).collect();
        assert_eq!(got, vec![r("3/2").into(), r("1/2").into(), r("5").into()]);
        assert_eq!(f_hat(&v("0 4 0"), &p(1), &fam).unwrap(), Rat::zero().into());
        assert_eq!(f_hat_with(&f, &p(1), &t0(), &v("5 0 0")).unwrap(), r("3/2"));
        let partial = MultiTruncation::single("t", t0());
        assert_eq!(f_hat(&f, &p(3), &partial), Err(Error::NotInSpectrum("P_3".into())));
    }

    #[test]
    fn threshold_paths_agree_on_negative_and_fractional_entries() {
        let t = wt(3, &[0, 1, 2], &[3, 1, 5]);
        let u = v("7 3 11");
        for f in ["-7/3 1/6 -12", "0 0 0", "12 -12 1/5"] {
            for i in 1..=3 {
                let paths = threshold_paths(&v(f), &p(i), &t, &u).unwrap();
                assert!(paths.agree(), "{f} at P_{i}: {paths:?}");
            }
        }
        assert_eq!(
            threshold_paths(&v("1 1 1"), &p(1), &t, &v("3 1 5")),
            Err(Error::NotAWitness("3 1 5".into(), "P_1".into()))
        );
    }

    #[test]
    fn lambda_table_examples() {
        let lambda = Lambda::over_all(&e1()).unwrap();
        assert_eq!(lambda.column(&RatVec::basis(3, 0)).unwrap(), vec![r("1/2"), r("0"), r("0")]);
        assert!(lambda.column(&RatVec::zeros(3)).unwrap().iter().all(Rat::is_zero));
        assert_eq!(lambda.column(&v("2 1 0")).unwrap(), vec![r("1"), r("1"), r("0")]);
        let tab = lambda_table(&[("f".into(), v("3 1/2 5"))], &lambda).unwrap();
        assert_eq!(tab.value("f", &p(2)), Some(&r("1/2").into()));
    }

    #[test]
    fn hom_injective_examples() {
        let lambda = Lambda::over_all(&e1()).unwrap();
        let fs = vec![RatVec::basis(3, 0), RatVec::basis(3, 1), RatVec::basis(3, 2), v("3 -1/2 5"), v("-1 2 1/3")];
        let h = check_hom_injective(&fs, &lambda).unwrap();
        assert!(h.report.passed() && h.linear && h.lattice && h.injective, "{:?}", h.report);

        let partial = Lambda::over_all(&MultiTruncation::single("t", t0())).unwrap();
        let h = check_hom_injective(&[RatVec::basis(3, 2)], &partial).unwrap();
        assert!(!h.injective);
        assert_eq!(h.kernel_witness, Some(RatVec::basis(3, 2)));
        assert_eq!(h.maximal_witness, Some(RatVec::basis(3, 2)));
        assert_eq!(h.report.status(), Status::Skip);
        assert!(h.report.detail().contains("not maximal"));

        let h = check_hom_injective(&[RatVec::zeros(3)], &lambda).unwrap();
        assert!(h.report.passed());
    }

    #[test]
    fn trunc_identity_examples() {
        let lambda = Lambda::over_all(&e1()).unwrap();
        let f = v("3 1/2 5");
        assert!(check_trunc_identity(&f, 0, &lambda).unwrap().passed());
        assert_eq!(lambda.column(&t0().apply(&f).unwrap()).unwrap(), vec![r("1"), r("1/2"), r("0")]);
        assert!(check_trunc_identity(&RatVec::zeros(3), 0, &lambda).unwrap().passed());
        let w = v("2 1 0");
        assert_eq!(lambda.column(&t0().apply(&w).unwrap()).unwrap(), vec![r("1"), r("1"), r("0")]);
    }

    #[test]
    fn one_zero_examples() {
        let lambda = Lambda::over_all(&e1()).unwrap();
        let u = v("3 0 0");
        assert_eq!(lambda.column(&t0().apply(&u).unwrap()).unwrap()[0], Rat::one());
        assert!(lambda.column(&v("0 7 3")).unwrap()[0].is_zero());
        let other = e1().members()[1].clone();
        assert!(lambda.column(&other.apply(&v("1 1 1")).unwrap()).unwrap()[0].is_zero());
        let mut s = Sampler::new(3);
        for i in [1, 2] {
            assert!(check_one_zero(0, &p(i), &lambda, &mut s, 10).unwrap().passed());
        }
        assert!(check_one_zero(1, &p(3), &lambda, &mut s, 10).unwrap().passed());
    }

    #[test]
    fn witness_n_examples() {
        let w = witness_n(&t0(), &v("1 0 0")).unwrap();
        assert_eq!((w.m.clone(), w.n.clone()), (3.into(), 6.into()));
        assert!(w.proof_n_valid);
        let w = witness_n(&t0(), &v("3 0 0")).unwrap();
        assert_eq!((w.m, w.n), (1.into(), 2.into()));
        let w = witness_n(&t0(), &v("0 0 1")).unwrap();
        assert_eq!((w.m, w.n), (1.into(), 2.into()));
        assert_eq!(witness_n(&t0(), &RatVec::zeros(3)), Err(Error::ZeroVector));
    }

    #[test]
    fn witness_n_beyond_proof_choice() {
        // m = 2 comes from coordinate 2, but coordinate 1 needs n/10 > 2
        let f = v("1/10 1 0");
        let w = witness_n(&wt(3, &[0, 1], &[2, 1]), &f).unwrap();
        assert_eq!(w.m, 2.into());
        assert!(!w.proof_n_valid);
        assert_eq!(w.n, 21.into());
    }

    #[test]
    fn separation_examples() {
        let lambda = Lambda::over_all(&e1()).unwrap();
        let rep = check_separation(&lambda).unwrap();
        assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn lemma_ball_examples() {
        let t = t0();
        let pairs = vec![(v("3 0 0"), v("0 5 0")), (v("1 2 3"), v("1 2 3")), (v("1 0 0"), v("0 0 0"))];
        assert!(check_lemma_ball(&t, &pairs, 10).unwrap().passed());
        let fs = t.apply(&v("3 0 0")).unwrap();
        let g = v("0 5 0");
        let concl = t.apply(&g).unwrap().sub(&g.meet(&fs).unwrap()).unwrap();
        assert_eq!(concl, v("0 1 0"));
    }

    #[test]
    fn almost_finite_examples() {
        let lambda = Lambda::over_all(&e1()).unwrap();
        let tab = lambda_table(&[("f".into(), v("3 1/2 5")), ("z".into(), RatVec::zeros(3))], &lambda).unwrap();
        assert!(check_almost_finite(&tab, &lambda).unwrap().passed());
        let sparse: PointSet = [p(1), p(2)].into_iter().collect();
        let lambda = Lambda::new(&e1(), &sparse).unwrap();
        let tab = lambda_table(&[("f".into(), v("3 1/2 5"))], &lambda).unwrap();
        assert_eq!(check_almost_finite(&tab, &lambda).unwrap().status(), Status::Skip);
    }

    #[test]
    fn continuity_examples() {
        let lambda = Lambda::over_all(&e1()).unwrap();
        let tab = lambda_table(&[("f".into(), v("3 1/2 5")), ("c".into(), v("2 1 1"))], &lambda).unwrap();
        assert!(check_continuity(&tab, lambda.space()).unwrap().passed());
        let single = Lambda::over_all(&MultiTruncation::single("t", wt(1, &[0], &[1]))).unwrap();
        let tab = lambda_table(&[("f".into(), v("7"))], &single).unwrap();
        assert!(check_continuity(&tab, single.space()).unwrap().passed());
    }

    #[test]
    fn level_set_examples() {
        let lambda = Lambda::over_all(&e1()).unwrap();
        let f = v("3 1/2 5");
        let one = compact_level_set(&f, 0, &Rat::one(), &lambda).unwrap();
        assert!(one.consistent());
        assert_eq!(one.set, [p(1)].into_iter().collect());
        let quarter = compact_level_set(&f, 0, &r("1/4"), &lambda).unwrap();
        assert_eq!(quarter.set, [p(1), p(2)].into_iter().collect());
        assert!(compact_level_set(&f, 0, &Rat::int(100), &lambda).unwrap().set.is_empty());
        assert!(compact_level_set(&f, 0, &Rat::zero(), &lambda).is_err());
    }

    #[test]
    fn main_theorem_examples() {
        let m = audit_theorem_main(&t0(), &[v("3 1/2 5")]).unwrap();
        assert!(m.all_pass(), "{:?}", m.combined());
        assert_eq!(m.y, [p(1), p(2)].into_iter().collect());
        assert_ne!(m.y, m.x);

        let full = wt(2, &[0, 1], &[1, 3]);
        let m = audit_theorem_main(&full, &[]).unwrap();
        assert!(m.all_pass());
        assert_eq!(m.y, m.x);

        let one = wt(1, &[0], &[1]);
        let m = audit_theorem_main(&one, &[v("5")]).unwrap();
        assert!(m.all_pass());
        let lambda = Lambda::over_all(&MultiTruncation::single("t", one)).unwrap();
        assert_eq!(lambda.column(&v("5")).unwrap(), vec![r("5")]);
    }

    #[test]
    fn ball_rep_examples() {
        assert!(audit_ball_rep(&wt(3, &[0, 1, 2], &[2, 1, 1]), &[]).unwrap().passed());
        let skip = audit_ball_rep(&t0(), &[]).unwrap();
        assert_eq!(skip.status(), Status::Skip);
        assert!(skip.detail().contains("0 0 1"));
        assert!(audit_ball_rep(&wt(1, &[0], &[1]), &[]).unwrap().passed());
    }

    #[test]
    fn strong_examples() {
        let full = wt(2, &[0, 1], &[2, 1]);
        let rep = audit_strong(&full, StrongReading::Bounded).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let lit = audit_strong(&full, StrongReading::Literal).unwrap();
        assert_eq!(lit.status(), Status::Skip);
        assert!(lit.detail().contains("4 2"));
        assert!(audit_strong(&wt(1, &[0], &[1]), StrongReading::Bounded).unwrap().passed());
        assert_eq!(audit_strong(&t0(), StrongReading::Bounded).unwrap().status(), Status::Skip);
    }
}
