//! Truncations on `Q^n`.
//!
//! A truncation sends each positive vector `f` to a positive `f*` with
//! `f ∧ g* <= f* <= f` and with no nonzero `f` fixed by all multiples.
//! On `Q^n` the concrete instances are [`WeightTruncation`]s,
//! `f*_i = min(f_i, w_i)` on a support `S` and `0` elsewhere. Arbitrary maps
//! can be wrapped as a [`BlackBoxTruncation`], whose axioms can only be
//! sampled.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Rat, RatVec};
use crate::sample::{Sampler, Sampling};

/// Default bound on `n` when `(nf)* = nf` can only be scanned.
pub const DEFAULT_N_MAX: u64 = 64;

pub trait Truncation: Send + Sync {
    fn dim(&self) -> usize;

    /// Evaluates the map on a nonnegative vector of matching dimension.
    fn eval(&self, f: &RatVec) -> RatVec;

    /// `Some` when the map is known in closed form.
    fn as_weight(&self) -> Option<&WeightTruncation> {
        None
    }

    fn label(&self) -> String;

    /// The truncation is only defined on the positive cone.
    fn apply(&self, f: &RatVec) -> Result<RatVec> {
        if f.dim() != self.dim() {
            return Err(Error::DimMismatch { left: self.dim(), right: f.dim() });
        }
        f.require_nonneg("truncation argument")?;
        let r = self.eval(f);
        if r.dim() != self.dim() {
            return Err(Error::DimMismatch { left: self.dim(), right: r.dim() });
        }
        Ok(r)
    }
}

/// `f*_i = min(f_i, w_i)` for `i` in the support, `0` off it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightTruncation {
    dim: usize,
    support: Vec<usize>,
    weights: Vec<Rat>,
}

impl WeightTruncation {
    /// `support` holds 0-based coordinates in strictly increasing order;
    /// `weights[k]` belongs to `support[k]`.
    pub fn new(dim: usize, support: Vec<usize>, weights: Vec<Rat>) -> Result<WeightTruncation> {
        if dim == 0 {
            return Err(Error::InvalidTruncation("dimension must be positive".into()));
        }
        if support.is_empty() {
            return Err(Error::InvalidTruncation("empty support (the zero map is not a truncation)".into()));
        }
        if support.len() != weights.len() {
            return Err(Error::InvalidTruncation(format!(
                "{} support indices but {} weights",
                support.len(),
                weights.len()
            )));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidTruncation("support indices must be strictly increasing".into()));
        }
        if let Some(&i) = support.iter().find(|&&i| i >= dim) {
            return Err(Error::InvalidTruncation(format!("support index {} exceeds dim {}", i + 1, dim)));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidTruncation(format!("weight {w} is not positive")));
        }
        Ok(WeightTruncation { dim, support, weights })
    }

    /// Support `{0..dim}` with the given weights.
    pub fn full(weights: Vec<Rat>) -> Result<WeightTruncation> {
        let dim = weights.len();
        WeightTruncation::new(dim, (0..dim).collect(), weights)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn weight_at(&self, i: usize) -> Option<&Rat> {
        self.support.binary_search(&i).ok().map(|k| &self.weights[k])
    }

    pub fn in_support(&self, i: usize) -> bool {
        self.support.binary_search(&i).is_ok()
    }

    pub fn has_full_support(&self) -> bool {
        self.support.len() == self.dim
    }

    /// Weights padded with zeros off the support.
    pub fn weight_vector(&self) -> RatVec {
        let mut v = vec![Rat::zero(); self.dim];
        for (&i, w) in self.support.iter().zip(&self.weights) {
            v[i] = w.clone();
        }
        RatVec::new(v)
    }

    pub fn uncovered(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| !self.in_support(i)).collect()
    }
}

impl fmt::Debug for WeightTruncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl Truncation for WeightTruncation {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, f: &RatVec) -> RatVec {
        let mut out = vec![Rat::zero(); self.dim];
        for (&i, w) in self.support.iter().zip(&self.weights) {
            out[i] = f[i].clone().min(w.clone());
        }
        RatVec::new(out)
    }

    fn as_weight(&self) -> Option<&WeightTruncation> {
        Some(self)
    }

    fn label(&self) -> String {
        let s: Vec<String> = self.support.iter().map(|i| (i + 1).to_string()).collect();
        let w: Vec<String> = self.weights.iter().map(Rat::to_string).collect();
        format!("support={} weights={}", s.join(","), w.join(","))
    }
}

pub type TruncationMap = Arc<dyn Fn(&RatVec) -> RatVec + Send + Sync>;

/// A programmatic candidate map `L+ -> L+`. Must be a pure function.
#[derive(Clone)]
pub struct BlackBoxTruncation {
    dim: usize,
    name: String,
    map: TruncationMap,
}

impl BlackBoxTruncation {
    /// Rejects maps that vanish on every probe (basis vectors, the all-ones
    /// vector and seeded samples) before any axiom is examined.
    pub fn new(dim: usize, name: impl Into<String>, map: TruncationMap) -> Result<BlackBoxTruncation> {
        if dim == 0 {
            return Err(Error::InvalidTruncation("dimension must be positive".into()));
        }
        let t = BlackBoxTruncation { dim, name: name.into(), map };
        let mut probes: Vec<RatVec> = (0..dim).map(|i| RatVec::basis(dim, i)).collect();
        probes.push(RatVec::constant(dim, Rat::one()));
        probes.extend(Sampler::new(0).nonneg_vecs(dim, 32));
        let mut nonzero = false;
        for p in &probes {
            if !t.apply(p)?.is_zero() {
                nonzero = true;
                break;
            }
        }
        if !nonzero {
            return Err(Error::InvalidTruncation(format!(
                "{} vanishes on all {} probes; a truncation must be a nonzero function",
                t.name,
                probes.len()
            )));
        }
        Ok(t)
    }
}

impl Truncation for BlackBoxTruncation {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, f: &RatVec) -> RatVec {
        (self.map)(f)
    }

    fn label(&self) -> String {
        format!("black-box {}", self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// `f ∧ g* <= f* <= f`
    A,
    /// `f ∧ g* = f* ∧ g`
    APrime,
    /// `(nf)* = nf` for all `n` forces `f = 0`
    B,
    Weak,
    StrongLiteral,
    StrongBounded,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::A => "a",
            Axiom::APrime => "a'",
            Axiom::B => "b",
            Axiom::Weak => "w",
            Axiom::StrongLiteral => "s-literal",
            Axiom::StrongBounded => "s-bounded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Decided exactly.
    Pass,
    /// No violation among the given number of samples.
    SampledPass(usize),
    /// The vectors re-fail when replayed through [`AxiomReport::replay`].
    Fail { counterexample: Vec<RatVec>, reason: String },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub verdict: Verdict,
    /// For axiom (b): the smallest `n` with `(nf)* != nf`.
    pub witness_n: Option<BigInt>,
    /// Scan bound used for axiom (b) on black boxes.
    pub n_max: Option<u64>,
    pub sampling: Option<Sampling>,
}

impl AxiomReport {
    fn new(axiom: Axiom, verdict: Verdict) -> AxiomReport {
        AxiomReport { axiom, verdict, witness_n: None, n_max: None, sampling: None }
    }

    /// Re-evaluates a failing counterexample; `true` when it still fails.
    pub fn replay(&self, t: &dyn Truncation) -> Result<bool> {
        let Verdict::Fail { counterexample, .. } = &self.verdict else {
            return Ok(false);
        };
        match (self.axiom, counterexample.as_slice()) {
            (Axiom::A, [f, g]) => Ok(!axiom_a_holds(t, f, g)?),
            (Axiom::APrime, [f, g]) => Ok(!axiom_a_prime_holds(t, f, g)?),
            (Axiom::B, [f]) => {
                let n_max = self.n_max.unwrap_or(DEFAULT_N_MAX);
                Ok(!f.is_zero() && first_unfixed_multiple(t, f, n_max)?.is_none())
            }
            _ => Err(Error::Unsupported(format!("no replay for axiom {}", self.axiom))),
        }
    }
}

/// `f ∧ g* <= f* <= f` on one pair.
pub fn axiom_a_holds(t: &dyn Truncation, f: &RatVec, g: &RatVec) -> Result<bool> {
    let fs = t.apply(f)?;
    let gs = t.apply(g)?;
    Ok(f.meet(&gs)?.le(&fs)? && fs.le(f)? && fs.is_nonneg())
}

/// `f ∧ g* = f* ∧ g` on one pair.
pub fn axiom_a_prime_holds(t: &dyn Truncation, f: &RatVec, g: &RatVec) -> Result<bool> {
    let fs = t.apply(f)?;
    let gs = t.apply(g)?;
    Ok(f.meet(&gs)? == fs.meet(g)?)
}

/// Checks (a) and, separately, (a′) over the samples closed under swapping
/// each pair. Returns the (a) report and the (a′) report.
///
/// For weight truncations (a) is decided exactly: on `i` in the support it
/// reads `min(f_i, g_i, w_i) <= min(f_i, w_i) <= f_i`, and off the support
/// `0 <= 0 <= f_i`, both true whenever `w_i > 0` and `f >= 0`. The samples
/// are still evaluated as a cross-check.
pub fn check_axiom_a(t: &dyn Truncation, samples: &[(RatVec, RatVec)]) -> Result<(AxiomReport, AxiomReport)> {
    for (f, g) in samples {
        if f.dim() != t.dim() || g.dim() != t.dim() {
            return Err(Error::DimMismatch { left: t.dim(), right: f.dim().max(g.dim()) });
        }
        f.require_nonneg("sample f")?;
        g.require_nonneg("sample g")?;
    }
    let mut fail_a = None;
    let mut fail_ap = None;
    for (f, g) in samples {
        for (x, y) in [(f, g), (g, f)] {
            if fail_a.is_none() && !axiom_a_holds(t, x, y)? {
                fail_a = Some(vec![x.clone(), y.clone()]);
            }
            if fail_ap.is_none() && !axiom_a_prime_holds(t, x, y)? {
                fail_ap = Some(vec![x.clone(), y.clone()]);
            }
        }
    }
    let exact = t.as_weight().is_some();
    let verdict = |fail: Option<Vec<RatVec>>, what: &str| match fail {
        Some(cx) => Verdict::Fail { counterexample: cx, reason: format!("{what} violated") },
        None if exact => Verdict::Pass,
        None => Verdict::SampledPass(2 * samples.len()),
    };
    Ok((
        AxiomReport::new(Axiom::A, verdict(fail_a, "f ∧ g* <= f* <= f")),
        AxiomReport::new(Axiom::APrime, verdict(fail_ap, "f ∧ g* = f* ∧ g")),
    ))
}

/// Smallest `n` in `1..=n_max` with `(nf)* != nf`.
pub fn first_unfixed_multiple(t: &dyn Truncation, f: &RatVec, n_max: u64) -> Result<Option<u64>> {
    for n in 1..=n_max {
        let nf = f.scale(&Rat::int(n as i64));
        if t.apply(&nf)? != nf {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Closed-form smallest `n >= 1` with `(nf)* != nf` for a weight truncation,
/// or `None` when `f = 0`. Off the support any positive coordinate breaks at
/// `n = 1`; on it, `n f_i > w_i` first holds at `floor(w_i / f_i) + 1`.
pub fn weight_breaking_n(t: &WeightTruncation, f: &RatVec) -> Option<BigInt> {
    (0..t.dim())
        .filter(|&i| f[i].is_positive())
        .map(|i| match t.weight_at(i) {
            Some(w) => (w / &f[i]).floor().numer() + 1,
            None => BigInt::one(),
        })
        .min()
}

pub fn check_axiom_b(t: &dyn Truncation, f: &RatVec, n_max: u64) -> Result<AxiomReport> {
    if n_max < 1 {
        return Err(Error::Unsupported("n_max must be at least 1".into()));
    }
    if f.dim() != t.dim() {
        return Err(Error::DimMismatch { left: t.dim(), right: f.dim() });
    }
    f.require_nonneg("f")?;
    if let Some(w) = t.as_weight() {
        let mut report = AxiomReport::new(Axiom::B, Verdict::Pass);
        if let Some(n) = weight_breaking_n(w, f) {
            // Replay the closed form at n and n - 1.
            let at = |k: &BigInt| -> Result<bool> {
                let nf = f.scale(&Rat::from_bigint(k.clone()));
                Ok(t.apply(&nf)? == nf)
            };
            if at(&n)? || (n > BigInt::one() && !at(&(&n - 1))?) {
                return Err(Error::Fault(format!("axiom (b) closed form wrong at n = {n} for {f:?}")));
            }
            report.witness_n = Some(n);
        }
        return Ok(report);
    }
    let mut report = AxiomReport::new(Axiom::B, Verdict::SampledPass(n_max as usize));
    report.n_max = Some(n_max);
    if f.is_zero() {
        return Ok(report);
    }
    match first_unfixed_multiple(t, f, n_max)? {
        Some(n) => report.witness_n = Some(n.into()),
        None => {
            report.verdict = Verdict::Fail {
                counterexample: vec![f.clone()],
                reason: format!("(nf)* = nf for n = 1..={n_max} with f != 0"),
            };
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub holds: bool,
    /// Counterexample when `holds` is false.
    pub witness: Option<RatVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub weak: Flag,
    /// Every `f >= 0` has some `n` with `(nf)* = nf`.
    pub strong_literal: Flag,
    /// Every `f >= 0` has some `n` with `(f/n)* = f/n`.
    pub strong_bounded: Flag,
}

/// Classifies a weight truncation under (w) and both readings of (s).
///
/// * weak iff the support is everything: `e_j* = 0` for `j` off the support.
/// * strong (literal) never holds: for `f = 2w` every multiple `n f` exceeds
///   `w` on the whole support.
/// * strong (bounded) iff the support is everything: then
///   `n >= max f_i / w_i` works; off the support `(e_j / n)* = 0`.
pub fn classify(t: &WeightTruncation) -> Result<Classification> {
    let dim = t.dim();
    let off = t.uncovered();

    // witness search for (w) over the basis
    let annihilated = (0..dim).map(|j| RatVec::basis(dim, j)).find(|e| t.eval(e).is_zero());
    if annihilated.is_some() != !off.is_empty() {
        return Err(Error::Fault(format!("weak closed form disagrees with basis search for {t:?}")));
    }
    let weak = Flag { holds: off.is_empty(), witness: annihilated.clone() };

    let two_w = t.weight_vector().scale(&Rat::int(2));
    if first_unfixed_multiple(t, &two_w, DEFAULT_N_MAX)? != Some(1) {
        return Err(Error::Fault(format!("2w is fixed by some multiple under {t:?}")));
    }
    let strong_literal = Flag { holds: false, witness: Some(two_w) };

    let strong_bounded = Flag { holds: off.is_empty(), witness: annihilated };
    Ok(Classification { weak, strong_literal, strong_bounded })
}

/// Refuses anything that is not known in closed form.
pub fn classify_dyn(t: &dyn Truncation) -> Result<Classification> {
    match t.as_weight() {
        Some(w) => classify(w),
        None => Err(Error::Unsupported(format!("classification of {} is not decidable from samples", t.label()))),
    }
}

/// Smallest `n` with `(f/n)* = f/n`, if the support is full (bounded reading).
pub fn bounded_fixing_n(t: &WeightTruncation, f: &RatVec) -> Option<u64> {
    if !t.has_full_support() {
        return if f.is_zero() { Some(1) } else { None };
    }
    let mut n = Rat::one();
    for (i, w) in t.weights().iter().enumerate() {
        n = n.max((&f[i] / w).ceil());
    }
    n.numer().to_u64()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffReport {
    /// `(f ∧ g)* = f* ∧ g*`
    pub meet: bool,
    /// `(f ∨ g)* = f* ∨ g*`
    pub join: bool,
    /// `|f* - g*| <= |f - g|*`
    pub lipschitz: bool,
}

impl BirkhoffReport {
    pub fn all(&self) -> bool {
        self.meet && self.join && self.lipschitz
    }
}

pub fn birkhoff_identities(t: &dyn Truncation, f: &RatVec, g: &RatVec) -> Result<BirkhoffReport> {
    let fs = t.apply(f)?;
    let gs = t.apply(g)?;
    let meet = t.apply(&f.meet(g)?)? == fs.meet(&gs)?;
    let join = t.apply(&f.join(g)?)? == fs.join(&gs)?;
    let lipschitz = fs.sub(&gs)?.abs().le(&t.apply(&f.sub(g)?.abs())?)?;
    Ok(BirkhoffReport { meet, join, lipschitz })
}
