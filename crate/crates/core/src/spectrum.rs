//! Prime ideals of `Q^n`, values, the hull-kernel topology on finite sets of
//! primes, and the spectrum of a multi-truncation.
//!
//! Every proper prime ideal of `Q^n` is a coordinate kernel
//! `P_i = {f : f_i = 0}`. A set of primes carries the topology generated by
//! the base sets `[Q]_f = {P in Q : f not in P}`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact::RatVec;
use crate::multi::MultiTruncation;
use crate::report::Report;
use crate::sample::generator_grid;
use crate::truncation::{Truncation, WeightTruncation};

/// Largest space whose open sets are materialized.
pub const MAX_MATERIALIZED_POINTS: usize = 16;
const MAX_POINTS: usize = 64;
const MAX_IDEAL_SCAN_DIM: usize = 12;

/// The ideal `I_Z = {f : f_i = 0 for all i in Z}` of `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealSubset {
    dim: usize,
    zero_set: BTreeSet<usize>,
}

impl IdealSubset {
    pub fn new(dim: usize, zero_set: impl IntoIterator<Item = usize>) -> Result<IdealSubset> {
        let zero_set: BTreeSet<usize> = zero_set.into_iter().collect();
        if let Some(&i) = zero_set.iter().find(|&&i| i >= dim) {
            return Err(Error::DimMismatch { left: dim, right: i + 1 });
        }
        Ok(IdealSubset { dim, zero_set })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn zero_set(&self) -> &BTreeSet<usize> {
        &self.zero_set
    }

    pub fn contains(&self, f: &RatVec) -> bool {
        self.zero_set.iter().all(|&i| f[i].is_zero())
    }

    /// `I_∅ = L` is the only improper one.
    pub fn is_proper(&self) -> bool {
        !self.zero_set.is_empty()
    }

    /// `self ⊇ other`, i.e. the zero-set of `self` is contained in that of
    /// `other`.
    pub fn includes(&self, other: &IdealSubset) -> bool {
        self.zero_set.is_subset(&other.zero_set)
    }

    /// All `2^n` ideal subsets, `I_∅` first.
    pub fn all(dim: usize) -> impl Iterator<Item = IdealSubset> {
        (0u64..1 << dim)
            .map(move |bits| IdealSubset { dim, zero_set: (0..dim).filter(|&i| bits >> i & 1 == 1).collect() })
    }
}

/// `P_i = {f : f_i = 0}`, stored with a 0-based coordinate and displayed
/// 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    dim: usize,
    coord: usize,
}

impl PrimeIdeal {
    pub fn new(dim: usize, coord: usize) -> PrimeIdeal {
        assert!(coord < dim, "coordinate out of range");
        PrimeIdeal { dim, coord }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coord(&self) -> usize {
        self.coord
    }

    pub fn contains(&self, f: &RatVec) -> bool {
        f[self.coord].is_zero()
    }

    pub fn as_ideal(&self) -> IdealSubset {
        IdealSubset { dim: self.dim, zero_set: BTreeSet::from([self.coord]) }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_{}", self.coord + 1)
    }
}

pub type PointSet = BTreeSet<PrimeIdeal>;

pub fn format_points(points: &PointSet) -> String {
    if points.is_empty() {
        return "{}".into();
    }
    let v: Vec<String> = points.iter().map(PrimeIdeal::to_string).collect();
    format!("{{{}}}", v.join(","))
}

/// `{P_1, ..., P_n}`.
pub fn enumerate_primes(dim: usize) -> Vec<PrimeIdeal> {
    (0..dim).map(|i| PrimeIdeal::new(dim, i)).collect()
}

pub fn all_primes(dim: usize) -> PointSet {
    enumerate_primes(dim).into_iter().collect()
}

/// Primality by the disjointness test on the standard basis: for `i != j`,
/// `e_i ∧ e_j = 0`, so a prime must contain one of them. The result is
/// checked against the closed form `|Z| = 1`.
pub fn is_prime(ideal: &IdealSubset) -> Result<bool> {
    if !ideal.is_proper() {
        return Err(Error::ImproperIdeal);
    }
    let n = ideal.dim;
    let mut prime = true;
    'pairs: for i in 0..n {
        for j in i + 1..n {
            let (ei, ej) = (RatVec::basis(n, i), RatVec::basis(n, j));
            debug_assert!(ei.meet(&ej)?.is_zero());
            if !ideal.contains(&ei) && !ideal.contains(&ej) {
                prime = false;
                break 'pairs;
            }
        }
    }
    if prime != (ideal.zero_set.len() == 1) {
        return Err(Error::Fault(format!("basis primality test disagrees for Z = {:?}", ideal.zero_set)));
    }
    Ok(prime)
}

/// Scans every proper ideal subset and checks that the primes are exactly
/// [`enumerate_primes`]. Exponential; limited to small dimensions.
pub fn verify_prime_enumeration(dim: usize) -> Result<()> {
    if dim > MAX_IDEAL_SCAN_DIM {
        return Err(Error::TooLarge { points: dim, limit: MAX_IDEAL_SCAN_DIM });
    }
    let mut found = Vec::new();
    for ideal in IdealSubset::all(dim).filter(IdealSubset::is_proper) {
        if is_prime(&ideal)? {
            found.push(ideal);
        }
    }
    let expected: Vec<IdealSubset> = enumerate_primes(dim).iter().map(PrimeIdeal::as_ideal).collect();
    found.sort_by(|a, b| a.zero_set.cmp(&b.zero_set));
    if found != expected {
        return Err(Error::Fault(format!("prime scan found {} primes, expected {dim}", found.len())));
    }
    Ok(())
}

/// `Val(f)`: primes maximal with respect to not containing `f`.
///
/// Closed form `{P_i : f_i != 0}`, confirmed by an inclusion scan over the
/// primes: none of the returned primes is strictly included in another prime
/// omitting `f`.
pub fn values(f: &RatVec) -> Result<PointSet> {
    if f.is_zero() {
        return Err(Error::ZeroVector);
    }
    let primes = enumerate_primes(f.dim());
    let omitting: Vec<&PrimeIdeal> = primes.iter().filter(|p| !p.contains(f)).collect();
    let maximal: PointSet = omitting
        .iter()
        .filter(|p| {
            let ip = p.as_ideal();
            !omitting.iter().any(|q| *q != **p && q.as_ideal().includes(&ip))
        })
        .map(|p| **p)
        .collect();
    let closed: PointSet = f.support().into_iter().map(|i| PrimeIdeal::new(f.dim(), i)).collect();
    if maximal != closed {
        return Err(Error::Fault(format!("values closed form disagrees for {f:?}")));
    }
    Ok(closed)
}

/// `[Q]_f = {P in Q : f not in P}`.
pub fn base_set(q: &PointSet, f: &RatVec) -> PointSet {
    q.iter().filter(|p| !p.contains(f)).copied().collect()
}

/// `Q* = ⋃_{f >= 0} [Q]_{f*}` in closed form `{P_i in Q : i in support}`,
/// confirmed against the union over the generator grid.
pub fn q_star(q: &PointSet, t: &WeightTruncation) -> Result<PointSet> {
    let closed: PointSet = q.iter().filter(|p| t.in_support(p.coord)).copied().collect();
    let mut by_grid = PointSet::new();
    for g in generator_grid(t.dim(), &[t.weight_vector()]) {
        let gs = t.apply(&g)?;
        by_grid.extend(base_set(q, &gs));
    }
    if by_grid != closed {
        return Err(Error::Fault(format!("Q* closed form disagrees with grid union for {t:?}")));
    }
    Ok(closed)
}

/// `Q_T` as the disjoint union of the `Q*`, one block per member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partitioned {
    pub blocks: Vec<PointSet>,
    pub union: PointSet,
}

pub fn q_t(q: &PointSet, family: &MultiTruncation) -> Result<Partitioned> {
    let blocks = family.members().iter().map(|t| q_star(q, t)).collect::<Result<Vec<_>>>()?;
    let union = blocks.iter().flatten().copied().collect();
    Ok(Partitioned { blocks, union })
}

pub type Mask = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub member: usize,
    pub label: String,
    pub mask: Mask,
}

/// A base set `[X]_{g*}` for member `member` and generator `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSet {
    pub label: String,
    pub member: usize,
    pub generator: RatVec,
    pub mask: Mask,
}

/// A finite set of primes with the base `{[X]_{g*}}` and the member blocks.
/// Open sets are unions of base sets; the full table is built on first use.
#[derive(Debug)]
pub struct FiniteSpace {
    dim: usize,
    points: Vec<PrimeIdeal>,
    blocks: Vec<Block>,
    base: Vec<BaseSet>,
    opens: OnceLock<Vec<Mask>>,
}

impl Clone for FiniteSpace {
    fn clone(&self) -> Self {
        FiniteSpace {
            dim: self.dim,
            points: self.points.clone(),
            blocks: self.blocks.clone(),
            base: self.base.clone(),
            opens: OnceLock::new(),
        }
    }
}

impl FiniteSpace {
    /// The space `Q_T` for an ambient set `Q`, with base sets generated by
    /// the grid (basis vectors, all-ones, member weight vectors, `extra`, and
    /// pairwise sums) under every member.
    pub fn over(ambient: &PointSet, family: &MultiTruncation, extra: &[RatVec]) -> Result<FiniteSpace> {
        let part = q_t(ambient, family)?;
        if part.union.len() > MAX_POINTS {
            return Err(Error::TooLarge { points: part.union.len(), limit: MAX_POINTS });
        }
        let points: Vec<PrimeIdeal> = part.union.iter().copied().collect();
        let index = |p: &PrimeIdeal| points.binary_search(p).expect("point of Q_T");
        let to_mask = |s: &PointSet| s.iter().fold(0, |m, p| m | 1 << index(p));

        let blocks = part
            .blocks
            .iter()
            .enumerate()
            .map(|(k, b)| Block { member: k, label: family.labels()[k].clone(), mask: to_mask(b) })
            .collect();

        let mut gens: Vec<RatVec> = family.members().iter().map(WeightTruncation::weight_vector).collect();
        gens.extend(extra.iter().filter(|g| g.is_nonneg()).cloned());
        let grid = generator_grid(family.dim(), &gens);
        let mut base: Vec<BaseSet> = Vec::new();
        for (k, (label, t)) in family.iter().enumerate() {
            for g in &grid {
                let gs = t.apply(g)?;
                let set = base_set(&part.union, &gs);
                if set.is_empty() {
                    continue;
                }
                let mask = to_mask(&set);
                if base.iter().any(|b| b.mask == mask) {
                    continue;
                }
                base.push(BaseSet { label: format!("{label}[{g}]"), member: k, generator: g.clone(), mask });
            }
        }
        Ok(FiniteSpace { dim: family.dim(), points, blocks, base, opens: OnceLock::new() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[PrimeIdeal] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn base(&self) -> &[BaseSet] {
        &self.base
    }

    pub fn point_set(&self) -> PointSet {
        self.points.iter().copied().collect()
    }

    pub fn full_mask(&self) -> Mask {
        if self.points.len() == 64 {
            Mask::MAX
        } else {
            (1 << self.points.len()) - 1
        }
    }

    pub fn index_of(&self, p: &PrimeIdeal) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Points outside the space are ignored.
    pub fn mask_of(&self, set: &PointSet) -> Mask {
        set.iter().filter_map(|p| self.index_of(p)).fold(0, |m, i| m | 1 << i)
    }

    pub fn set_of(&self, mask: Mask) -> PointSet {
        (0..self.points.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.points[i]).collect()
    }

    pub fn block_of(&self, p: &PrimeIdeal) -> Option<&Block> {
        let i = self.index_of(p)?;
        self.blocks.iter().find(|b| b.mask >> i & 1 == 1)
    }

    /// A set is open iff it is the union of the base sets it contains.
    pub fn is_open(&self, mask: Mask) -> bool {
        let inner = self.base.iter().filter(|b| b.mask & !mask == 0).fold(0, |m, b| m | b.mask);
        inner == mask
    }

    pub fn is_closed(&self, mask: Mask) -> bool {
        self.is_open(self.full_mask() & !mask)
    }

    /// All open sets, sorted. Built once.
    pub fn opens(&self) -> Result<&[Mask]> {
        if self.points.len() > MAX_MATERIALIZED_POINTS {
            return Err(Error::TooLarge { points: self.points.len(), limit: MAX_MATERIALIZED_POINTS });
        }
        Ok(self.opens.get_or_init(|| {
            let mut opens = BTreeSet::from([0 as Mask]);
            for b in &self.base {
                let grown: Vec<Mask> = opens.iter().map(|o| o | b.mask).collect();
                opens.extend(grown);
            }
            opens.into_iter().collect()
        }))
    }

    pub fn closed_sets(&self) -> Result<Vec<Mask>> {
        let full = self.full_mask();
        let mut closed: Vec<Mask> = self.opens()?.iter().map(|o| full & !o).collect();
        closed.sort_unstable();
        Ok(closed)
    }
}

/// Lemma-level audit of the partition of `Q_T` by the member blocks.
pub fn check_partition(ambient: &PointSet, family: &MultiTruncation) -> Result<Report> {
    let mut r = Report::new();
    let part = q_t(ambient, family)?;
    let space = FiniteSpace::over(ambient, family, &[])?;
    for a in 0..part.blocks.len() {
        for b in a + 1..part.blocks.len() {
            r.check(part.blocks[a].is_disjoint(&part.blocks[b]), || {
                format!("blocks {} and {} intersect", family.labels()[a], family.labels()[b])
            });
        }
    }
    let union: PointSet = part.blocks.iter().flatten().copied().collect();
    r.check(union == space.point_set(), || "blocks do not cover Q_T".into());
    for blk in space.blocks() {
        r.check(space.is_open(blk.mask) && space.is_closed(blk.mask), || {
            format!("block {} = {} is not open-closed", blk.label, format_points(&space.set_of(blk.mask)))
        });
    }

    // refinement: a basic neighborhood [Q_T]_f of P contains [Q]_{h*} ∋ P with
    // h = f ∧ g, where g = e_i witnesses P = P_i in the block of *
    let grid = generator_grid(family.dim(), &[]);
    let all = space.point_set();
    for p in space.points() {
        let Some(k) = family.member_of(p.coord()) else {
            r.fail(format!("{p} has no member"));
            continue;
        };
        let t = &family.members()[k];
        let g = RatVec::basis(family.dim(), p.coord());
        for f in &grid {
            let nbhd = base_set(&all, f);
            if !nbhd.contains(p) {
                continue;
            }
            let h = f.meet(&g)?;
            let hs = t.apply(&h)?;
            let refined = base_set(&all, &hs);
            r.check(refined.contains(p) && refined.is_subset(&nbhd), || {
                format!("h = f ∧ g fails to refine [Q_T]_({f}) at {p}")
            });
        }
    }
    r.note(format!("partition {}", part.blocks.iter().map(format_points).collect::<Vec<_>>().join(" | ")));
    Ok(r)
}

/// Both sides of `Val(f*) ∩ [P]_{g*} = Val(g*) ∩ [P]_{f*}`; `None` when `f*`
/// or `g*` vanishes and the values are undefined.
pub fn value_sides(t: &dyn Truncation, f: &RatVec, g: &RatVec) -> Result<Option<(PointSet, PointSet)>> {
    let fs = t.apply(f)?;
    let gs = t.apply(g)?;
    if fs.is_zero() || gs.is_zero() {
        return Ok(None);
    }
    let primes = all_primes(t.dim());
    let lhs = values(&fs)?.intersection(&base_set(&primes, &gs)).copied().collect();
    let rhs = values(&gs)?.intersection(&base_set(&primes, &fs)).copied().collect();
    Ok(Some((lhs, rhs)))
}

pub fn lemma_value_check(t: &dyn Truncation, f: &RatVec, g: &RatVec) -> Result<Report> {
    match value_sides(t, f, g)? {
        None => Ok(Report::skipped("f* or g* is zero; values undefined")),
        Some((lhs, rhs)) => {
            let mut r = Report::new();
            r.check(lhs == rhs, || {
                format!("Val(f*) ∩ [P]_g* = {} but Val(g*) ∩ [P]_f* = {}", format_points(&lhs), format_points(&rhs))
            });
            Ok(r)
        }
    }
}

/// The spectrum `V = ⋃_* ⋃_f Val(f*)` in closed form `{P_i : i covered}`.
///
/// Confirms the closed form against the grid union, `V = V_T`, and
/// `[V]_{f*} = Val(f*)` on the grid.
pub fn spectrum_v(family: &MultiTruncation) -> Result<FiniteSpace> {
    let dim = family.dim();
    let closed: PointSet = family.covered().into_iter().map(|i| PrimeIdeal::new(dim, i)).collect();
    let weights: Vec<RatVec> = family.members().iter().map(WeightTruncation::weight_vector).collect();
    let grid = generator_grid(dim, &weights);
    let mut by_grid = PointSet::new();
    for t in family.members() {
        for g in &grid {
            let gs = t.apply(g)?;
            if !gs.is_zero() {
                let val = values(&gs)?;
                if base_set(&closed, &gs) != val {
                    return Err(Error::Fault(format!("[V]_f* != Val(f*) at f = ({g})")));
                }
                by_grid.extend(val);
            }
        }
    }
    if by_grid != closed {
        return Err(Error::Fault("spectrum closed form disagrees with the union of values".into()));
    }
    if q_t(&all_primes(dim), family)?.union != closed {
        return Err(Error::Fault("V != P_T".into()));
    }
    FiniteSpace::over(&closed, family, &[])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyReport {
    pub hausdorff: bool,
    pub locally_compact: bool,
    pub dense_in_p: bool,
    /// A pair that could not be separated, if any.
    pub unseparated: Option<(PrimeIdeal, PrimeIdeal)>,
}

/// Hausdorff by exhaustive pair separation with base sets; local compactness
/// by the neighborhood `Val(g*) = [X]_{g*}` of each point, which must be open,
/// contain the point, and be closed (compact in a Hausdorff space); density
/// in `P` via the kernel `⋂_{P in X} P = {0}`.
pub fn topology_report(space: &FiniteSpace, family: &MultiTruncation) -> Result<TopologyReport> {
    let n = space.len();
    let mut unseparated = None;
    'outer: for a in 0..n {
        for b in a + 1..n {
            let separated = space.base.iter().any(|u| {
                u.mask >> a & 1 == 1
                    && u.mask >> b & 1 == 0
                    && space.base.iter().any(|v| v.mask >> b & 1 == 1 && v.mask & u.mask == 0)
            });
            if !separated {
                unseparated = Some((space.points[a], space.points[b]));
                break 'outer;
            }
        }
    }

    let mut locally_compact = true;
    for (i, p) in space.points().iter().enumerate() {
        let nbhd = space.base.iter().find(|b| b.mask >> i & 1 == 1);
        let ok = match nbhd {
            None => false,
            Some(b) => {
                let t = &family.members()[b.member];
                let gs = t.apply(&b.generator)?;
                let val = values(&gs)?;
                space.mask_of(&val) == b.mask && val.contains(p) && space.is_open(b.mask) && space.is_closed(b.mask)
            }
        };
        locally_compact &= ok;
    }

    let dense_in_p = dense_in_p(space.dim(), &space.point_set())?;
    Ok(TopologyReport { hausdorff: unseparated.is_none(), locally_compact, dense_in_p, unseparated })
}

/// `Q` is dense in `P` iff the kernel `⋂_{P in Q} P` is `{0}`. The kernel is
/// `I_Z` with `Z` the union of the zero-sets, and it is trivial iff it
/// contains no basis vector.
pub fn dense_in_p(dim: usize, points: &PointSet) -> Result<bool> {
    let kernel = IdealSubset::new(dim, points.iter().map(PrimeIdeal::coord))?;
    Ok((0..dim).all(|i| !kernel.contains(&RatVec::basis(dim, i))))
}
