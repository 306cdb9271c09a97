//! Multi-truncations: families of weight truncations with pairwise disjoint
//! ranges, maximality, and the constructive completion.

use crate::error::{Error, Result};
use crate::exact::{Rat, RatVec};
use crate::sample::Sampler;
use crate::truncation::{Truncation, WeightTruncation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTruncation {
    dim: usize,
    labels: Vec<String>,
    members: Vec<WeightTruncation>,
}

/// Two members whose ranges meet: `f* ∧ f^⋊ != 0` at `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub first: usize,
    pub second: usize,
    pub witness: RatVec,
}

pub fn is_multi_truncation(members: &[WeightTruncation]) -> Result<Option<Overlap>> {
    let Some(first) = members.first() else {
        return Err(Error::InvalidFamily("a family needs at least one truncation".into()));
    };
    let dim = first.dim();
    if let Some(m) = members.iter().find(|m| m.dim() != dim) {
        return Err(Error::DimMismatch { left: dim, right: m.dim() });
    }
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            let shared = members[a].support().iter().find(|i| members[b].in_support(**i));
            if let Some(&i) = shared {
                let e = RatVec::basis(dim, i);
                let meet = members[a].eval(&e).meet(&members[b].eval(&e))?;
                if meet.is_zero() {
                    return Err(Error::Fault("shared support coordinate with zero meet".into()));
                }
                return Ok(Some(Overlap { first: a, second: b, witness: e }));
            }
        }
    }
    Ok(None)
}

/// Checks that `f* ∧ f^⋊ = 0` for all `f` agrees with `f* ∧ g^⋊ = 0` for all
/// `f, g` on a seeded sample. Returns the number of pairs tried.
pub fn cross_check_formulations(members: &[WeightTruncation], seed: u64, count: usize) -> Result<usize> {
    let disjoint = is_multi_truncation(members)?.is_none();
    if disjoint && members.len() > 1 {
        let dim = members[0].dim();
        let mut sampler = Sampler::new(seed);
        for (f, g) in sampler.nonneg_pairs(dim, count) {
            for a in 0..members.len() {
                for b in 0..members.len() {
                    if a == b {
                        continue;
                    }
                    let one = members[a].eval(&f).meet(&members[b].eval(&f))?;
                    let two = members[a].eval(&f).meet(&members[b].eval(&g))?;
                    if !one.is_zero() || !two.is_zero() {
                        return Err(Error::Fault(format!("disjoint supports but nonzero meet at {f:?}, {g:?}")));
                    }
                }
            }
        }
    }
    Ok(count)
}

impl MultiTruncation {
    /// Members are kept in the given order.
    pub fn new(members: Vec<(String, WeightTruncation)>) -> Result<MultiTruncation> {
        let (labels, members): (Vec<_>, Vec<_>) = members.into_iter().unzip();
        if let Some(o) = is_multi_truncation(&members)? {
            return Err(Error::InvalidFamily(format!(
                "{} and {} overlap: witness f = ({}) has f* ∧ f^⋊ != 0",
                labels[o.first], labels[o.second], o.witness
            )));
        }
        let dim = members[0].dim();
        Ok(MultiTruncation { dim, labels, members })
    }

    pub fn single(label: impl Into<String>, t: WeightTruncation) -> MultiTruncation {
        MultiTruncation::new(vec![(label.into(), t)]).expect("one member is always disjoint")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[WeightTruncation] {
        &self.members
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &WeightTruncation)> {
        self.labels.iter().map(String::as_str).zip(&self.members)
    }

    /// Index of the member whose support contains coordinate `i`.
    pub fn member_of(&self, i: usize) -> Option<usize> {
        self.members.iter().position(|m| m.in_support(i))
    }

    pub fn position(&self, t: &WeightTruncation) -> Option<usize> {
        self.members.iter().position(|m| m == t)
    }

    pub fn covered(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.member_of(i).is_some()).collect()
    }

    pub fn uncovered(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.member_of(i).is_none()).collect()
    }
}

/// `Ok(None)` when maximal, otherwise a positive vector annihilated by every
/// member. On `Q^n` maximality is exactly "the supports cover `{1..n}`".
pub fn is_maximal(family: &MultiTruncation) -> Option<RatVec> {
    family.uncovered().first().map(|&i| RatVec::basis(family.dim(), i))
}

/// The criterion "every `f > 0` has some member with `f* > 0`", evaluated on
/// the given positive vectors. Returns the first vector annihilated by all.
pub fn annihilated_by_all(family: &MultiTruncation, probes: &[RatVec]) -> Option<RatVec> {
    probes
        .iter()
        .filter(|f| f.is_nonneg() && !f.is_zero())
        .find(|f| family.members().iter().all(|m| m.eval(f).is_zero()))
        .cloned()
}

/// Adds a weight-1 singleton truncation for every uncovered coordinate.
/// Labels of added members are `<prefix>.c<i>` with 1-based `i`.
pub fn complete_to_maximal(family: &MultiTruncation, prefix: &str) -> MultiTruncation {
    let mut labels = family.labels.clone();
    let mut members = family.members.clone();
    for i in family.uncovered() {
        labels.push(format!("{prefix}.c{}", i + 1));
        members.push(WeightTruncation::new(family.dim, vec![i], vec![Rat::one()]).expect("valid singleton"));
    }
    MultiTruncation { dim: family.dim, labels, members }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wt(dim: usize, s: &[usize], w: &[i64]) -> WeightTruncation {
        WeightTruncation::new(dim, s.to_vec(), w.iter().map(|&x| Rat::int(x)).collect()).unwrap()
    }

    #[test]
    fn multi_examples() {
        let a = wt(3, &[0, 1], &[2, 1]);
        let b = wt(3, &[2], &[1]);
        assert_eq!(is_multi_truncation(&[a.clone(), b]).unwrap(), None);

        let c = wt(3, &[1, 2], &[1, 1]);
        let o = is_multi_truncation(&[a.clone(), c]).unwrap().unwrap();
        assert_eq!(o.witness, RatVec::basis(3, 1));

        assert_eq!(is_multi_truncation(&[a]).unwrap(), None);
        assert!(matches!(is_multi_truncation(&[]), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn maximal_examples() {
        let fam =
            MultiTruncation::new(vec![("t".into(), wt(3, &[0, 1], &[2, 1])), ("u".into(), wt(3, &[2], &[1]))]).unwrap();
        assert_eq!(is_maximal(&fam), None);

        let single = MultiTruncation::single("t", wt(3, &[0, 1], &[2, 1]));
        assert_eq!(is_maximal(&single), Some(RatVec::basis(3, 2)));

        assert_eq!(is_maximal(&MultiTruncation::single("t", wt(1, &[0], &[1]))), None);
    }

    #[test]
    fn completion_examples() {
        let single = MultiTruncation::single("t", wt(3, &[0, 1], &[2, 1]));
        let done = complete_to_maximal(&single, "T");
        assert_eq!(done.members()[1], wt(3, &[2], &[1]));
        assert_eq!(done.labels()[1], "T.c3");
        assert_eq!(complete_to_maximal(&done, "T"), done);

        let sparse = MultiTruncation::single("t", wt(4, &[1], &[5]));
        let done = complete_to_maximal(&sparse, "T");
        assert_eq!(done.len(), 4);
        assert_eq!(done.members()[1..], [wt(4, &[0], &[1]), wt(4, &[2], &[1]), wt(4, &[3], &[1])]);
        assert_eq!(is_maximal(&done), None);
    }

    #[test]
    fn formulations_agree_on_samples() {
        let members = [wt(3, &[0, 1], &[2, 1]), wt(3, &[2], &[1])];
        assert_eq!(cross_check_formulations(&members, 1, 50).unwrap(), 50);
    }
}
