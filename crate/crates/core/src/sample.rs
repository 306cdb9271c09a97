//! Deterministic sample generation for sampled checks and fuzzing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::{Rat, RatVec};

/// Largest numerator magnitude produced.
pub const MAX_NUM: i64 = 12;
/// Largest denominator produced.
pub const MAX_DEN: i64 = 6;

/// Recorded in reports so a sampled verdict can be replayed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub seed: u64,
    pub count: usize,
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `p/q` with `|p| <= 12`, `1 <= q <= 6`.
    pub fn rat(&mut self) -> Rat {
        let p = self.rng.gen_range(-MAX_NUM..=MAX_NUM);
        let q = self.rng.gen_range(1..=MAX_DEN);
        Rat::new(p, q)
    }

    pub fn nonneg_rat(&mut self) -> Rat {
        let p = self.rng.gen_range(0..=MAX_NUM);
        let q = self.rng.gen_range(1..=MAX_DEN);
        Rat::new(p, q)
    }

    pub fn positive_rat(&mut self) -> Rat {
        let p = self.rng.gen_range(1..=MAX_NUM);
        let q = self.rng.gen_range(1..=MAX_DEN);
        Rat::new(p, q)
    }

    pub fn vec(&mut self, dim: usize) -> RatVec {
        RatVec::new((0..dim).map(|_| self.rat()).collect())
    }

    /// Nonnegative vector; roughly a third of the coordinates are zero so
    /// that supports vary.
    pub fn nonneg_vec(&mut self, dim: usize) -> RatVec {
        RatVec::new((0..dim).map(|_| if self.rng.gen_bool(0.3) { Rat::zero() } else { self.nonneg_rat() }).collect())
    }

    pub fn nonneg_vecs(&mut self, dim: usize, count: usize) -> Vec<RatVec> {
        (0..count).map(|_| self.nonneg_vec(dim)).collect()
    }

    pub fn nonneg_pairs(&mut self, dim: usize, count: usize) -> Vec<(RatVec, RatVec)> {
        (0..count).map(|_| (self.nonneg_vec(dim), self.nonneg_vec(dim))).collect()
    }

    pub fn gen_range(&mut self, range: std::ops::RangeInclusive<usize>) -> usize {
        self.rng.gen_range(range)
    }

    pub fn gen_bool(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }
}

/// Basis vectors, the all-ones vector, the given extra vectors, and all
/// pairwise sums of those.
pub fn generator_grid(dim: usize, extra: &[RatVec]) -> Vec<RatVec> {
    let mut base: Vec<RatVec> = (0..dim).map(|i| RatVec::basis(dim, i)).collect();
    base.push(RatVec::constant(dim, Rat::one()));
    base.extend(extra.iter().cloned());
    let mut grid = base.clone();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            grid.push(base[i].add(&base[j]).expect("same dim"));
        }
    }
    grid.sort();
    grid.dedup();
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_deterministic_and_bounded() {
        let a: Vec<_> = {
            let mut s = Sampler::new(7);
            (0..200).map(|_| s.rat()).collect()
        };
        let b: Vec<_> = {
            let mut s = Sampler::new(7);
            (0..200).map(|_| s.rat()).collect()
        };
        assert_eq!(a, b);
        for q in &a {
            assert!(q.denom() <= &6.into());
            assert!(q.numer().magnitude() <= &12u32.into());
        }
    }

    #[test]
    fn grid_contains_basis_and_sums() {
        let g = generator_grid(2, &[]);
        assert!(g.contains(&RatVec::basis(2, 0)));
        assert!(g.contains(&RatVec::from_ints(&[1, 1])));
        assert!(g.contains(&RatVec::from_ints(&[2, 1])));
    }
}
